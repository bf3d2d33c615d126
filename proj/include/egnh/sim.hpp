#ifndef EGNH_SIM_HPP
#define EGNH_SIM_HPP

#include <cstdint>
#include <vector>

#include "egnh/inference.hpp"
#include "egnh/params.hpp"

namespace egnh {

// Monte Carlo design: draw `replications` samples of each size from theta0,
// fit each, accumulate bias and dispersion of the estimates. Replication r
// at size n uses the stream seeded by mix(seed, n, r), so any subset of the
// grid reproduces the full run's draws.
struct SimDesign {
    EgnhParams theta0;
    std::vector<std::size_t> sizes;      // strictly increasing
    std::size_t replications = 1000;     // >= 2
    std::uint64_t seed = 0;
    FitMethod method = FitMethod::ProfileLik;
    std::size_t threads = 0;             // 0 = hardware concurrency
};

SimDesign default_sim_design();          // the study's published setup:
                                         // theta0 from the first application,
                                         // sizes 10,15,...,250

struct SimCell {
    std::size_t size = 0;
    double bias[4] = {0, 0, 0, 0};       // mean of (theta_hat - theta0)
    double std_error[4] = {0, 0, 0, 0};  // sd of theta_hat across included reps
    std::size_t included = 0;            // replications with a usable estimate
    std::size_t failed = 0;              // fit raised / produced no estimate
    std::size_t non_stationary = 0;      // included but flagged not converged
};

struct SimResult {
    std::vector<SimCell> cells;          // one per size, in design order
};

SimResult run_sim(const SimDesign& design);

} // namespace egnh

#endif
