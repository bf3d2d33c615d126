#ifndef EGNH_OPTIM_HPP
#define EGNH_OPTIM_HPP

#include <functional>
#include <vector>

namespace egnh {

// Why the optimizer returned.
enum class StopReason {
    Stationary,   // gradient inf-norm under tolerance
    Stalled,      // step or value improvement below resolution (flat ridge)
    IterationCap,
    LineSearchFailed
};

struct OptimReport {
    std::vector<double> x;
    double value = 0.0;        // minimized objective
    std::vector<double> gradient;
    StopReason stop = StopReason::IterationCap;
    std::size_t iterations = 0;
};

struct OptimOptions {
    double grad_tol = 1e-6;
    double step_tol = 1e-12;   // absolute step-size stall threshold
    double value_tol = 1e-10;  // absolute improvement stall threshold
    std::size_t max_iterations = 600;
};

// Quasi-Newton (BFGS) minimizer with Armijo backtracking. The objective
// may return +infinity or NaN outside its useful region; the line search
// treats both as "worse". Gradient is supplied by the caller.
OptimReport bfgs_minimize(const std::function<double(const std::vector<double>&)>& f,
                          const std::function<std::vector<double>(const std::vector<double>&)>& grad,
                          std::vector<double> x0, const OptimOptions& opt = {});

} // namespace egnh

#endif
