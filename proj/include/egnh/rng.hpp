#ifndef EGNH_RNG_HPP
#define EGNH_RNG_HPP

#include <cstdint>
#include <vector>

#include "egnh/params.hpp"

namespace egnh {

// xoshiro256** seeded through splitmix64. Fixed by this library so that
// sampled streams are reproducible per library version for a given
// (seed, n, theta); reproducibility is not promised across implementations.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed);

    std::uint64_t next();

    // uniform on the open interval (0,1): 53-bit mantissa, zero remapped
    // to the smallest representable step so quantile(u) stays finite
    double uniform01();

private:
    std::uint64_t s_[4];
};

// Mixes several 64-bit words into one seed (used to derive per-replication
// streams in the simulation study).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c);

// n iid draws by inverse transform. n >= 1.
std::vector<double> sample(const EgnhParams& theta, std::size_t n, std::uint64_t seed);

} // namespace egnh

#endif
