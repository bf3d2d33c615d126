#ifndef EGNH_DATASETS_HPP
#define EGNH_DATASETS_HPP

#include <array>
#include <optional>
#include <string_view>

#include "egnh/inference.hpp"

namespace egnh::datasets {

// Lifetimes of 50 components (Aarset).
inline constexpr std::array<double, 50> aarset_values = {
    0.1, 7,  36, 67, 84, 0.2, 11, 40, 67, 84, 1, 12, 45, 67, 84, 1, 18,
    46,  67, 85, 1,  18, 47,  72, 85, 1,  18, 50, 75, 85, 1, 18, 55, 79,
    85,  2,  18, 60, 82, 85,  3,  21, 63, 82, 86, 6,  32, 63, 83, 86};

// Stress-rupture life of Kevlar 49/epoxy strands at 70% stress level
// (Andrews & Herzberg), 49 observations.
inline constexpr std::array<double, 49> kevlar_values = {
    1051,  1337,  1389,  1921,  1942,  2322,  3629,  4006,  4012,  4063,
    4921,  5445,  5620,  5817,  5905,  5956,  6068,  6121,  6473,  7501,
    7886,  8108,  8546,  8666,  8831,  9106,  9711,  9806,  10205, 10396,
    10861, 11026, 11214, 11362, 11604, 11608, 11745, 11762, 11895, 12044,
    13520, 13670, 14110, 14496, 15395, 16179, 17092, 17568, 17568};

namespace detail {
template <std::size_t N>
constexpr double arr_min(const std::array<double, N>& a) {
    double m = a[0];
    for (double v : a) m = v < m ? v : m;
    return m;
}
template <std::size_t N>
constexpr double arr_max(const std::array<double, N>& a) {
    double m = a[0];
    for (double v : a) m = v > m ? v : m;
    return m;
}
} // namespace detail

// fixture integrity pinned against the published descriptive table
static_assert(aarset_values.size() == 50);
static_assert(detail::arr_min(aarset_values) == 0.1);
static_assert(detail::arr_max(aarset_values) == 86.0);
static_assert(kevlar_values.size() == 49);
static_assert(detail::arr_min(kevlar_values) == 1051.0);
static_assert(detail::arr_max(kevlar_values) == 17568.0);

Sample aarset();
Sample kevlar();

// Fixture lookup by name ("aarset" or "kevlar").
std::optional<Sample> by_name(std::string_view name);

} // namespace egnh::datasets

#endif
