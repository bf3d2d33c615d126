#ifndef EGNH_GOF_HPP
#define EGNH_GOF_HPP

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "egnh/inference.hpp"

namespace egnh {

struct UndefinedStatistic : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// W* and A* are reported in two conventions:
//   - plain: statistics computed on u_(i) = F_hat(x_(i)) directly, then the
//     usual small-sample factors W* = W^2 (1 + 0.5/n),
//     A* = A^2 (1 + 0.75/n + 2.25/n^2);
//   - transformed: the Chen-Balakrishnan variant that first maps the u_(i)
//     through the normal quantile, standardizes, and maps back before
//     computing the same statistics. This is what the R toolchain behind
//     the reference tables computes, and what their printed values match.
struct GofReport {
    double w_star = 0.0;
    double a_star = 0.0;
    double w_star_transformed = 0.0;
    double a_star_transformed = 0.0;
    double ks = 0.0;
    double aic = 0.0;
    double caic = 0.0;
    double bic = 0.0;
    double hqic = 0.0;
    std::size_t k = 0;
    std::size_t n = 0;
    double loglik = 0.0;
};

GofReport gof(const FitResult& fit, const Sample& s,
              const std::function<double(double)>& model_cdf);

// Convenience overload using the evaluator carried by the fit.
GofReport gof(const FitResult& fit, const Sample& s);

// One-sample Kolmogorov-Smirnov sup-distance of sorted data against a cdf.
double ks_statistic(const std::vector<double>& sorted_values,
                    const std::function<double(double)>& model_cdf);

// Two-sample KS distance (both inputs sorted ascending).
double two_sample_ks(const std::vector<double>& sorted_a,
                     const std::vector<double>& sorted_b);

// Scaled total-time-on-test transform: pairs (r/n, G(r/n)), r = 1..n.
std::vector<std::array<double, 2>> ttt_plot_data(const Sample& s);

struct DescriptiveStats {
    double mean = 0.0;
    double median = 0.0;
    double variance = 0.0; // n-1 denominator
    // Moment-ratio conventions, both reported since sources differ:
    // skewness  g1 = m3/m2^1.5 and the bias-adjusted G1;
    // kurtosis  raw m4/m2^2 and excess (raw - 3).
    std::optional<double> skewness_g1;
    std::optional<double> skewness_adjusted;
    std::optional<double> kurtosis_raw;
    std::optional<double> kurtosis_excess;
    double min = 0.0;
    double max = 0.0;
};

DescriptiveStats descriptive_stats(const Sample& s);

} // namespace egnh

#endif
