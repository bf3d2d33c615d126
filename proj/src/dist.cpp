#include "egnh/dist.hpp"

#include <limits>
#include <stdexcept>

namespace egnh {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_not_nan(double x, const char* msg) {
    if (std::isnan(x)) throw std::domain_error(msg);
}
} // namespace

double log_pdf(const EgnhParams& t, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("log_pdf: require finite x > 0");
    Kernel k = kernel_at(t, x);
    return std::log(t.a * t.alpha * t.b * t.beta) + (t.b - 1.0) * k.log_ax1 +
           k.y + (t.beta - 1.0) * k.log1me;
}

double pdf(const EgnhParams& t, double x) {
    require_not_nan(x, "pdf: x is NaN");
    if (x < 0.0 || x == kInf)
        throw std::domain_error("pdf: require x >= 0");
    if (x == 0.0) {
        // limit of the density at the origin, by beta regime
        if (t.beta < 1.0) return kInf;
        if (t.beta == 1.0) return t.a * t.b * t.alpha;
        return 0.0;
    }
    return std::exp(log_pdf(t, x));
}

double cdf(const EgnhParams& t, double x) {
    require_not_nan(x, "cdf: x is NaN");
    if (x <= 0.0) return 0.0;
    if (x == kInf) return 1.0;
    Kernel k = kernel_at(t, x);
    return std::exp(t.beta * k.log1me);
}

double sf(const EgnhParams& t, double x) {
    require_not_nan(x, "sf: x is NaN");
    if (x <= 0.0) return 1.0;
    if (x == kInf) return 0.0;
    Kernel k = kernel_at(t, x);
    return -std::expm1(t.beta * k.log1me);
}

// log sf = log(1 - e^(beta log(1-e^y))) = log1mexp(beta log1me); in the far
// tail where e^y underflows and log1me rounds to -0, the exact asymptote
// log(beta) + y takes over.
static double log_sf_from(const EgnhParams& t, const Kernel& k) {
    if (k.y < -690.0) return std::log(t.beta) + k.y;
    return log1mexp(t.beta * k.log1me);
}

double hrf(const EgnhParams& t, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("hrf: require finite x > 0");
    Kernel k = kernel_at(t, x);
    double lpdf = std::log(t.a * t.alpha * t.b * t.beta) + (t.b - 1.0) * k.log_ax1 +
                  k.y + (t.beta - 1.0) * k.log1me;
    double out = std::exp(lpdf - log_sf_from(t, k));
    return std::isfinite(out) ? out : kInf;
}

double reverse_hrf(const EgnhParams& t, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("reverse_hrf: require finite x > 0");
    Kernel k = kernel_at(t, x);
    double lpdf = std::log(t.a * t.alpha * t.b * t.beta) + (t.b - 1.0) * k.log_ax1 +
                  k.y + (t.beta - 1.0) * k.log1me;
    double lcdf = t.beta * k.log1me;
    double out = std::exp(lpdf - lcdf);
    return std::isfinite(out) ? out : kInf;
}

double quantile(const EgnhParams& t, double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("quantile: require p in (0,1)");
    // Q(p) = ((1 - log(1 - p^(1/beta)) / alpha)^(1/b) - 1) / a with
    // log(1 - p^(1/beta)) = log1mexp(log(p)/beta), safe when p^(1/beta)
    // rounds to 1 (small beta); log1p keeps the inner logarithm exact when
    // -w/alpha is below machine epsilon (small p).
    double w = log1mexp(std::log(p) / t.beta);
    double log_inner = std::log1p(-w / t.alpha); // log(1 - w/alpha) >= 0
    return std::expm1(log_inner / t.b) / t.a;
}

double bowley_skewness(const EgnhParams& t) {
    double q1 = quantile(t, 0.25), q2 = quantile(t, 0.5), q3 = quantile(t, 0.75);
    return (q3 - 2.0 * q2 + q1) / (q3 - q1);
}

double moors_kurtosis(const EgnhParams& t) {
    double q18 = quantile(t, 0.125), q38 = quantile(t, 0.375);
    double q58 = quantile(t, 0.625), q78 = quantile(t, 0.875);
    return (q78 - q58 + q38 - q18) / (quantile(t, 0.75) - quantile(t, 0.25));
}

} // namespace egnh
