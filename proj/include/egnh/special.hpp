#ifndef EGNH_SPECIAL_HPP
#define EGNH_SPECIAL_HPP

#include <cmath>
#include <utility>

// Special functions used by the series expansions: incomplete gamma
// functions (upper and lower, plain and log-scaled) and generalized
// binomial coefficients over real upper argument.

namespace egnh {

// log(1 - e^y) for y <= 0, computed without cancellation on either side
// of the crossover at -log 2.
inline double log1mexp(double y) {
    return y > -0.6931471805599453 ? std::log(-std::expm1(y))
                                   : std::log1p(-std::exp(y));
}

// log(1 + e^y) without overflow.
inline double log1pexp(double y) {
    if (y > 35.0) return y + std::exp(-y);
    if (y < -35.0) return std::exp(y);
    return std::log1p(std::exp(y));
}

// Regularized incomplete gamma pair P(s,x) = gamma(s,x)/Gamma(s),
// Q(s,x) = Gamma(s,x)/Gamma(s); requires s > 0, x >= 0.
// Series for x < s + 1, Legendre continued fraction otherwise.
double gamma_p(double s, double x);
double gamma_q(double s, double x);

// Non-regularized versions. upper_gamma accepts any real s (including
// s <= 0) for x > 0; the s <= 0 branch is used by the Renyi entropy
// series when b < 1.
double upper_gamma(double s, double x);
double lower_gamma(double s, double x);

// log(Gamma(s,x)) computed without underflow for large x (the plain value
// underflows near x ~ 745). s may be <= 0 when x >= 1.
double log_upper_gamma(double s, double x);

// Generalized binomial coefficient binom(r, k) for real r, integer k >= 0,
// as (log|.|, sign). sign == 0 encodes an exact zero (integer r < k).
std::pair<double, int> log_abs_binom(double r, unsigned k);

// Convenience: the coefficient itself (may over/underflow only in
// pathological cases; callers in the series code prefer the log form).
double binom_real(double r, unsigned k);

// log Beta(a,b) for a,b > 0.
inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Standard normal cdf and its inverse (Wichura-quality rational
// approximation refined by one Halley step). Used by the transformed
// goodness-of-fit statistics.
double norm_cdf(double x);
double norm_quantile(double p);

} // namespace egnh

#endif
