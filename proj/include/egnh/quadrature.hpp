#ifndef EGNH_QUADRATURE_HPP
#define EGNH_QUADRATURE_HPP

#include <functional>
#include <stdexcept>

#include "egnh/params.hpp"

namespace egnh {

struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadPolicy {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    std::size_t max_intervals = 4000;
};

struct QuadResult {
    double value;
    double abs_error; // estimate accumulated over the final subdivision
};

// Globally adaptive Gauss-Kronrod 7-15 on a finite interval.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double lo, double hi, const QuadPolicy& pol = {});

// Integral of exp(log_weight(x)) * pdf(theta, x) over (0, upper].
// upper = +infinity integrates the full support; the domain is split at
// the quantiles {1e-8, 1e-4, 0.5, 1-1e-4, 1-1e-8} (clipped to upper) to
// tame the beta < 1 edge singularity and the heavy upper tail, and the
// unbounded tail is folded to [0,1) by x -> x0 + u/(1-u).
// log_weight may return -infinity (weight zero) but must not return NaN.
QuadResult integrate_expectation(const EgnhParams& theta,
                                 const std::function<double(double)>& log_weight,
                                 double upper, const QuadPolicy& pol = {});

// E[X^r] by quadrature; r = 0 recovers the normalization integral.
QuadResult quadrature_moment(const EgnhParams& theta, unsigned r, const QuadPolicy& pol = {});

// E[X * 1{X <= z}]
QuadResult quadrature_incomplete_first_moment(const EgnhParams& theta, double z,
                                              const QuadPolicy& pol = {});

// Largest t for which E[e^(tX)] is finite: +inf when b > 1, alpha*a when
// b == 1, 0 when b < 1 (stretched-exponential tail).
double mgf_sup_argument(const EgnhParams& theta);

// E[e^(tX)] by quadrature with the existence guard above.
QuadResult quadrature_mgf(const EgnhParams& theta, double t, const QuadPolicy& pol = {});

// integral of f^lambda over the support (Renyi entropy oracle); rejects
// lambda for which the integral diverges at the origin.
QuadResult quadrature_pdf_power_integral(const EgnhParams& theta, double lambda,
                                         const QuadPolicy& pol = {});

} // namespace egnh

#endif
