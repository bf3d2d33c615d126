#ifndef EGNH_DIST_HPP
#define EGNH_DIST_HPP

#include "egnh/params.hpp"
#include "egnh/special.hpp"

namespace egnh {

// Shared evaluation kernel at a point x > 0. With z = (1+ax)^b:
//   log_ax1 = log(1+ax)          via log1p, exact for tiny ax
//   zm1     = z - 1              via expm1, no cancellation for z near 1
//   y       = alpha (1 - z)      <= 0
//   log1me  = log(1 - e^y)       stable on both branches
// Every density/cdf/hazard expression is assembled from these four.
struct Kernel {
    double log_ax1;
    double zm1;
    double y;
    double log1me;
};

inline Kernel kernel_at(const EgnhParams& t, double x) {
    Kernel k;
    k.log_ax1 = std::log1p(t.a * x);
    k.zm1 = std::expm1(t.b * k.log_ax1);
    k.y = -t.alpha * k.zm1;
    k.log1me = log1mexp(k.y);
    return k;
}

double pdf(const EgnhParams& t, double x);
double log_pdf(const EgnhParams& t, double x);
double cdf(const EgnhParams& t, double x);
double sf(const EgnhParams& t, double x);
double hrf(const EgnhParams& t, double x);
double reverse_hrf(const EgnhParams& t, double x);
double quantile(const EgnhParams& t, double p);

// Quantile-based asymmetry and tail weight; defined for every valid
// parameter vector (no moment conditions).
double bowley_skewness(const EgnhParams& t);
double moors_kurtosis(const EgnhParams& t);

} // namespace egnh

#endif
