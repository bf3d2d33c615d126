#ifndef EGNH_PARAMS_HPP
#define EGNH_PARAMS_HPP

#include <cmath>
#include <stdexcept>

namespace egnh {

// Parameter vector (alpha, beta, a, b). alpha and beta are the two
// exponentiated-generalized shape parameters, a is the rate-like baseline
// scale (units 1/time) and b the baseline power shape. All strictly
// positive. b == 1 exactly is allowed for evaluation and sampling (the
// submodels need it) but makes the four-parameter model non-identifiable,
// which fitting reports via the flag below.
struct EgnhParams {
    double alpha;
    double beta;
    double a;
    double b;

    EgnhParams(double alpha_, double beta_, double a_, double b_)
        : alpha(alpha_), beta(beta_), a(a_), b(b_) {
        if (!(alpha > 0.0) || !std::isfinite(alpha) ||
            !(beta > 0.0) || !std::isfinite(beta) ||
            !(a > 0.0) || !std::isfinite(a) ||
            !(b > 0.0) || !std::isfinite(b))
            throw std::domain_error("EgnhParams: all parameters must be positive and finite");
    }

    bool identifiable() const { return b != 1.0; }
};

enum class DensityLogShape { LogConvex, LogConcave, Indeterminate };
enum class HazardShape { Constant, Increasing, Decreasing, Indeterminate };

// Shape classification from the sufficient conditions on (beta, b);
// anything outside them is reported Indeterminate, never guessed.
struct ShapeClass {
    DensityLogShape density_log_shape;
    HazardShape hazard_shape;
};

inline ShapeClass classify_shape(const EgnhParams& t) {
    ShapeClass s{DensityLogShape::Indeterminate, HazardShape::Indeterminate};
    if (t.beta < 1.0 && t.b < 1.0) s.density_log_shape = DensityLogShape::LogConvex;
    else if (t.beta > 1.0 && t.b > 1.0) s.density_log_shape = DensityLogShape::LogConcave;
    if (t.beta == 1.0 && t.b == 1.0) s.hazard_shape = HazardShape::Constant;
    else if (t.beta > 1.0 && t.b > 1.0) s.hazard_shape = HazardShape::Increasing;
    else if (t.beta < 1.0 && t.b < 1.0) s.hazard_shape = HazardShape::Decreasing;
    return s;
}

} // namespace egnh

#endif
