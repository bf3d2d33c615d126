#include "egnh/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "egnh/dist.hpp"

namespace egnh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Gauss-Kronrod 7-15 abscissae/weights (QUADPACK dqk15).
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double fc = f(c);
    double resg = fc * wg[3], resk = fc * wgk[7];
    for (int j = 0; j < 7; ++j) {
        double dx = h * xgk[j];
        double fsum = f(c - dx) + f(c + dx);
        resk += wgk[j] * fsum;
        if (j % 2 == 1) resg += wg[j / 2] * fsum;
    }
    double value = resk * h;
    double err = std::abs((resk - resg) * h);
    return {lo, hi, value, err};
}

QuadResult adapt(const std::function<double(double)>& f,
                 const std::vector<std::pair<double, double>>& segments,
                 const QuadPolicy& pol) {
    std::priority_queue<Panel> heap;
    double total = 0.0, err = 0.0;
    std::size_t count = 0;
    for (auto [lo, hi] : segments) {
        if (!(hi > lo)) continue;
        Panel p = gk15(f, lo, hi);
        total += p.value;
        err += p.error;
        heap.push(p);
        ++count;
    }
    auto tolerance = [&] { return std::max(pol.abs_tol, pol.rel_tol * std::abs(total)); };
    while (err > tolerance() && count < pol.max_intervals && !heap.empty()) {
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) { // interval at rounding floor
            heap.push({worst.lo, worst.hi, worst.value, 0.0});
            continue;
        }
        Panel left = gk15(f, worst.lo, mid);
        Panel right = gk15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    if (!(err <= tolerance()))
        throw QuadratureFailure("adaptive quadrature: error estimate above tolerance");
    return {total, err};
}

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double lo, double hi, const QuadPolicy& pol) {
    return adapt(f, {{lo, hi}}, pol);
}

QuadResult integrate_expectation(const EgnhParams& theta,
                                 const std::function<double(double)>& log_weight,
                                 double upper, const QuadPolicy& pol) {
    auto integrand = [&](double x) {
        double lw = log_weight(x);
        if (lw == -kInf) return 0.0;
        double v = std::exp(lw + log_pdf(theta, x));
        return std::isfinite(v) ? v : 0.0;
    };

    const double probs[] = {1e-8, 1e-4, 0.5, 1.0 - 1e-4, 1.0 - 1e-8};
    std::vector<double> cuts{0.0};
    for (double p : probs) {
        double q = quantile(theta, p);
        if (q < upper && q > cuts.back()) cuts.push_back(q);
    }

    std::vector<std::pair<double, double>> segments;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        segments.emplace_back(cuts[i], cuts[i + 1]);

    if (std::isfinite(upper)) {
        segments.emplace_back(cuts.back(), upper);
        return adapt(integrand, segments, pol);
    }

    // finite part plus the folded tail x = x0 + u/(1-u)
    double x0 = cuts.back();
    QuadResult head{0.0, 0.0};
    if (!segments.empty()) head = adapt(integrand, segments, pol);
    auto tail = [&](double u) {
        double om = 1.0 - u;
        double x = x0 + u / om;
        return integrand(x) / (om * om);
    };
    QuadResult folded = adapt(tail, {{0.0, 1.0}}, pol);
    return {head.value + folded.value, head.abs_error + folded.abs_error};
}

QuadResult quadrature_moment(const EgnhParams& theta, unsigned r, const QuadPolicy& pol) {
    if (r == 0)
        return integrate_expectation(theta, [](double) { return 0.0; }, kInf, pol);
    double rr = r;
    return integrate_expectation(theta, [rr](double x) { return rr * std::log(x); }, kInf, pol);
}

QuadResult quadrature_incomplete_first_moment(const EgnhParams& theta, double z,
                                              const QuadPolicy& pol) {
    if (!(z > 0.0)) throw std::domain_error("incomplete first moment: require z > 0");
    return integrate_expectation(theta, [](double x) { return std::log(x); }, z, pol);
}

double mgf_sup_argument(const EgnhParams& theta) {
    if (theta.b > 1.0) return kInf;
    if (theta.b == 1.0) return theta.alpha * theta.a;
    return 0.0;
}

QuadResult quadrature_mgf(const EgnhParams& theta, double t, const QuadPolicy& pol) {
    double sup = mgf_sup_argument(theta);
    if (t >= sup && t != 0.0)
        throw QuadratureFailure("mgf: E[e^(tX)] diverges for this t");
    return integrate_expectation(theta, [t](double x) { return t * x; }, kInf, pol);
}

QuadResult quadrature_pdf_power_integral(const EgnhParams& theta, double lambda,
                                         const QuadPolicy& pol) {
    if (!(lambda > 0.0))
        throw std::domain_error("pdf power integral: require lambda > 0");
    // Near the origin f ~ x^(beta-1), so f^lambda is integrable only when
    // lambda (beta - 1) > -1.
    if (lambda * (theta.beta - 1.0) <= -1.0)
        throw QuadratureFailure("pdf power integral diverges at the origin");
    double lm1 = lambda - 1.0;
    return integrate_expectation(
        theta, [&, lm1](double x) { return lm1 * log_pdf(theta, x); }, kInf, pol);
}

} // namespace egnh
