#include "egnh/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "egnh/dist.hpp"
#include "egnh/special.hpp"

namespace egnh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tolerance_at(const SeriesPolicy& pol, double scale) {
    return pol.abs_tol + pol.rel_tol * std::abs(scale);
}

// Walks binom(r, 0), binom(r, 1), ... in (log-magnitude, sign) form with an
// O(1) update per step; sign 0 marks the exact zeros of integer r. The long
// series below advance this once per term instead of recomputing the
// coefficient from scratch.
class BinomWalker {
public:
    explicit BinomWalker(double r) : r_(r) {}

    double log_mag() const { return lg_; }
    int sign() const { return sign_; }

    void advance() {
        if (sign_ != 0) {
            double f = (r_ - k_) / (k_ + 1.0);
            if (f == 0.0) sign_ = 0;
            else {
                if (f < 0.0) { sign_ = -sign_; f = -f; }
                lg_ += std::log(f);
            }
        }
        ++k_;
    }

private:
    double r_;
    std::size_t k_ = 0;
    double lg_ = 0.0;
    int sign_ = 1;
};

// Sums term(i) for i = 0,1,2,... in extended precision. The remaining tail
// is estimated from the apparent algebraic decay exponent of the term
// magnitudes (looked up a dyadic stride back); summation stops once that
// estimate falls under tolerance, or at the cap. Exact-zero runs (finite
// integer expansions) terminate immediately. A last-term-only rule would
// stop far too early on slowly decaying tails.
template <class TermFn>
SeriesResult sum_series(TermFn&& term, const SeriesPolicy& pol) {
    long double acc = 0.0L;
    std::vector<std::pair<std::size_t, double>> marks; // |term| at dyadic i
    std::size_t next_mark = 1, zero_run = 0;
    double last = 0.0;
    bool nonzero_seen = false;

    auto tail_estimate = [&](std::size_t i) {
        if (last == 0.0) return 0.0;
        // nearest recorded magnitude at least a factor ~2 back
        const std::pair<std::size_t, double>* ref = nullptr;
        for (const auto& m : marks)
            if (m.first * 2 <= i + 1 && m.second > 0.0) ref = &m;
        if (!ref) return kInf;
        double p = std::log(ref->second / last) /
                   std::log(double(i + 1) / double(ref->first));
        if (!(p > 1.02)) return kInf;
        return std::max(last, last * double(i + 1) / (p - 1.0));
    };

    std::size_t i = 0;
    for (; i < pol.max_terms; ++i) {
        double v = term(i);
        acc += v;
        last = std::abs(v);
        if (i + 1 == next_mark) {
            if (last > 0.0) marks.emplace_back(i + 1, last);
            next_mark *= 2;
        }
        if (last == 0.0) {
            // integer-parameter expansions end in exact zeros, but they can
            // also open with them (shifted binomial support), so require a
            // nonzero before treating a zero run as termination
            ++zero_run;
            if ((nonzero_seen && zero_run >= 3) || zero_run >= 64)
                return {static_cast<double>(acc), {true, i + 1, 0.0}};
            continue;
        }
        nonzero_seen = true;
        zero_run = 0;
        double tol = tolerance_at(pol, static_cast<double>(acc));
        // an infinite tolerance means "truncate at the cap only"
        if (std::isfinite(tol) && last < tol) {
            double tail = tail_estimate(i);
            if (tail < tol)
                return {static_cast<double>(acc), {true, i + 1, tail}};
        }
    }
    return {static_cast<double>(acc), {false, i, tail_estimate(i ? i - 1 : 0)}};
}

void require_convergence(const SeriesResult& r, const SeriesPolicy& pol, const char* what) {
    if (!r.trunc.converged &&
        r.trunc.tail_bound > tolerance_at(pol, r.value))
        throw NonConvergence(std::string(what) +
                             ": series cap reached with tail bound above tolerance");
}

// One outer-index term of the moment expansion:
// T(r, m) = a^-r * sum_l (-1)^(r-l) C(r,l) e^m m^(-l/b-1) Gamma(l/b+1, m).
double moment_outer_term(unsigned r, double m, double a, double b) {
    double log_m = std::log(m);
    long double acc = 0.0L;
    double sign = (r % 2 == 0) ? 1.0 : -1.0; // (-1)^(r-l) starting at l = 0
    for (unsigned l = 0; l <= r; ++l) {
        double s = l / b + 1.0;
        double lg = m + log_upper_gamma(s, m) - s * log_m;
        acc += sign * binom_real(double(r), l) * std::exp(lg);
        sign = -sign;
    }
    return static_cast<double>(acc) * std::exp(-double(r) * std::log(a));
}

// Partial first-moment kernel J(m, z) = int_0^z x g (1-G)^(m-1) dx in
// closed incomplete-gamma form (s = 1/b + 1, Z = (1+az)^b):
//   (e^m/a) [ m^-s (gamma(s, mZ) - gamma(s, m)) - (e^-m - e^-mZ)/m ]
double incomplete_first_kernel(double m, double a, double b, double z) {
    double s = 1.0 / b + 1.0;
    double log_Z_base = std::log1p(a * z);
    double Zm1 = std::expm1(b * log_Z_base);
    double mZ = m * (1.0 + Zm1);
    double lug_m = log_upper_gamma(s, m);
    double lug_mZ = log_upper_gamma(s, mZ);
    double term1 = -std::exp(m + lug_m - s * std::log(m)) * std::expm1(lug_mZ - lug_m);
    double term2 = -std::expm1(-m * Zm1) / m;
    return (term1 - term2) / a;
}

SeriesResult moment_series(const EgnhParams& t, unsigned r, const SeriesPolicy& pol) {
    BinomWalker bw(t.beta - 1.0);
    auto term = [&, bw](std::size_t i) mutable {
        double out = 0.0;
        if (bw.sign() != 0) {
            double parity = (i % 2 == 0) ? 1.0 : -1.0;
            double m = t.alpha * (double(i) + 1.0);
            out = parity * bw.sign() * std::exp(bw.log_mag()) *
                  moment_outer_term(r, m, t.a, t.b);
        }
        bw.advance();
        return out;
    };
    SeriesResult res = sum_series(term, pol);
    res.value *= t.alpha * t.beta;
    res.trunc.tail_bound *= t.alpha * t.beta;
    return res;
}

} // namespace

double nh_log_pdf(double a, double b, double x) {
    double la = std::log1p(a * x);
    double zm1 = std::expm1(b * la);
    return std::log(a * b) + (b - 1.0) * la - zm1;
}

double nh_cdf(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    double zm1 = std::expm1(b * std::log1p(a * x));
    return -std::expm1(-zm1);
}

double enh_pdf(double power, double a, double b, double x) {
    if (!(x > 0.0)) return 0.0;
    double zm1 = std::expm1(b * std::log1p(a * x));
    // log G = log(1 - e^(-(z-1)))
    double log_G = log1mexp(-zm1);
    return std::exp(std::log(power) + nh_log_pdf(a, b, x) + (power - 1.0) * log_G);
}

ExpansionCoeffs expansion_coeffs(const EgnhParams& theta, const SeriesPolicy& pol) {
    ExpansionCoeffs out;
    out.w_report = {true, 0, 0.0};
    out.t_report = {true, 0, 0.0};

    const std::size_t n_coeffs = pol.max_terms;
    out.w.reserve(n_coeffs);
    out.t.reserve(n_coeffs);
    out.u.reserve(n_coeffs);

    auto worst = [](Truncation& agg, const Truncation& one) {
        agg.converged = agg.converged && one.converged;
        agg.terms = std::max(agg.terms, one.terms);
        agg.tail_bound = std::max(agg.tail_bound, one.tail_bound);
    };

    for (std::size_t j = 0; j < n_coeffs; ++j) {
        unsigned ju = static_cast<unsigned>(j);
        double jparity = (j % 2 == 0) ? 1.0 : -1.0;

        auto w_term = [&](std::size_t i) {
            auto [lb1, s1] = log_abs_binom(theta.beta, static_cast<unsigned>(i));
            if (s1 == 0) return 0.0;
            auto [lb2, s2] = log_abs_binom(theta.alpha * double(i), ju);
            if (s2 == 0) return 0.0;
            double iparity = (i % 2 == 0) ? 1.0 : -1.0;
            return iparity * jparity * s1 * s2 * std::exp(lb1 + lb2);
        };
        SeriesResult wj = sum_series(w_term, pol);
        out.w.push_back(wj.value);
        worst(out.w_report, wj.trunc);

        auto t_term = [&](std::size_t i) {
            auto [lb1, s1] = log_abs_binom(theta.beta - 1.0, static_cast<unsigned>(i));
            if (s1 == 0) return 0.0;
            auto [lb2, s2] = log_abs_binom(theta.alpha * (double(i) + 1.0) - 1.0, ju);
            if (s2 == 0) return 0.0;
            double iparity = (i % 2 == 0) ? 1.0 : -1.0;
            return iparity * jparity * s1 * s2 * std::exp(lb1 + lb2);
        };
        SeriesResult tj = sum_series(t_term, pol);
        out.t.push_back(tj.value);
        out.u.push_back(theta.alpha * theta.beta * tj.value / (double(j) + 1.0));
        worst(out.t_report, tj.trunc);
    }

    auto police = [&](const Truncation& rep, const char* what) {
        if (!rep.converged && rep.tail_bound > pol.rel_tol)
            throw NonConvergence(std::string(what) +
                                 ": inner binomial sum capped with tail above rel_tol");
    };
    police(out.w_report, "expansion_coeffs.w");
    police(out.t_report, "expansion_coeffs.t");
    return out;
}

double mixture_pdf(const EgnhParams& theta, const ExpansionCoeffs& coeffs, double x) {
    if (!(x > 0.0)) throw std::domain_error("mixture_pdf: require x > 0");
    double zm1 = std::expm1(theta.b * std::log1p(theta.a * x));
    double log_G = log1mexp(-zm1);
    double log_g = nh_log_pdf(theta.a, theta.b, x);
    long double acc = 0.0L;
    for (std::size_t j = 0; j < coeffs.u.size(); ++j) {
        // u_j h_{j+1}(x) with h_p = p g G^(p-1)
        double h = (double(j) + 1.0) * std::exp(log_g + double(j) * log_G);
        acc += coeffs.u[j] * h;
    }
    return static_cast<double>(acc);
}

SeriesResult ordinary_moment(const EgnhParams& theta, unsigned r, const SeriesPolicy& pol) {
    if (r < 1) throw std::domain_error("ordinary_moment: require r >= 1");
    SeriesResult res = moment_series(theta, r, pol);
    require_convergence(res, pol, "ordinary_moment");
    return res;
}

MomentSummary central_moments_cumulants(const EgnhParams& theta, unsigned r_max,
                                        const SeriesPolicy& pol) {
    if (r_max < 4)
        throw std::domain_error("central_moments_cumulants: require r_max >= 4");
    MomentSummary out;
    out.raw.resize(r_max);
    for (unsigned r = 1; r <= r_max; ++r)
        out.raw[r - 1] = ordinary_moment(theta, r, pol).value;

    auto rawm = [&](unsigned r) { return r == 0 ? 1.0 : out.raw[r - 1]; };

    out.central.resize(r_max);
    double mean = out.raw[0];
    for (unsigned r = 1; r <= r_max; ++r) {
        long double acc = 0.0L;
        double sign = 1.0;
        for (unsigned m = 0; m <= r; ++m) {
            acc += sign * binom_real(double(r), m) * std::pow(mean, double(m)) * rawm(r - m);
            sign = -sign;
        }
        out.central[r - 1] = static_cast<double>(acc);
    }

    out.cumulant.resize(r_max);
    for (unsigned r = 1; r <= r_max; ++r) {
        long double acc = rawm(r);
        for (unsigned m = 1; m + 1 <= r; ++m)
            acc -= binom_real(double(r - 1), m - 1) * out.cumulant[m - 1] * rawm(r - m);
        out.cumulant[r - 1] = static_cast<double>(acc);
    }
    out.skewness = out.cumulant[2] / std::pow(out.cumulant[1], 1.5);
    out.kurtosis = out.cumulant[3] / (out.cumulant[1] * out.cumulant[1]);
    return out;
}

CheckedResult first_incomplete_moment(const EgnhParams& theta, double z,
                                      const SeriesPolicy& pol) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::domain_error("first_incomplete_moment: require finite z > 0");
    BinomWalker bw(theta.beta - 1.0);
    auto term = [&, bw](std::size_t i) mutable {
        double out = 0.0;
        if (bw.sign() != 0) {
            double parity = (i % 2 == 0) ? 1.0 : -1.0;
            double m = theta.alpha * (double(i) + 1.0);
            out = parity * bw.sign() * std::exp(bw.log_mag()) *
                  incomplete_first_kernel(m, theta.a, theta.b, z);
        }
        bw.advance();
        return out;
    };
    SeriesResult res = sum_series(term, pol);
    res.value *= theta.alpha * theta.beta;
    res.trunc.tail_bound *= theta.alpha * theta.beta;
    require_convergence(res, pol, "first_incomplete_moment");

    CheckedResult out;
    out.value = res.value;
    out.trunc = res.trunc;
    QuadPolicy qp;
    qp.rel_tol = std::min(1e-9, pol.rel_tol);
    out.oracle = quadrature_incomplete_first_moment(theta, z, qp).value;
    out.discrepancy = std::abs(out.value - out.oracle);
    if (out.discrepancy > 10.0 * tolerance_at(pol, out.oracle))
        throw SeriesOracleMismatch("first_incomplete_moment: series disagrees with quadrature");
    return out;
}

MeanDeviations mean_deviations(const EgnhParams& theta, const SeriesPolicy& pol) {
    double mean = ordinary_moment(theta, 1, pol).value;
    double median = quantile(theta, 0.5);
    double m1_mean = first_incomplete_moment(theta, mean, pol).value;
    double m1_median = first_incomplete_moment(theta, median, pol).value;
    MeanDeviations out;
    out.about_mean = 2.0 * mean * cdf(theta, mean) - 2.0 * m1_mean;
    out.about_median = mean - 2.0 * m1_median;
    return out;
}

BonferroniLorenz bonferroni_lorenz(const EgnhParams& theta, double pi,
                                   const SeriesPolicy& pol) {
    if (!(pi > 0.0) || !(pi < 1.0))
        throw std::domain_error("bonferroni_lorenz: require pi in (0,1)");
    double q = quantile(theta, pi);
    double mean = ordinary_moment(theta, 1, pol).value;
    double m1 = first_incomplete_moment(theta, q, pol).value;
    return {m1 / (pi * mean), m1 / mean};
}

CheckedResult renyi_entropy(const EgnhParams& theta, double lambda,
                            const SeriesPolicy& pol) {
    if (!(lambda > 0.0) || lambda == 1.0)
        throw std::domain_error("renyi_entropy: require lambda > 0, lambda != 1");
    if (lambda * (theta.beta - 1.0) <= -1.0)
        throw NonConvergence("renyi_entropy: integral of f^lambda diverges at the origin");

    double s = (lambda * (theta.b - 1.0) + 1.0) / theta.b;
    BinomWalker bw(lambda * (theta.beta - 1.0));
    auto term = [&, bw](std::size_t i) mutable {
        double out = 0.0;
        if (bw.sign() != 0) {
            double parity = (i % 2 == 0) ? 1.0 : -1.0;
            double M = (lambda + double(i)) * theta.alpha;
            double lg = double(i) * theta.alpha + log_upper_gamma(s, M) - s * std::log(M);
            out = parity * bw.sign() * std::exp(bw.log_mag() + lg);
        }
        bw.advance();
        return out;
    };
    // a relative error dS/S in the sum becomes (dS/S)/|1-lambda| in the
    // entropy, so the sum is held to a proportionally tighter tolerance
    SeriesPolicy inner = pol;
    inner.rel_tol = pol.rel_tol * std::abs(1.0 - lambda) * 0.25;
    SeriesResult sig = sum_series(term, inner);
    require_convergence(sig, inner, "renyi_entropy");
    if (!(sig.value > 0.0))
        throw NonConvergence("renyi_entropy: truncated series lost positivity");

    CheckedResult out;
    out.trunc = sig.trunc;
    out.value = -std::log(theta.a * theta.b) +
                (lambda * std::log(theta.alpha * theta.beta) + theta.alpha * lambda +
                 std::log(sig.value)) /
                    (1.0 - lambda);
    out.oracle = renyi_entropy_quadrature(theta, lambda);
    out.discrepancy = std::abs(out.value - out.oracle);
    if (out.discrepancy > 10.0 * tolerance_at(pol, std::max(1.0, std::abs(out.oracle))))
        throw SeriesOracleMismatch("renyi_entropy: series disagrees with quadrature");
    return out;
}

double renyi_entropy_quadrature(const EgnhParams& theta, double lambda,
                                const QuadPolicy& pol) {
    if (!(lambda > 0.0) || lambda == 1.0)
        throw std::domain_error("renyi_entropy_quadrature: require lambda > 0, lambda != 1");
    QuadResult integral = quadrature_pdf_power_integral(theta, lambda, pol);
    return std::log(integral.value) / (1.0 - lambda);
}

double order_statistic_pdf(const EgnhParams& theta, unsigned i, unsigned n, double x) {
    if (i < 1 || i > n) throw std::domain_error("order_statistic_pdf: require 1 <= i <= n");
    if (!(x > 0.0)) throw std::domain_error("order_statistic_pdf: require x > 0");
    Kernel k = kernel_at(theta, x);
    double lpdf = std::log(theta.a * theta.alpha * theta.b * theta.beta) +
                  (theta.b - 1.0) * k.log_ax1 + k.y + (theta.beta - 1.0) * k.log1me;
    double lcdf = theta.beta * k.log1me;
    double lsf = k.y < -690.0 ? std::log(theta.beta) + k.y
                              : log1mexp(theta.beta * k.log1me);
    double lg = lpdf + (double(i) - 1.0) * lcdf + double(n - i) * lsf -
                log_beta(double(i), double(n - i + 1));
    return std::exp(lg);
}

double order_statistic_pdf_series(const EgnhParams& theta, unsigned i, unsigned n, double x,
                                  const SeriesPolicy& pol) {
    if (i < 1 || i > n) throw std::domain_error("order_statistic_pdf_series: require 1 <= i <= n");
    if (!(x > 0.0)) throw std::domain_error("order_statistic_pdf_series: require x > 0");

    // f_{i:n} = (alpha beta / B(i, n-i+1)) sum_l [s_l / (l+1)] h_{l+1}
    // with s_l = sum_{j<=n-i} sum_k (-1)^(j+k+l) C(n-i,j)
    //            binom(beta(i+j)-1, k) binom(alpha(k+1)-1, l).
    double zm1 = std::expm1(theta.b * std::log1p(theta.a * x));
    double log_G = log1mexp(-zm1);
    double log_g = nh_log_pdf(theta.a, theta.b, x);

    long double total = 0.0L;
    for (std::size_t l = 0; l < pol.max_terms; ++l) {
        double lparity = (l % 2 == 0) ? 1.0 : -1.0;
        long double sl = 0.0L;
        for (unsigned j = 0; j <= n - i; ++j) {
            double jparity = (j % 2 == 0) ? 1.0 : -1.0;
            double cj = binom_real(double(n - i), j);
            auto inner = [&](std::size_t kk) {
                auto [lb1, s1] = log_abs_binom(theta.beta * double(i + j) - 1.0,
                                               static_cast<unsigned>(kk));
                if (s1 == 0) return 0.0;
                auto [lb2, s2] = log_abs_binom(theta.alpha * (double(kk) + 1.0) - 1.0,
                                               static_cast<unsigned>(l));
                if (s2 == 0) return 0.0;
                double kparity = (kk % 2 == 0) ? 1.0 : -1.0;
                return kparity * s1 * s2 * std::exp(lb1 + lb2);
            };
            SeriesResult ks = sum_series(inner, pol);
            sl += jparity * lparity * cj * ks.value;
        }
        double h = (double(l) + 1.0) * std::exp(log_g + double(l) * log_G);
        total += (static_cast<double>(sl) / (double(l) + 1.0)) * h;
    }
    double front = theta.alpha * theta.beta /
                   std::exp(log_beta(double(i), double(n - i + 1)));
    return front * static_cast<double>(total);
}

} // namespace egnh
