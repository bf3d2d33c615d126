#include "egnh/inference.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "egnh/dist.hpp"
#include "egnh/special.hpp"

namespace egnh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

// Per-observation pieces reused by loglik and score.
struct Terms {
    double log_ax1, zm1, y, log1me;
};

Terms terms_at(double alpha, double a, double b, double x) {
    Terms t;
    t.log_ax1 = std::log1p(a * x);
    t.zm1 = std::expm1(b * t.log_ax1);
    t.y = -alpha * t.zm1;
    t.log1me = log1mexp(t.y);
    return t;
}

} // namespace

Sample::Sample(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
    if (values_.empty()) throw std::invalid_argument("Sample: need at least one observation");
    for (double x : values_)
        if (!(x > 0.0) || !std::isfinite(x))
            throw std::invalid_argument("Sample: observations must be positive and finite");
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
}

double loglik(const EgnhParams& theta, const Sample& s) {
    const double n = double(s.size());
    double acc = n * std::log(theta.a * theta.alpha * theta.b * theta.beta);
    for (double x : s.values()) {
        Terms t = terms_at(theta.alpha, theta.a, theta.b, x);
        acc += (theta.b - 1.0) * t.log_ax1 + t.y + (theta.beta - 1.0) * t.log1me;
    }
    return std::isnan(acc) ? kNegInf : acc;
}

std::array<double, 4> score(const EgnhParams& theta, const Sample& s) {
    const double n = double(s.size());
    const double alpha = theta.alpha, beta = theta.beta, a = theta.a, b = theta.b;
    double d_alpha = n / alpha, d_beta = n / beta, d_a = n / a, d_b = n / b;
    for (double x : s.values()) {
        Terms t = terms_at(alpha, a, b, x);
        double z = 1.0 + t.zm1;
        // e^y / (1 - e^y), evaluated in logs
        double ratio = std::exp(t.y - t.log1me);
        double zpow_bm1 = std::exp((b - 1.0) * t.log_ax1);
        d_alpha += -t.zm1 * (1.0 - (beta - 1.0) * ratio);
        d_beta += t.log1me;
        d_a += (b - 1.0) * x / (1.0 + a * x) +
               alpha * b * x * zpow_bm1 * ((beta - 1.0) * ratio - 1.0);
        d_b += t.log_ax1 + alpha * t.log_ax1 * z * ((beta - 1.0) * ratio - 1.0);
    }
    return {d_alpha, d_beta, d_a, d_b};
}

double beta_hat(double alpha, double a, double b, const Sample& s) {
    double sum = 0.0;
    for (double x : s.values())
        sum += terms_at(alpha, a, b, x).log1me;
    // sum < 0 for any x > 0; underflow to -0 means every observation sits
    // numerically at the upper support edge (degenerate, beta_hat -> inf)
    if (!(sum < 0.0)) return kInf;
    return -double(s.size()) / sum;
}

double profile_loglik(double alpha, double a, double b, const Sample& s) {
    if (!(alpha > 0.0) || !(a > 0.0) || !(b > 0.0)) return kNegInf;
    double bh = beta_hat(alpha, a, b, s);
    if (!std::isfinite(bh) || !(bh > 0.0)) return kNegInf;
    return loglik(EgnhParams(alpha, bh, a, b), s);
}

double profile_loglik_expanded(double alpha, double a, double b, const Sample& s) {
    const double n = double(s.size());
    double sum_log1me = 0.0, sum_log_ax1 = 0.0, sum_z = 0.0;
    for (double x : s.values()) {
        Terms t = terms_at(alpha, a, b, x);
        sum_log1me += t.log1me;
        sum_log_ax1 += t.log_ax1;
        sum_z += 1.0 + t.zm1;
    }
    if (!(sum_log1me < 0.0)) return kNegInf;
    return n * (alpha + std::log(alpha * a * b * (-n / sum_log1me))) +
           (b - 1.0) * sum_log_ax1 - alpha * sum_z -
           (n / sum_log1me + 1.0) * sum_log1me;
}

namespace {

// Which of (alpha, beta, a, b) an optimization moves, what stays fixed and
// whether beta is concentrated out through its closed form.
struct Restriction {
    std::array<bool, 4> free;
    std::array<double, 4> fixed; // used where !free
    bool profile_beta;
};

std::array<double, 4> assemble(const Restriction& r, const std::vector<double>& v,
                               const Sample& s) {
    std::array<double, 4> th = r.fixed;
    std::size_t k = 0;
    for (int i = 0; i < 4; ++i)
        if (r.free[i]) th[i] = v[k++];
    if (r.profile_beta) th[1] = beta_hat(th[0], th[2], th[3], s);
    return th;
}

double restricted_loglik(const Restriction& r, const std::vector<double>& v,
                         const Sample& s) {
    std::array<double, 4> th = assemble(r, v, s);
    for (double p : th)
        if (!std::isfinite(p) || !(p > 0.0)) return kNegInf;
    return loglik(EgnhParams(th[0], th[1], th[2], th[3]), s);
}

// Gradient in log-parameter space of the restricted (possibly profiled)
// log-likelihood. With beta profiled the envelope identity applies: the
// beta component of the score vanishes at beta_hat, so the free components
// of the full score are the profile gradient.
std::vector<double> restricted_grad_log(const Restriction& r, const std::vector<double>& vlog,
                                        const Sample& s) {
    std::vector<double> v(vlog.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(vlog[i]);
    std::array<double, 4> th = assemble(r, v, s);
    std::array<double, 4> u{0, 0, 0, 0};
    bool ok = true;
    for (double p : th)
        if (!std::isfinite(p) || !(p > 0.0)) ok = false;
    if (ok) u = score(EgnhParams(th[0], th[1], th[2], th[3]), s);
    std::vector<double> g;
    g.reserve(v.size());
    for (int i = 0; i < 4; ++i)
        if (r.free[i]) {
            double gi = -th[i] * u[i]; // minimize -loglik
            g.push_back(std::isfinite(gi) ? gi : 0.0);
        }
    return g;
}

// Deterministic starts in natural (alpha, a, b) coordinates; a is scaled
// as rate / b so the implied initial hazard scale matches the
// exponential-fit rate.
std::vector<std::array<double, 3>> default_starts(const Sample& s, bool lean) {
    double rate = 1.0 / mean_of(s.values());
    std::vector<std::array<double, 3>> out;
    if (lean) {
        for (double b : {2.0, 20.0})
            for (double alpha : {0.5, 2.0})
                out.push_back({alpha, rate / b, b});
        return out;
    }
    for (double b : {0.5, 2.0, 20.0})
        for (double alpha : {0.5, 2.0})
            out.push_back({alpha, rate / b, b});
    out.push_back({0.02, rate / 40.0, 40.0});
    out.push_back({1.0, rate, 1.5});
    return out;
}

// Box bound on the log parameters: values outside [1e-20, 1e20] are treated
// as infeasible. This is the constrained-solver reading of the estimation
// procedure and keeps ridge-degenerate estimates representable.
constexpr double kLogBox = 46.0;

OptimReport run_one_start(const Restriction& r, std::vector<double> start_log,
                          const Sample& s, const OptimOptions& oo) {
    auto objective = [&r, &s](const std::vector<double>& vlog) {
        std::vector<double> v(vlog.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (std::abs(vlog[i]) > kLogBox)
                return std::numeric_limits<double>::infinity();
            v[i] = std::exp(vlog[i]);
        }
        double ll = restricted_loglik(r, v, s);
        return -ll;
    };
    auto gradient = [&r, &s](const std::vector<double>& vlog) {
        return restricted_grad_log(r, vlog, s);
    };
    // pull an infeasible start toward the all-ones point until evaluable
    for (int tries = 0; tries < 60 && !std::isfinite(objective(start_log)); ++tries)
        for (auto& c : start_log) c *= 0.5;
    return bfgs_minimize(objective, gradient, start_log, oo);
}

std::vector<double> free_indices_values(const Restriction& r, const std::array<double, 4>& th) {
    std::vector<double> v;
    for (int i = 0; i < 4; ++i)
        if (r.free[i]) v.push_back(th[i]);
    return v;
}

// Observed information on the free coordinates by central differences of
// the analytic score; step 1e-5 |theta_i| + 1e-8.
std::vector<double> observed_information(const Restriction& r, const std::array<double, 4>& th,
                                         const Sample& s) {
    std::vector<int> idx;
    for (int i = 0; i < 4; ++i)
        if (r.free[i]) idx.push_back(i);
    const std::size_t k = idx.size();
    std::vector<double> J(k * k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double h = 1e-5 * std::abs(th[idx[j]]) + 1e-8;
        if (h >= th[idx[j]]) h = 0.5 * th[idx[j]]; // keep the step inside the domain
        std::array<double, 4> up = th, dn = th;
        up[idx[j]] += h;
        dn[idx[j]] -= h;
        auto su = score(EgnhParams(up[0], up[1], up[2], up[3]), s);
        auto sd = score(EgnhParams(dn[0], dn[1], dn[2], dn[3]), s);
        for (std::size_t i = 0; i < k; ++i)
            J[i * k + j] = -(su[idx[i]] - sd[idx[i]]) / (2.0 * h);
    }
    // symmetrize
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            double m = 0.5 * (J[i * k + j] + J[j * k + i]);
            J[i * k + j] = J[j * k + i] = m;
        }
    return J;
}

// Cholesky-based inverse of a symmetric positive definite matrix; empty on
// failure.
std::vector<double> spd_inverse(std::vector<double> A, std::size_t k) {
    std::vector<double> L(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = A[i * k + j];
            for (std::size_t m = 0; m < j; ++m) sum -= L[i * k + m] * L[j * k + m];
            if (i == j) {
                if (!(sum > 0.0) || !std::isfinite(sum)) return {};
                L[i * k + i] = std::sqrt(sum);
            } else {
                L[i * k + j] = sum / L[j * k + j];
            }
        }
    }
    // invert L, then inv(A) = L^-T L^-1
    std::vector<double> Li(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        Li[i * k + i] = 1.0 / L[i * k + i];
        for (std::size_t j = 0; j < i; ++j) {
            double sum = 0.0;
            for (std::size_t m = j; m < i; ++m) sum -= L[i * k + m] * Li[m * k + j];
            Li[i * k + j] = sum / L[i * k + i];
        }
    }
    std::vector<double> inv(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double sum = 0.0;
            for (std::size_t m = std::max(i, j); m < k; ++m) sum += Li[m * k + i] * Li[m * k + j];
            inv[i * k + j] = sum;
        }
    return inv;
}

// The reporting restriction may expose more coordinates than were
// optimized (an EGNH profile fit optimizes 3 but reports all 4).
FitResult finish_fit(const Restriction& report, const std::array<double, 4>& th,
                     const OptimReport& rep, const Sample& s, const std::string& model,
                     FitMethod method, const std::vector<std::string>& names) {
    FitResult out;
    out.model = model;
    out.method = method;
    out.param_names = names;
    out.estimates = free_indices_values(report, th);
    EgnhParams theta(th[0], th[1], th[2], th[3]);
    out.loglik = loglik(theta, s);
    auto u = score(theta, s);
    for (int i = 0; i < 4; ++i)
        if (report.free[i]) out.score_at_hat.push_back(u[i]);
    out.converged = rep.stop == StopReason::Stationary;
    out.stop = rep.stop;
    out.iterations = rep.iterations;
    out.identifiability_warning = std::abs(th[3] - 1.0) < 1e-6 && model == "egnh";
    out.egnh = theta;
    out.cdf_fn = [theta](double x) { return cdf(theta, x); };

    auto J = observed_information(report, th, s);
    auto cov = spd_inverse(J, out.k());
    if (!cov.empty()) {
        bool good = true;
        for (std::size_t i = 0; i < out.k(); ++i)
            if (!(cov[i * out.k() + i] > 0.0)) good = false;
        if (good) {
            out.has_std_errors = true;
            out.cov = cov;
            for (std::size_t i = 0; i < out.k(); ++i) {
                double se = std::sqrt(cov[i * out.k() + i]);
                out.std_errors.push_back(se);
                double est = out.estimates[i];
                double se_log = se / est;
                out.ci95.push_back({est * std::exp(-1.959963984540054 * se_log),
                                    est * std::exp(1.959963984540054 * se_log)});
            }
        }
    }
    return out;
}

FitResult fit_restricted(const Sample& s, const Restriction& opt, const Restriction& report,
                         const std::string& model, FitMethod method,
                         const std::vector<std::string>& names,
                         const std::vector<std::vector<double>>& nat_starts,
                         std::size_t max_iterations = 600) {
    OptimOptions oo;
    oo.max_iterations = max_iterations;
    std::vector<std::future<OptimReport>> futures;
    futures.reserve(nat_starts.size());
    for (const auto& st : nat_starts) {
        std::vector<double> vlog(st.size());
        for (std::size_t i = 0; i < st.size(); ++i) vlog[i] = std::log(st[i]);
        futures.push_back(std::async(std::launch::async, run_one_start, opt, vlog, std::cref(s), oo));
    }
    std::vector<OptimReport> reports;
    reports.reserve(futures.size());
    for (auto& fu : futures) reports.push_back(fu.get());

    // best by loglik, then smaller gradient norm, then start index
    std::size_t best = reports.size();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (!std::isfinite(reports[i].value)) continue;
        if (best == reports.size()) { best = i; continue; }
        double li = -reports[i].value, lb = -reports[best].value;
        double gi = 0.0, gb = 0.0;
        for (double g : reports[i].gradient) gi = std::max(gi, std::abs(g));
        for (double g : reports[best].gradient) gb = std::max(gb, std::abs(g));
        if (li > lb + 1e-12 || (std::abs(li - lb) <= 1e-12 && gi < gb)) best = i;
    }
    if (best == reports.size())
        throw NoConvergence("fit: no start produced a finite likelihood");

    std::vector<double> v(reports[best].x.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(reports[best].x[i]);
    std::array<double, 4> th = assemble(opt, v, s);
    return finish_fit(report, th, reports[best], s, model, method, names);
}

} // namespace

FitResult fit(const Sample& s, FitMethod method, const StartPolicy& starts) {
    std::vector<std::array<double, 3>> grid;
    if (starts.use_default_grid) grid = default_starts(s, starts.lean_grid);
    for (const auto& e : starts.extra_starts) grid.push_back(e);
    if (grid.empty()) throw std::invalid_argument("fit: empty start set");

    const Restriction report_all{{true, true, true, true}, {1, 1, 1, 1}, false};
    const std::vector<std::string> names{"alpha", "beta", "a", "b"};
    if (method == FitMethod::ProfileLik) {
        Restriction opt{{true, false, true, true}, {1, 1, 1, 1}, true};
        std::vector<std::vector<double>> nat;
        for (auto& g : grid) nat.push_back({g[0], g[1], g[2]});
        return fit_restricted(s, opt, report_all, "egnh", method, names, nat,
                              starts.max_iterations);
    }
    Restriction opt{{true, true, true, true}, {1, 1, 1, 1}, false};
    std::vector<std::vector<double>> nat;
    for (auto& g : grid) {
        double bh = beta_hat(g[0], g[1], g[2], s);
        if (!std::isfinite(bh) || !(bh > 0.0)) bh = 1.0;
        nat.push_back({g[0], bh, g[1], g[2]});
    }
    return fit_restricted(s, opt, report_all, "egnh", method, names, nat,
                          starts.max_iterations);
}

FitResult fit_submodel(const Sample& s, SubModel model) {
    double rate = 1.0 / mean_of(s.values());
    switch (model) {
    case SubModel::NH: {
        Restriction opt{{false, false, true, true}, {1, 1, 1, 1}, false};
        std::vector<std::vector<double>> nat;
        for (double b : {0.5, 2.0, 20.0, 200.0}) nat.push_back({rate / b, b});
        return fit_restricted(s, opt, opt, "nh", FitMethod::FullLik, {"a", "b"}, nat);
    }
    case SubModel::ENH: {
        Restriction opt{{false, false, true, true}, {1, 1, 1, 1}, true};
        Restriction report{{false, true, true, true}, {1, 1, 1, 1}, false};
        std::vector<std::vector<double>> nat;
        for (double b : {0.5, 2.0, 20.0, 200.0}) nat.push_back({rate / b, b});
        return fit_restricted(s, opt, report, "enh", FitMethod::ProfileLik,
                              {"beta", "a", "b"}, nat);
    }
    case SubModel::EE: {
        Restriction opt{{false, false, true, false}, {1, 1, 1, 1}, true};
        Restriction report{{false, true, true, false}, {1, 1, 1, 1}, false};
        std::vector<std::vector<double>> nat;
        for (double f : {0.25, 1.0, 4.0}) nat.push_back({rate * f});
        return fit_restricted(s, opt, report, "ee", FitMethod::ProfileLik, {"beta", "a"}, nat);
    }
    case SubModel::Exponential: {
        // closed form: a_hat = 1/mean, se = a_hat/sqrt(n)
        FitResult out;
        out.model = "exponential";
        out.method = FitMethod::FullLik;
        out.param_names = {"a"};
        double a = rate;
        out.estimates = {a};
        EgnhParams theta(1, 1, a, 1);
        out.loglik = loglik(theta, s);
        out.score_at_hat = {0.0};
        out.converged = true;
        out.stop = StopReason::Stationary;
        out.has_std_errors = true;
        double se = a / std::sqrt(double(s.size()));
        out.std_errors = {se};
        out.cov = {se * se};
        double se_log = se / a;
        out.ci95 = {{a * std::exp(-1.959963984540054 * se_log),
                     a * std::exp(1.959963984540054 * se_log)}};
        out.egnh = theta;
        out.cdf_fn = [theta](double x) { return cdf(theta, x); };
        return out;
    }
    case SubModel::Weibull:
        break;
    }

    // Weibull, own two-parameter likelihood; profile the scale out:
    // lambda_hat(k) = (mean x^k)^(1/k).
    const auto& xs = s.values();
    const double n = double(xs.size());
    double sum_log = 0.0;
    for (double x : xs) sum_log += std::log(x);

    auto wloglik = [&](double k, double lam) {
        double acc = n * (std::log(k) - k * std::log(lam)) + (k - 1.0) * sum_log;
        for (double x : xs) acc -= std::pow(x / lam, k);
        return std::isnan(acc) ? kNegInf : acc;
    };
    auto lam_hat = [&](double k) {
        double m = 0.0;
        for (double x : xs) m += std::pow(x, k);
        return std::pow(m / n, 1.0 / k);
    };
    auto objective = [&](const std::vector<double>& vlog) {
        double k = std::exp(vlog[0]);
        if (!(k > 0.0) || !std::isfinite(k)) return kInf;
        return -wloglik(k, lam_hat(k));
    };
    auto gradient = [&](const std::vector<double>& vlog) {
        double h = 1e-6;
        double up = objective({vlog[0] + h}), dn = objective({vlog[0] - h});
        return std::vector<double>{(up - dn) / (2.0 * h)};
    };
    OptimReport best;
    best.value = kInf;
    for (double k0 : {0.5, 1.0, 2.0, 4.0}) {
        auto rep = bfgs_minimize(objective, gradient, {std::log(k0)}, {});
        if (rep.value < best.value) best = rep;
    }
    if (!std::isfinite(best.value))
        throw NoConvergence("fit_submodel(weibull): no start produced a finite likelihood");
    double k = std::exp(best.x[0]);
    double lam = lam_hat(k);

    FitResult out;
    out.model = "weibull";
    out.method = FitMethod::ProfileLik;
    out.param_names = {"shape", "scale"};
    out.estimates = {k, lam};
    out.loglik = wloglik(k, lam);
    auto wscore = [&](double kk, double ll2) {
        double dk = n / kk - n * std::log(ll2) + sum_log;
        double dl = -n * kk / ll2;
        for (double x : xs) {
            double t = std::pow(x / ll2, kk);
            dk -= t * std::log(x / ll2);
            dl += kk / ll2 * t;
        }
        return std::array<double, 2>{dk, dl};
    };
    auto u = wscore(k, lam);
    out.score_at_hat = {u[0], u[1]};
    out.converged = best.stop == StopReason::Stationary || best.stop == StopReason::Stalled;
    out.stop = best.stop;
    out.iterations = best.iterations;
    // observed information by central differences of the analytic score
    {
        std::vector<double> J(4, 0.0);
        double hs[2] = {1e-5 * k + 1e-8, 1e-5 * lam + 1e-8};
        for (int j = 0; j < 2; ++j) {
            double ku = k + (j == 0 ? hs[0] : 0.0), kd = k - (j == 0 ? hs[0] : 0.0);
            double lu = lam + (j == 1 ? hs[1] : 0.0), ld = lam - (j == 1 ? hs[1] : 0.0);
            auto su = wscore(ku, lu), sd = wscore(kd, ld);
            for (int i = 0; i < 2; ++i) J[i * 2 + j] = -(su[i] - sd[i]) / (2.0 * hs[j]);
        }
        double m01 = 0.5 * (J[1] + J[2]);
        J[1] = J[2] = m01;
        auto cov = spd_inverse(J, 2);
        if (!cov.empty() && cov[0] > 0.0 && cov[3] > 0.0) {
            out.has_std_errors = true;
            out.cov = cov;
            for (int i = 0; i < 2; ++i) {
                double se = std::sqrt(cov[i * 2 + i]);
                out.std_errors.push_back(se);
                double est = out.estimates[i];
                out.ci95.push_back({est * std::exp(-1.959963984540054 * se / est),
                                    est * std::exp(1.959963984540054 * se / est)});
            }
        }
    }
    out.cdf_fn = [k, lam](double x) {
        return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / lam, k));
    };
    return out;
}

} // namespace egnh
