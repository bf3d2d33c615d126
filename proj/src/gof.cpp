#include "egnh/gof.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "egnh/special.hpp"

namespace egnh {

namespace {

struct Starred {
    double w_star, a_star;
};

Starred starred_from_u(const std::vector<double>& u) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i)
        if (u[i] <= 0.0 || u[i] >= 1.0)
            throw UndefinedStatistic("gof: u_(" + std::to_string(i + 1) +
                                     ") at 0 or 1, A^2 log terms diverge");
    double W2 = 1.0 / (12.0 * double(n));
    double A2 = -double(n);
    for (std::size_t i = 1; i <= n; ++i) {
        double d = u[i - 1] - (2.0 * double(i) - 1.0) / (2.0 * double(n));
        W2 += d * d;
        A2 -= (2.0 * double(i) - 1.0) / double(n) *
              (std::log(u[i - 1]) + std::log1p(-u[n - i]));
    }
    double fn = double(n);
    return {W2 * (1.0 + 0.5 / fn), A2 * (1.0 + 0.75 / fn + 2.25 / (fn * fn))};
}

} // namespace

double ks_statistic(const std::vector<double>& sorted_values,
                    const std::function<double(double)>& model_cdf) {
    const std::size_t n = sorted_values.size();
    double ks = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        double u = model_cdf(sorted_values[i - 1]);
        ks = std::max(ks, std::max(double(i) / double(n) - u,
                                   u - (double(i) - 1.0) / double(n)));
    }
    return ks;
}

double two_sample_ks(const std::vector<double>& a, const std::vector<double>& b) {
    std::size_t i = 0, j = 0;
    double ks = 0.0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        ks = std::max(ks, std::abs(double(i) / double(a.size()) -
                                   double(j) / double(b.size())));
    }
    return ks;
}

GofReport gof(const FitResult& fit, const Sample& s,
              const std::function<double(double)>& model_cdf) {
    const auto& xs = s.sorted();
    const std::size_t n = xs.size();

    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = model_cdf(xs[i]);

    GofReport rep;
    rep.n = n;
    rep.k = fit.k();
    rep.loglik = fit.loglik;

    Starred plain = starred_from_u(u);
    rep.w_star = plain.w_star;
    rep.a_star = plain.a_star;

    // Chen-Balakrishnan: standardize in the normal-quantile domain.
    {
        std::vector<double> y(n);
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = norm_quantile(u[i]);
            mean += y[i];
        }
        mean /= double(n);
        double var = 0.0;
        for (double yi : y) var += (yi - mean) * (yi - mean);
        var /= double(n - 1);
        double sd = std::sqrt(var);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = norm_cdf((y[i] - mean) / sd);
        Starred tr = starred_from_u(v);
        rep.w_star_transformed = tr.w_star;
        rep.a_star_transformed = tr.a_star;
    }

    rep.ks = ks_statistic(xs, model_cdf);

    double k = double(rep.k), fn = double(n);
    rep.aic = -2.0 * rep.loglik + 2.0 * k;
    rep.bic = -2.0 * rep.loglik + k * std::log(fn);
    rep.caic = rep.aic + 2.0 * k * (k + 1.0) / (fn - k - 1.0);
    rep.hqic = -2.0 * rep.loglik + 2.0 * k * std::log(std::log(fn));
    return rep;
}

GofReport gof(const FitResult& fit, const Sample& s) {
    if (!fit.cdf_fn) throw std::invalid_argument("gof: fit carries no cdf evaluator");
    return gof(fit, s, fit.cdf_fn);
}

std::vector<std::array<double, 2>> ttt_plot_data(const Sample& s) {
    const auto& y = s.sorted();
    const std::size_t n = y.size();
    if (n < 2) throw std::invalid_argument("ttt_plot_data: require n >= 2");
    double total = 0.0;
    for (double v : y) total += v;
    std::vector<std::array<double, 2>> out;
    out.reserve(n);
    double partial = 0.0;
    for (std::size_t r = 1; r <= n; ++r) {
        partial += y[r - 1];
        double g = (partial + double(n - r) * y[r - 1]) / total;
        out.push_back({double(r) / double(n), g});
    }
    return out;
}

DescriptiveStats descriptive_stats(const Sample& s) {
    const auto& xs = s.sorted();
    const std::size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("descriptive_stats: require n >= 2");

    DescriptiveStats d;
    double sum = 0.0;
    for (double x : xs) sum += x;
    d.mean = sum / double(n);
    d.median = (n % 2 == 1) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
    d.min = xs.front();
    d.max = xs.back();

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : xs) {
        double c = x - d.mean;
        m2 += c * c;
        m3 += c * c * c;
        m4 += c * c * c * c;
    }
    d.variance = m2 / double(n - 1);
    m2 /= double(n);
    m3 /= double(n);
    m4 /= double(n);

    if (m2 > 0.0) {
        double g1 = m3 / std::pow(m2, 1.5);
        double raw = m4 / (m2 * m2);
        d.skewness_g1 = g1;
        d.kurtosis_raw = raw;
        d.kurtosis_excess = raw - 3.0;
        if (n > 2) {
            double fn = double(n);
            d.skewness_adjusted = g1 * std::sqrt(fn * (fn - 1.0)) / (fn - 2.0);
        }
    }
    return d;
}

} // namespace egnh
