#include "egnh/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace egnh {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool worse(double candidate, double reference) {
    return std::isnan(candidate) || candidate >= reference;
}

} // namespace

OptimReport bfgs_minimize(const std::function<double(const std::vector<double>&)>& f,
                          const std::function<std::vector<double>(const std::vector<double>&)>& grad,
                          std::vector<double> x0, const OptimOptions& opt) {
    const std::size_t n = x0.size();
    OptimReport rep;
    rep.x = std::move(x0);
    rep.value = f(rep.x);
    rep.gradient = grad(rep.x);

    // inverse-Hessian approximation, identity start
    std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) H[i][i] = 1.0;

    for (rep.iterations = 0; rep.iterations < opt.max_iterations; ++rep.iterations) {
        if (inf_norm(rep.gradient) < opt.grad_tol) {
            rep.stop = StopReason::Stationary;
            return rep;
        }

        std::vector<double> dir(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) dir[i] -= H[i][j] * rep.gradient[j];

        double descent = dot(dir, rep.gradient);
        if (!(descent < 0.0)) { // curvature info went bad, restart steepest
            for (std::size_t i = 0; i < n; ++i) {
                std::fill(H[i].begin(), H[i].end(), 0.0);
                H[i][i] = 1.0;
                dir[i] = -rep.gradient[i];
            }
            descent = dot(dir, rep.gradient);
        }

        // Armijo backtracking
        double step = 1.0;
        double fx_new = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> x_new(n);
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = rep.x[i] + step * dir[i];
            fx_new = f(x_new);
            if (!worse(fx_new, rep.value + 1e-4 * step * descent)) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            rep.stop = StopReason::LineSearchFailed;
            return rep;
        }

        double step_size = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            step_size = std::max(step_size, std::abs(step * dir[i]));
        double improvement = rep.value - fx_new;

        std::vector<double> g_new = grad(x_new);
        std::vector<double> s(n), yv(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - rep.x[i];
            yv[i] = g_new[i] - rep.gradient[i];
        }
        double sy = dot(s, yv);
        if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(yv, yv))) {
            // BFGS inverse update
            double rho = 1.0 / sy;
            std::vector<double> Hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) Hy[i] += H[i][j] * yv[j];
            double yHy = dot(yv, Hy);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    H[i][j] += rho * rho * (sy + yHy) * s[i] * s[j] -
                               rho * (Hy[i] * s[j] + s[i] * Hy[j]);
        }

        rep.x = std::move(x_new);
        rep.value = fx_new;
        rep.gradient = std::move(g_new);

        // absolute thresholds: decisions are invariant under constant shifts
        // of the objective and translations of the (log-scale) coordinates
        if (step_size < opt.step_tol || improvement < opt.value_tol) {
            rep.stop = StopReason::Stalled;
            return rep;
        }
    }
    rep.stop = StopReason::IterationCap;
    return rep;
}

} // namespace egnh
