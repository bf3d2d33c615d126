#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "egnh/dist.hpp"
#include "egnh/rng.hpp"

using namespace egnh;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent submodel densities, written from their own definitions.
double enh_density(double beta, double a, double b, double x) {
    double G = 1.0 - std::exp(1.0 - std::pow(1.0 + a * x, b));
    double g = a * b * std::pow(1.0 + a * x, b - 1.0) * std::exp(1.0 - std::pow(1.0 + a * x, b));
    return beta * g * std::pow(G, beta - 1.0);
}
double e2nh_density(double alpha, double a, double b, double x) {
    double G = 1.0 - std::exp(1.0 - std::pow(1.0 + a * x, b));
    double g = a * b * std::pow(1.0 + a * x, b - 1.0) * std::exp(1.0 - std::pow(1.0 + a * x, b));
    return alpha * g * std::pow(1.0 - G, alpha - 1.0);
}
double nh_density(double a, double b, double x) {
    return a * b * std::pow(1.0 + a * x, b - 1.0) * std::exp(1.0 - std::pow(1.0 + a * x, b));
}
double ee_density(double beta, double a, double x) {
    return beta * a * std::exp(-a * x) * std::pow(1.0 - std::exp(-a * x), beta - 1.0);
}

double bisect_quantile(const EgnhParams& t, double p) {
    double lo = 0.0, hi = 1.0;
    while (cdf(t, hi) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (cdf(t, mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("pdf: exponential submodel and origin limits") {
    for (double a : {0.3, 1.0, 4.0}) {
        EgnhParams t(1, 1, a, 1);
        for (double x : {0.01, 0.5, 2.0, 9.0})
            CHECK(pdf(t, x) == doctest::Approx(a * std::exp(-a * x)).epsilon(1e-14));
    }
    CHECK(pdf(EgnhParams(3, 1, 0.7, 2), 0.0) == doctest::Approx(0.7 * 2 * 3));
    CHECK(pdf(EgnhParams(2, 0.5, 1, 2), 0.0) == kInf);
    CHECK(pdf(EgnhParams(2, 3, 1, 2), 0.0) == 0.0);
    CHECK_THROWS_AS(pdf(EgnhParams(1, 1, 1, 1), -1.0), std::domain_error);
}

TEST_CASE("pdf equals numerical derivative of cdf") {
    EgnhParams t(2, 1.5, 0.5, 2);
    for (double x : {0.3, 1.0, 2.5}) {
        double h = 1e-6 * x;
        double deriv = (cdf(t, x + h) - cdf(t, x - h)) / (2.0 * h);
        CHECK(pdf(t, x) == doctest::Approx(deriv).epsilon(1e-6));
    }
}

TEST_CASE("log_pdf: stability and agreement") {
    CHECK(log_pdf(EgnhParams(1, 1, 1, 1), 2.0) == doctest::Approx(-2.0).epsilon(1e-14));

    EgnhParams hard(1.8e-3, 2.83e-1, 1.75e-3, 47.066);
    double lp = log_pdf(hard, 48.5);
    CHECK(std::isfinite(lp));
    CHECK(lp == doctest::Approx(std::log(pdf(hard, 48.5))).epsilon(1e-10));

    // tail robustness near the origin with beta > 1
    double tiny = log_pdf(EgnhParams(2, 3, 0.5, 2), 1e-300);
    CHECK(std::isfinite(tiny));
    CHECK(tiny < -1000.0); // consistent with the zero limit
    CHECK_THROWS_AS(log_pdf(EgnhParams(1, 1, 1, 1), 0.0), std::domain_error);
}

TEST_CASE("cdf: boundary, submodel, round trip") {
    EgnhParams t(2, 1.5, 0.5, 2);
    CHECK(cdf(t, 0.0) == 0.0);
    CHECK(cdf(t, -3.0) == 0.0);
    CHECK(cdf(t, kInf) == 1.0);
    CHECK_THROWS_AS(cdf(t, std::numeric_limits<double>::quiet_NaN()), std::domain_error);

    for (double a : {0.5, 2.0}) {
        EgnhParams e(1, 1, a, 1);
        for (double x : {0.2, 1.0, 5.0})
            CHECK(cdf(e, x) == doctest::Approx(1.0 - std::exp(-a * x)).epsilon(1e-14));
    }
    CHECK(cdf(t, quantile(t, 0.37)) == doctest::Approx(0.37).epsilon(1e-10));
}

TEST_CASE("sf/hrf/reverse_hrf identities") {
    EgnhParams t(2, 2, 1, 2);
    for (double x : {0.1, 0.5, 1.0, 3.0}) {
        CHECK(sf(t, x) + cdf(t, x) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(hrf(t, x) == doctest::Approx(pdf(t, x) / sf(t, x)).epsilon(1e-12));
        CHECK(reverse_hrf(t, x) == doctest::Approx(pdf(t, x) / cdf(t, x)).epsilon(1e-12));
    }
    // constant hazard alpha*a when beta = b = 1
    EgnhParams c(2.5, 1, 3, 1);
    for (double x : {0.01, 1.0, 10.0, 100.0})
        CHECK(hrf(c, x) == doctest::Approx(2.5 * 3.0).epsilon(1e-12));
    // survives where sf underflows
    CHECK(hrf(EgnhParams(1, 1, 1, 1), 800.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quantile: closed forms and round trips") {
    for (double a : {0.5, 2.0}) {
        EgnhParams e(1, 1, a, 1);
        for (double p : {0.1, 0.5, 0.9})
            CHECK(quantile(e, p) == doctest::Approx(-std::log1p(-p) / a).epsilon(1e-13));
    }
    CHECK(quantile(EgnhParams(1, 1, 1, 1), 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    EgnhParams hard(1.8e-3, 2.83e-1, 1.75e-3, 47.066);
    double med = quantile(hard, 0.5);
    CHECK(cdf(hard, med) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(med == doctest::Approx(bisect_quantile(hard, 0.5)).epsilon(1e-9));

    CHECK_THROWS_AS(quantile(hard, 0.0), std::domain_error);
    CHECK_THROWS_AS(quantile(hard, 1.0), std::domain_error);
}

TEST_CASE("quantile/cdf are inverse on a wide probability grid") {
    for (auto params : {EgnhParams(2, 1.5, 0.5, 2), EgnhParams(0.5, 0.28, 1.0, 0.8),
                        EgnhParams(1.8e-3, 2.83e-1, 1.75e-3, 47.066)}) {
        for (double p : {1e-6, 1e-3, 0.05, 0.37, 0.5, 0.8, 0.999, 1.0 - 1e-6}) {
            double q = quantile(params, p);
            CHECK(cdf(params, q) == doctest::Approx(p).epsilon(1e-9));
            CHECK(quantile(params, cdf(params, q)) == doctest::Approx(q).epsilon(1e-9));
        }
    }
}

TEST_CASE("cdf is nondecreasing on sorted random pairs") {
    EgnhParams t(0.7, 0.9, 1.3, 0.6);
    Xoshiro256 gen(7);
    for (int i = 0; i < 1000; ++i) {
        double x1 = gen.uniform01() * 20.0, x2 = gen.uniform01() * 20.0;
        if (x1 > x2) std::swap(x1, x2);
        CHECK(cdf(t, x1) <= cdf(t, x2));
    }
}

TEST_CASE("submodel reductions match independent densities pointwise") {
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(0.15 * i);

    for (double x : grid) {
        CHECK(pdf(EgnhParams(1, 2.2, 0.8, 1.4), x) ==
              doctest::Approx(enh_density(2.2, 0.8, 1.4, x)).epsilon(1e-12));
        CHECK(pdf(EgnhParams(1.7, 1, 0.8, 1.4), x) ==
              doctest::Approx(e2nh_density(1.7, 0.8, 1.4, x)).epsilon(1e-12));
        CHECK(pdf(EgnhParams(1, 1, 0.8, 1.4), x) ==
              doctest::Approx(nh_density(0.8, 1.4, x)).epsilon(1e-12));
        CHECK(pdf(EgnhParams(1, 2.2, 0.8, 1), x) ==
              doctest::Approx(ee_density(2.2, 0.8, x)).epsilon(1e-12));
        CHECK(pdf(EgnhParams(1, 1, 0.8, 1), x) ==
              doctest::Approx(0.8 * std::exp(-0.8 * x)).epsilon(1e-12));
    }
}

TEST_CASE("shape classification") {
    auto s1 = classify_shape(EgnhParams(3, 1, 0.5, 1));
    CHECK(s1.hazard_shape == HazardShape::Constant);

    auto s2 = classify_shape(EgnhParams(2, 3, 1, 2));
    CHECK(s2.hazard_shape == HazardShape::Increasing);
    CHECK(s2.density_log_shape == DensityLogShape::LogConcave);

    auto s3 = classify_shape(EgnhParams(2, 0.5, 1, 2));
    CHECK(s3.hazard_shape == HazardShape::Indeterminate);
    CHECK(s3.density_log_shape == DensityLogShape::Indeterminate);

    auto s4 = classify_shape(EgnhParams(1, 0.6, 1, 0.7));
    CHECK(s4.hazard_shape == HazardShape::Decreasing);
    CHECK(s4.density_log_shape == DensityLogShape::LogConvex);
}

TEST_CASE("numerical log-density curvature matches the classification") {
    auto second_log_deriv = [](const EgnhParams& t, double x) {
        double h = 1e-4 * x;
        return (log_pdf(t, x + h) - 2.0 * log_pdf(t, x) + log_pdf(t, x - h)) / (h * h);
    };
    EgnhParams concave(2, 3, 1, 2);
    EgnhParams convex(1, 0.6, 1, 0.7);
    for (double x : {0.3, 0.8, 1.5, 3.0}) {
        CHECK(second_log_deriv(concave, x) < 0.0);
        CHECK(second_log_deriv(convex, x) > 0.0);
    }
}

TEST_CASE("hrf monotonicity on a geometric grid matches the classification") {
    auto monotone = [](const EgnhParams& t, bool increasing) {
        double prev = hrf(t, 1e-3);
        for (int i = 1; i < 200; ++i) {
            double x = 1e-3 * std::pow(1.06, i);
            double h = hrf(t, x);
            if (increasing && h < prev) return false;
            if (!increasing && h > prev) return false;
            prev = h;
        }
        return true;
    };
    CHECK(monotone(EgnhParams(2, 3, 1, 2), true));
    CHECK(monotone(EgnhParams(0.8, 0.5, 1, 0.6), false));
}

TEST_CASE("Bowley skewness and Moors kurtosis") {
    // closed-form exponential quantiles: B = log(4/3)/log 3
    CHECK(bowley_skewness(EgnhParams(1, 1, 1, 1)) ==
          doctest::Approx(std::log(4.0 / 3.0) / std::log(3.0)).epsilon(1e-13));
    for (double alpha : {0.5, 1.0, 2.0, 5.0})
        for (double beta : {0.5, 1.0, 2.0, 5.0})
            for (double b : {0.5, 2.0}) {
                EgnhParams t(alpha, beta, 0.5, b);
                double B = bowley_skewness(t);
                CHECK(B > -1.0);
                CHECK(B < 1.0);
                CHECK(moors_kurtosis(t) > 0.0);
            }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(EgnhParams(0, 1, 1, 1), std::domain_error);
    CHECK_THROWS_AS(EgnhParams(1, -2, 1, 1), std::domain_error);
    CHECK_THROWS_AS(EgnhParams(1, 1, kInf, 1), std::domain_error);
    CHECK(EgnhParams(1, 1, 1, 1).identifiable() == false);
    CHECK(EgnhParams(1, 1, 1, 2).identifiable() == true);
}
