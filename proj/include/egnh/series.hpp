#ifndef EGNH_SERIES_HPP
#define EGNH_SERIES_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "egnh/params.hpp"
#include "egnh/quadrature.hpp"

namespace egnh {

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a series value and its quadrature oracle disagree beyond
// ten times the requested tolerance.
struct SeriesOracleMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncation controls shared by every infinite-series evaluation.
// Summation stops at whichever of (cap, tolerance) fires first; the
// tolerance test is |term| < abs_tol + rel_tol * |partial sum| for three
// consecutive terms (exact zeros from integer parameters count).
struct SeriesPolicy {
    std::size_t max_terms = 200000;
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
};

struct Truncation {
    bool converged = false;   // tolerance reached before the cap
    std::size_t terms = 0;    // terms actually summed
    double tail_bound = 0.0;  // last-term magnitude, inflated by an
                              // algebraic-decay estimate when capped;
                              // +inf when the tail looks non-summable
};

struct SeriesResult {
    double value = 0.0;
    Truncation trunc;
};

// Series value alongside its independent quadrature oracle.
struct CheckedResult {
    double value = 0.0;       // the series value
    Truncation trunc;
    double oracle = 0.0;      // quadrature evaluation of the same quantity
    double discrepancy = 0.0; // |value - oracle|
};

// Mixture-representation coefficients: F = sum_j w_j G^j and
// f = sum_j u_j h_{j+1} with u_j = alpha beta t_j / (j+1), where G is the
// baseline cdf and h_p the exp-G(p) density of the baseline. For integer
// (alpha, beta) the inner sums terminate and the sequences are exact; for
// non-integer shape parameters the inner sums are truncated at the cap and
// the sequences are partial-expansion coefficients whose mixture converges
// to the density pointwise as both caps grow (see mixture_pdf).
struct ExpansionCoeffs {
    std::vector<double> w;
    std::vector<double> t;
    std::vector<double> u;
    Truncation w_report; // worst inner-sum truncation across j
    Truncation t_report;
};

ExpansionCoeffs expansion_coeffs(const EgnhParams& theta, const SeriesPolicy& pol = {});

// Baseline (NH) and exponentiated-baseline densities used by the mixture
// representation and the order-statistic expansion.
double nh_log_pdf(double a, double b, double x);
double nh_cdf(double a, double b, double x);
double enh_pdf(double power, double a, double b, double x);

// sum_{j < u.size()} u_j h_{j+1}(x), accumulated in extended precision;
// partial-coefficient reconstruction of the density.
double mixture_pdf(const EgnhParams& theta, const ExpansionCoeffs& coeffs, double x);

// r-th ordinary moment via the incomplete-gamma expansion. The sum is
// evaluated grouped by the absolutely convergent outer index (equivalent,
// term for term, to the coefficient triple sum but immune to the
// catastrophic cancellation of the alternating inner binomial sums).
SeriesResult ordinary_moment(const EgnhParams& theta, unsigned r, const SeriesPolicy& pol = {});

struct MomentSummary {
    std::vector<double> raw;      // mu'_1 .. mu'_rmax
    std::vector<double> central;  // mu_1 .. mu_rmax
    std::vector<double> cumulant; // kappa_1 .. kappa_rmax
    double skewness = 0.0;        // kappa_3 / kappa_2^(3/2)
    double kurtosis = 0.0;        // kappa_4 / kappa_2^2
};

MomentSummary central_moments_cumulants(const EgnhParams& theta, unsigned r_max,
                                        const SeriesPolicy& pol = {});

// First incomplete moment m_1(z) = E[X 1{X<=z}]; cross-validated against
// the quadrature oracle, discrepancy recorded in the result.
CheckedResult first_incomplete_moment(const EgnhParams& theta, double z,
                                      const SeriesPolicy& pol = {});

struct MeanDeviations {
    double about_mean = 0.0;
    double about_median = 0.0;
};

MeanDeviations mean_deviations(const EgnhParams& theta, const SeriesPolicy& pol = {});

struct BonferroniLorenz {
    double bonferroni = 0.0;
    double lorenz = 0.0;
};

BonferroniLorenz bonferroni_lorenz(const EgnhParams& theta, double pi,
                                   const SeriesPolicy& pol = {});

// Renyi entropy of order lambda (> 0, != 1); series value checked against
// the direct quadrature of f^lambda. Raises NonConvergence when the
// entropy integral itself diverges (lambda (beta - 1) <= -1).
CheckedResult renyi_entropy(const EgnhParams& theta, double lambda,
                            const SeriesPolicy& pol = {});

// Quadrature-only entropy (the oracle by itself).
double renyi_entropy_quadrature(const EgnhParams& theta, double lambda,
                                const QuadPolicy& pol = {});

// Density of the i-th order statistic of n, evaluated directly from the
// distribution kernels.
double order_statistic_pdf(const EgnhParams& theta, unsigned i, unsigned n, double x);

// The same density through the exp-G expansion coefficients s_l at the
// requested truncation (cross-check form; exact for integer parameters).
double order_statistic_pdf_series(const EgnhParams& theta, unsigned i, unsigned n, double x,
                                  const SeriesPolicy& pol = {});

} // namespace egnh

#endif
