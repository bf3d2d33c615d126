// Command-line toolkit over the egnh library: pointwise evaluation,
// dataset fitting with goodness-of-fit comparison, series/quadrature
// analytics, and the Monte Carlo consistency study.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 non-convergence.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egnh/datasets.hpp"
#include "egnh/dist.hpp"
#include "egnh/gof.hpp"
#include "egnh/inference.hpp"
#include "egnh/quadrature.hpp"
#include "egnh/result_document.hpp"
#include "egnh/rng.hpp"
#include "egnh/series.hpp"
#include "egnh/sim.hpp"

namespace {

using namespace egnh;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNoConvergence = 3;

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ThetaFlags {
    double alpha = 1.0, beta = 1.0, a = 1.0, b = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "shape alpha > 0")->check(CLI::PositiveNumber);
        cmd->add_option("--beta", beta, "shape beta > 0")->check(CLI::PositiveNumber);
        cmd->add_option("--a", a, "rate-like scale a > 0 (1/time)")->check(CLI::PositiveNumber);
        cmd->add_option("--b", b, "power shape b > 0")->check(CLI::PositiveNumber);
    }
    EgnhParams params() const { return EgnhParams(alpha, beta, a, b); }
};

// "lo:hi:n" inclusive grid
std::vector<double> parse_grid(const std::string& text) {
    double lo, hi;
    int n;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
        throw CLI::ValidationError("grid", "expected lo:hi:n with n >= 1, got '" + text + "'");
    std::vector<double> out;
    if (n == 1) return {lo};
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / double(n - 1));
    return out;
}

std::vector<double> read_data_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue; // blank or comment-only line
        std::string extra;
        if (ls >> extra)
            throw DataError(path + ":" + std::to_string(lineno) + ": expected one value per line");
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            if (!(v > 0.0))
                throw DataError(path + ":" + std::to_string(lineno) +
                                ": nonpositive value " + tok);
            values.push_back(v);
        } catch (const DataError&) {
            throw;
        } catch (const std::exception&) {
            throw DataError(path + ":" + std::to_string(lineno) + ": not a number: '" + tok + "'");
        }
    }
    if (values.empty()) throw DataError(path + ": no observations");
    return values;
}

Sample load_sample(const std::string& data_name, const std::string& file_path) {
    if (!data_name.empty()) {
        auto s = datasets::by_name(data_name);
        if (!s) throw DataError("unknown fixture '" + data_name + "' (try aarset or kevlar)");
        return *s;
    }
    return Sample(read_data_file(file_path), file_path);
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

struct Output {
    std::string format = "table"; // or "json"
    std::string command;
    std::string digest_input;

    void emit_table(const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) const {
        std::vector<std::size_t> width(header.size());
        for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
        for (const auto& r : rows)
            for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t c = 0; c < r.size(); ++c)
                std::printf("%-*s%s", int(width[c]), r[c].c_str(),
                            c + 1 == r.size() ? "\n" : "  ");
        };
        line(header);
        for (const auto& r : rows) line(r);
    }

    void emit(const nlohmann::json& payload, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) const {
        if (format == "json") {
            ResultDocument doc;
            doc.command = command;
            doc.inputs_digest = digest_hex(digest_input);
            doc.payload = payload;
            std::printf("%s\n", serialize(doc).c_str());
        } else {
            emit_table(header, rows);
        }
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// ---------------------------------------------------------------- eval

int cmd_eval(const std::string& fn, const ThetaFlags& tf, std::vector<double> xs,
             const std::string& x_grid, std::vector<double> ps, const std::string& p_grid,
             const Output& out) {
    EgnhParams t = tf.params();
    bool wants_p = fn == "quantile";
    if (!x_grid.empty()) {
        auto g = parse_grid(x_grid);
        xs.insert(xs.end(), g.begin(), g.end());
    }
    if (!p_grid.empty()) {
        auto g = parse_grid(p_grid);
        ps.insert(ps.end(), g.begin(), g.end());
    }
    const auto& args = wants_p ? ps : xs;
    if (args.empty()) {
        std::fprintf(stderr, "eval %s: no evaluation points (use --%s or --%s-grid)\n",
                     fn.c_str(), wants_p ? "p" : "x", wants_p ? "p" : "x");
        return kExitUsage;
    }
    std::vector<std::vector<std::string>> rows;
    nlohmann::json jrows = nlohmann::json::array();
    for (double v : args) {
        double y;
        if (fn == "pdf") y = pdf(t, v);
        else if (fn == "cdf") y = cdf(t, v);
        else if (fn == "sf") y = sf(t, v);
        else if (fn == "hrf") y = hrf(t, v);
        else y = quantile(t, v);
        rows.push_back({fmt(v), fmt(y)});
        jrows.push_back({{wants_p ? "p" : "x", v}, {"value", y}});
    }
    out.emit({{"function", fn}, {"theta", {t.alpha, t.beta, t.a, t.b}}, {"rows", jrows}},
             {wants_p ? "p" : "x", fn}, rows);
    return kExitOk;
}

// ----------------------------------------------------------------- fit

FitResult fit_by_name(const Sample& s, const std::string& model, FitMethod method) {
    if (model == "egnh") return fit(s, method);
    if (model == "nh") return fit_submodel(s, SubModel::NH);
    if (model == "enh") return fit_submodel(s, SubModel::ENH);
    if (model == "ee") return fit_submodel(s, SubModel::EE);
    if (model == "exponential") return fit_submodel(s, SubModel::Exponential);
    if (model == "weibull") return fit_submodel(s, SubModel::Weibull);
    throw CLI::ValidationError("--model", "unknown model '" + model + "'");
}

void fit_rows(const FitResult& f, const GofReport& g,
              std::vector<std::vector<std::string>>& rows) {
    for (std::size_t i = 0; i < f.estimates.size(); ++i) {
        std::string se = f.has_std_errors ? fmt(f.std_errors[i]) : "-";
        std::string ci = f.has_std_errors
                             ? "[" + fmt(f.ci95[i][0]) + ", " + fmt(f.ci95[i][1]) + "]"
                             : "-";
        rows.push_back({f.model, f.param_names[i], fmt(f.estimates[i]), se, ci});
    }
    rows.push_back({f.model, "loglik", fmt(f.loglik), "", ""});
    rows.push_back({f.model, "W*", fmt(g.w_star_transformed),
                    "plain:", fmt(g.w_star)});
    rows.push_back({f.model, "A*", fmt(g.a_star_transformed),
                    "plain:", fmt(g.a_star)});
    rows.push_back({f.model, "KS", fmt(g.ks), "", ""});
    rows.push_back({f.model, "AIC", fmt(g.aic), "", ""});
    rows.push_back({f.model, "CAIC", fmt(g.caic), "", ""});
    rows.push_back({f.model, "BIC", fmt(g.bic), "", ""});
    rows.push_back({f.model, "HQIC", fmt(g.hqic), "", ""});
    rows.push_back({f.model, "converged", f.converged ? "yes" : "no", "", ""});
}

std::string digest_values(const Sample& s) {
    std::string bytes;
    bytes.reserve(s.size() * sizeof(double));
    for (double v : s.values())
        bytes.append(reinterpret_cast<const char*>(&v), sizeof v);
    return bytes;
}

int cmd_fit(const std::string& data_name, const std::string& file_path,
            const std::string& model, const std::string& method_name, bool compare,
            const Output& out_flags) {
    Sample s = load_sample(data_name, file_path);
    Output out = out_flags;
    out.digest_input += digest_values(s);
    FitMethod method = method_name == "full" ? FitMethod::FullLik : FitMethod::ProfileLik;

    std::vector<std::string> models =
        compare ? std::vector<std::string>{"egnh", "enh", "nh", "ee", "exponential", "weibull"}
                : std::vector<std::string>{model};

    nlohmann::json jmodels = nlohmann::json::array();
    std::vector<std::pair<double, std::vector<std::vector<std::string>>>> blocks;
    for (const auto& m : models) {
        FitResult f = fit_by_name(s, m, method);
        GofReport g = gof(f, s);
        nlohmann::json jf = to_json(f);
        jf["gof"] = to_json(g);
        jmodels.push_back(jf);
        std::vector<std::vector<std::string>> rows;
        fit_rows(f, g, rows);
        blocks.push_back({g.w_star_transformed, std::move(rows)});
        if (!f.converged)
            std::fprintf(stderr, "note: %s optimizer stopped on a flat likelihood "
                                 "region (converged flag false)\n", m.c_str());
        if (f.identifiability_warning)
            std::fprintf(stderr, "warning: b is numerically 1; the four-parameter "
                                 "model is not identifiable there\n");
    }
    // Table-style ranking: best (smallest) W* first
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::vector<std::string>> rows;
    for (auto& b : blocks)
        for (auto& r : b.second) rows.push_back(std::move(r));

    out.emit({{"sample", s.label()}, {"n", s.size()}, {"models", jmodels}},
             {"model", "quantity", "value", "", ""}, rows);
    return kExitOk;
}

// ------------------------------------------------------------- analyze

int cmd_analyze_moments(const ThetaFlags& tf, unsigned r_max, const std::string& engine,
                        const Output& out) {
    EgnhParams t = tf.params();
    // Very large b makes the incomplete-gamma series ill-conditioned; the
    // quadrature oracle is the default there, the series on request.
    std::string chosen = engine;
    if (engine == "auto") chosen = t.b > 20.0 ? "quadrature" : "series";
    if (chosen == "series" && t.b > 20.0)
        std::fprintf(stderr, "warning: series moments with b = %g may be ill-conditioned; "
                             "quadrature recommended\n", t.b);

    std::vector<std::vector<std::string>> rows;
    nlohmann::json jrows = nlohmann::json::array();
    for (unsigned r = 1; r <= r_max; ++r) {
        double v;
        if (chosen == "series") v = ordinary_moment(t, r).value;
        else v = quadrature_moment(t, r).value;
        rows.push_back({"mu'_" + std::to_string(r), fmt(v)});
        jrows.push_back({{"r", r}, {"value", v}});
    }
    if (r_max >= 4 && chosen == "series") {
        MomentSummary ms = central_moments_cumulants(t, r_max);
        rows.push_back({"variance", fmt(ms.central[1])});
        rows.push_back({"skewness", fmt(ms.skewness)});
        rows.push_back({"kurtosis", fmt(ms.kurtosis)});
        jrows.push_back({{"variance", ms.central[1]},
                         {"skewness", ms.skewness},
                         {"kurtosis", ms.kurtosis}});
    }
    out.emit({{"engine", chosen}, {"theta", {t.alpha, t.beta, t.a, t.b}}, {"rows", jrows}},
             {"moment", "value"}, rows);
    return kExitOk;
}

int cmd_analyze_entropy(const ThetaFlags& tf, const std::string& lambda_grid, double lambda_one,
                        const Output& out) {
    EgnhParams t = tf.params();
    std::vector<double> lambdas;
    if (!lambda_grid.empty()) lambdas = parse_grid(lambda_grid);
    else lambdas.push_back(lambda_one);

    std::vector<std::vector<std::string>> rows;
    nlohmann::json jrows = nlohmann::json::array();
    for (double l : lambdas) {
        if (l <= 0.0 || l == 1.0) continue;
        try {
            CheckedResult r = renyi_entropy(t, l);
            rows.push_back({fmt(l), fmt(r.value), fmt(r.discrepancy)});
            jrows.push_back({{"lambda", l}, {"value", r.value}, {"oracle_gap", r.discrepancy}});
        } catch (const NonConvergence& e) {
            rows.push_back({fmt(l), "divergent", "-"});
            jrows.push_back({{"lambda", l}, {"error", e.what()}});
        }
    }
    out.emit({{"theta", {t.alpha, t.beta, t.a, t.b}}, {"rows", jrows}},
             {"lambda", "renyi_entropy", "oracle_gap"}, rows);
    return kExitOk;
}

int cmd_analyze_measures(const ThetaFlags& tf, const Output& out) {
    EgnhParams t = tf.params();
    std::vector<std::vector<std::string>> rows;
    nlohmann::json j;
    rows.push_back({"median", fmt(quantile(t, 0.5))});
    rows.push_back({"bowley_skewness", fmt(bowley_skewness(t))});
    rows.push_back({"moors_kurtosis", fmt(moors_kurtosis(t))});
    j["median"] = quantile(t, 0.5);
    j["bowley_skewness"] = bowley_skewness(t);
    j["moors_kurtosis"] = moors_kurtosis(t);
    try {
        MeanDeviations d;
        if (t.b > 20.0) {
            // slow series regime: assemble the deviations from quadrature
            double mean = quadrature_moment(t, 1).value;
            double median = quantile(t, 0.5);
            d.about_mean = 2.0 * mean * cdf(t, mean) -
                           2.0 * quadrature_incomplete_first_moment(t, mean).value;
            d.about_median =
                mean - 2.0 * quadrature_incomplete_first_moment(t, median).value;
        } else {
            d = mean_deviations(t);
        }
        rows.push_back({"mean_deviation_mean", fmt(d.about_mean)});
        rows.push_back({"mean_deviation_median", fmt(d.about_median)});
        j["mean_deviation_mean"] = d.about_mean;
        j["mean_deviation_median"] = d.about_median;
    } catch (const NonConvergence& e) {
        rows.push_back({"mean_deviations", std::string("divergent: ") + e.what()});
        j["mean_deviations_error"] = e.what();
    }
    out.emit(j, {"measure", "value"}, rows);
    return kExitOk;
}

int cmd_analyze_bl(const ThetaFlags& tf, const std::string& pi_grid, const Output& out) {
    EgnhParams t = tf.params();
    std::vector<std::vector<std::string>> rows;
    nlohmann::json jrows = nlohmann::json::array();
    for (double pi : parse_grid(pi_grid)) {
        if (pi <= 0.0 || pi >= 1.0) continue;
        BonferroniLorenz bl = bonferroni_lorenz(t, pi);
        rows.push_back({fmt(pi), fmt(bl.bonferroni), fmt(bl.lorenz)});
        jrows.push_back({{"pi", pi}, {"bonferroni", bl.bonferroni}, {"lorenz", bl.lorenz}});
    }
    out.emit({{"rows", jrows}}, {"pi", "bonferroni", "lorenz"}, rows);
    return kExitOk;
}

int cmd_analyze_density(const ThetaFlags& tf, const std::string& x_grid, const Output& out) {
    EgnhParams t = tf.params();
    std::vector<std::vector<std::string>> rows;
    nlohmann::json jrows = nlohmann::json::array();
    for (double x : parse_grid(x_grid)) {
        double f = pdf(t, std::max(x, 0.0));
        rows.push_back({fmt(x), fmt(f)});
        jrows.push_back({{"x", x}, {"pdf", f}});
    }
    out.emit({{"rows", jrows}}, {"x", "pdf"}, rows);
    return kExitOk;
}

int cmd_analyze_ecdf(const std::string& data_name, const std::string& file_path,
                     const ThetaFlags& tf, const Output& out_flags) {
    Sample s = load_sample(data_name, file_path);
    Output out = out_flags;
    out.digest_input += digest_values(s);
    EgnhParams t = tf.params();
    const auto& xs = s.sorted();
    std::vector<std::vector<std::string>> rows;
    nlohmann::json jrows = nlohmann::json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double e = double(i + 1) / double(xs.size());
        double F = cdf(t, xs[i]);
        rows.push_back({fmt(xs[i]), fmt(e), fmt(F)});
        jrows.push_back({{"x", xs[i]}, {"ecdf", e}, {"cdf", F}});
    }
    out.emit({{"sample", s.label()}, {"rows", jrows}}, {"x", "ecdf", "model_cdf"}, rows);
    return kExitOk;
}

int cmd_analyze_ttt(const std::string& data_name, const std::string& file_path,
                    const Output& out_flags) {
    Sample s = load_sample(data_name, file_path);
    Output out = out_flags;
    out.digest_input += digest_values(s);
    auto ttt = ttt_plot_data(s);
    std::vector<std::vector<std::string>> rows;
    nlohmann::json jrows = nlohmann::json::array();
    for (auto [p, g] : ttt) {
        rows.push_back({fmt(p), fmt(g)});
        jrows.push_back({{"r_over_n", p}, {"ttt", g}});
    }
    out.emit({{"sample", s.label()}, {"rows", jrows}}, {"r/n", "G(r/n)"}, rows);
    return kExitOk;
}

int cmd_analyze_bm_surface(const std::string& alpha_grid, const std::string& beta_grid,
                           double a, double b, const Output& out) {
    std::vector<std::vector<std::string>> rows;
    nlohmann::json jrows = nlohmann::json::array();
    for (double alpha : parse_grid(alpha_grid))
        for (double beta : parse_grid(beta_grid)) {
            EgnhParams t(alpha, beta, a, b);
            double B = bowley_skewness(t), M = moors_kurtosis(t);
            rows.push_back({fmt(alpha), fmt(beta), fmt(B), fmt(M)});
            jrows.push_back({{"alpha", alpha}, {"beta", beta}, {"bowley", B}, {"moors", M}});
        }
    out.emit({{"a", a}, {"b", b}, {"rows", jrows}},
             {"alpha", "beta", "bowley", "moors"}, rows);
    return kExitOk;
}

int cmd_analyze_order_stat(const ThetaFlags& tf, unsigned i, unsigned n,
                           const std::string& x_grid, const Output& out) {
    EgnhParams t = tf.params();
    std::vector<std::vector<std::string>> rows;
    nlohmann::json jrows = nlohmann::json::array();
    for (double x : parse_grid(x_grid)) {
        double f = order_statistic_pdf(t, i, n, x);
        rows.push_back({fmt(x), fmt(f)});
        jrows.push_back({{"x", x}, {"pdf", f}});
    }
    out.emit({{"i", i}, {"n", n}, {"rows", jrows}}, {"x", "order_stat_pdf"}, rows);
    return kExitOk;
}

// ------------------------------------------------------------ simulate

int cmd_simulate(std::vector<double> theta0, std::vector<std::size_t> sizes,
                 std::size_t reps, std::uint64_t seed, const std::string& method_name,
                 std::size_t threads, const Output& out) {
    SimDesign d = default_sim_design();
    if (!theta0.empty()) {
        if (theta0.size() != 4) {
            std::fprintf(stderr, "--theta0 needs exactly four values\n");
            return kExitUsage;
        }
        d.theta0 = EgnhParams(theta0[0], theta0[1], theta0[2], theta0[3]);
    }
    if (!sizes.empty()) {
        std::sort(sizes.begin(), sizes.end());
        d.sizes.assign(sizes.begin(), sizes.end());
    }
    d.replications = reps;
    d.seed = seed;
    d.method = method_name == "full" ? FitMethod::FullLik : FitMethod::ProfileLik;
    d.threads = threads;

    SimResult r = run_sim(d);
    std::vector<std::vector<std::string>> rows;
    const char* pname[4] = {"alpha", "beta", "a", "b"};
    for (const auto& c : r.cells)
        for (int p = 0; p < 4; ++p)
            rows.push_back({std::to_string(c.size), pname[p], fmt(c.bias[p]),
                            fmt(c.std_error[p]), std::to_string(c.included),
                            std::to_string(c.failed)});
    out.emit(to_json(r, d), {"n", "param", "bias", "std_error", "included", "failed"}, rows);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponentiated generalized Nadarajah-Haghighi lifetime toolkit"};
    app.require_subcommand(1);

    Output out;
    out.command = join_args(argc, argv);
    out.digest_input = out.command;
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate a distribution function pointwise");
    eval->require_subcommand(1);
    eval->fallthrough();
    ThetaFlags eval_theta;
    std::vector<double> eval_x, eval_p;
    std::string eval_xgrid, eval_pgrid, eval_fn;
    for (const char* fn : {"pdf", "cdf", "sf", "hrf", "quantile"}) {
        auto* sub = eval->add_subcommand(fn);
        sub->fallthrough();
        eval_theta.attach(sub);
        sub->add_option("--x", eval_x, "evaluation points");
        sub->add_option("--x-grid", eval_xgrid, "grid lo:hi:n");
        sub->add_option("--p", eval_p, "probabilities (quantile)");
        sub->add_option("--p-grid", eval_pgrid, "grid lo:hi:n");
        sub->callback([&, fn] { eval_fn = fn; });
    }

    // fit
    auto* fitc = app.add_subcommand("fit", "maximum-likelihood fit with goodness of fit");
    fitc->fallthrough();
    std::string fit_data, fit_file, fit_model = "egnh", fit_method = "profile";
    bool fit_compare = false;
    fitc->add_option("--data", fit_data, "built-in dataset (aarset, kevlar)");
    fitc->add_option("--file", fit_file, "one positive value per line, # comments");
    fitc->add_option("--model", fit_model)
        ->check(CLI::IsMember({"egnh", "nh", "enh", "ee", "exponential", "weibull"}));
    fitc->add_option("--method", fit_method)->check(CLI::IsMember({"profile", "full"}));
    fitc->add_flag("--compare", fit_compare, "fit all baseline models, ranked table");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "series/quadrature analytics");
    analyze->require_subcommand(1);
    analyze->fallthrough();
    ThetaFlags an_theta;
    unsigned an_rmax = 4;
    std::string an_engine = "auto";
    auto* an_moments = analyze->add_subcommand("moments", "ordinary and central moments");
    an_moments->fallthrough();
    an_theta.attach(an_moments);
    an_moments->add_option("--r", an_rmax, "highest moment order")->check(CLI::PositiveNumber);
    an_moments->add_option("--engine", an_engine)
        ->check(CLI::IsMember({"auto", "series", "quadrature"}));

    std::string an_lgrid;
    double an_lambda = 2.0;
    auto* an_entropy = analyze->add_subcommand("entropy", "Renyi entropy vs lambda");
    an_entropy->fallthrough();
    an_theta.attach(an_entropy);
    an_entropy->add_option("--lambda", an_lambda);
    an_entropy->add_option("--lambda-grid", an_lgrid, "grid lo:hi:n");

    auto* an_measures = analyze->add_subcommand("measures",
                                                "median, quantile shape measures, mean deviations");
    an_measures->fallthrough();
    an_theta.attach(an_measures);

    std::string an_pigrid = "0.05:0.95:19";
    auto* an_bl = analyze->add_subcommand("bonferroni-lorenz", "B(pi), L(pi) curves");
    an_bl->fallthrough();
    an_theta.attach(an_bl);
    an_bl->add_option("--pi-grid", an_pigrid, "grid lo:hi:n");

    std::string an_xgrid = "0.01:5:100";
    auto* an_density = analyze->add_subcommand("density", "plot-ready density curve");
    an_density->fallthrough();
    an_theta.attach(an_density);
    an_density->add_option("--x-grid", an_xgrid, "grid lo:hi:n");

    std::string an_data, an_file;
    auto* an_ecdf = analyze->add_subcommand("ecdf", "empirical vs model cdf overlay");
    an_ecdf->fallthrough();
    an_theta.attach(an_ecdf);
    an_ecdf->add_option("--data", an_data);
    an_ecdf->add_option("--file", an_file);

    auto* an_ttt = analyze->add_subcommand("ttt", "scaled total time on test transform");
    an_ttt->fallthrough();
    an_ttt->add_option("--data", an_data);
    an_ttt->add_option("--file", an_file);

    std::string an_agrid = "0.5:5:10", an_bgrid = "0.5:5:10";
    double an_sa = 0.5, an_sb = 2.0;
    auto* an_bm = analyze->add_subcommand("bm-surface", "Bowley/Moors over (alpha, beta)");
    an_bm->fallthrough();
    an_bm->add_option("--alpha-grid", an_agrid);
    an_bm->add_option("--beta-grid", an_bgrid);
    an_bm->add_option("--a", an_sa)->check(CLI::PositiveNumber);
    an_bm->add_option("--b", an_sb)->check(CLI::PositiveNumber);

    unsigned an_i = 1, an_n = 1;
    auto* an_os = analyze->add_subcommand("order-stat", "order statistic density curve");
    an_os->fallthrough();
    an_theta.attach(an_os);
    an_os->add_option("--i", an_i)->check(CLI::PositiveNumber);
    an_os->add_option("--n", an_n)->check(CLI::PositiveNumber);
    an_os->add_option("--x-grid", an_xgrid, "grid lo:hi:n");

    // simulate
    auto* simc = app.add_subcommand("simulate", "Monte Carlo bias/std-error study");
    simc->fallthrough();
    std::vector<double> sim_theta0;
    std::vector<std::size_t> sim_sizes;
    std::size_t sim_reps = 1000, sim_threads = 0;
    std::uint64_t sim_seed = 0;
    std::string sim_method = "profile";
    simc->add_option("--theta0", sim_theta0, "alpha beta a b (default: first application)")
        ->expected(4);
    simc->add_option("--sizes", sim_sizes, "sample sizes (default 10,15,...,250)");
    simc->add_option("--reps", sim_reps, "replications per size")->check(CLI::PositiveNumber);
    simc->add_option("--seed", sim_seed, "stream seed");
    simc->add_option("--method", sim_method)->check(CLI::IsMember({"profile", "full"}));
    simc->add_option("--threads", sim_threads, "worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed())
            return cmd_eval(eval_fn, eval_theta, eval_x, eval_xgrid, eval_p, eval_pgrid, out);
        if (fitc->parsed()) {
            if (fit_data.empty() == fit_file.empty()) {
                std::fprintf(stderr, "fit: give exactly one of --data or --file\n");
                return kExitUsage;
            }
            return cmd_fit(fit_data, fit_file, fit_model, fit_method, fit_compare, out);
        }
        if (analyze->parsed()) {
            if (an_moments->parsed()) return cmd_analyze_moments(an_theta, an_rmax, an_engine, out);
            if (an_entropy->parsed()) return cmd_analyze_entropy(an_theta, an_lgrid, an_lambda, out);
            if (an_measures->parsed()) return cmd_analyze_measures(an_theta, out);
            if (an_bl->parsed()) return cmd_analyze_bl(an_theta, an_pigrid, out);
            if (an_density->parsed()) return cmd_analyze_density(an_theta, an_xgrid, out);
            if (an_ecdf->parsed()) return cmd_analyze_ecdf(an_data, an_file, an_theta, out);
            if (an_ttt->parsed()) {
                if (an_data.empty() == an_file.empty()) {
                    std::fprintf(stderr, "analyze ttt: give exactly one of --data or --file\n");
                    return kExitUsage;
                }
                return cmd_analyze_ttt(an_data, an_file, out);
            }
            if (an_bm->parsed()) return cmd_analyze_bm_surface(an_agrid, an_bgrid, an_sa, an_sb, out);
            if (an_os->parsed()) return cmd_analyze_order_stat(an_theta, an_i, an_n, an_xgrid, out);
        }
        if (simc->parsed())
            return cmd_simulate(sim_theta0, sim_sizes, sim_reps, sim_seed, sim_method,
                                sim_threads, out);
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const NoConvergence& e) {
        std::fprintf(stderr, "non-convergence: %s\n", e.what());
        return kExitNoConvergence;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "usage: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    }
    return kExitUsage;
}
