#include "egnh/result_document.hpp"

#include <cstdint>
#include <cstdio>

namespace egnh {

namespace {

const char* stop_name(StopReason s) {
    switch (s) {
    case StopReason::Stationary: return "stationary";
    case StopReason::Stalled: return "stalled";
    case StopReason::IterationCap: return "iteration-cap";
    case StopReason::LineSearchFailed: return "line-search-failed";
    }
    return "unknown";
}

} // namespace

std::string serialize(const ResultDocument& doc) {
    nlohmann::json j{{"schema_version", doc.schema_version},
                     {"command", doc.command},
                     {"inputs_digest", doc.inputs_digest},
                     {"payload", doc.payload}};
    return j.dump(2);
}

ResultDocument parse_document(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ResultDocument doc;
    doc.schema_version = j.at("schema_version").get<std::string>();
    doc.command = j.at("command").get<std::string>();
    doc.inputs_digest = j.at("inputs_digest").get<std::string>();
    doc.payload = j.at("payload");
    return doc;
}

std::string digest_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json to_json(const FitResult& fit) {
    nlohmann::json j;
    j["model"] = fit.model;
    j["method"] = fit.method == FitMethod::ProfileLik ? "profile" : "full";
    j["param_names"] = fit.param_names;
    j["estimates"] = fit.estimates;
    j["loglik"] = fit.loglik;
    j["score_at_hat"] = fit.score_at_hat;
    j["converged"] = fit.converged;
    j["stop"] = stop_name(fit.stop);
    j["iterations"] = fit.iterations;
    j["identifiability_warning"] = fit.identifiability_warning;
    if (fit.has_std_errors) {
        j["std_errors"] = fit.std_errors;
        j["cov"] = fit.cov;
        nlohmann::json ci = nlohmann::json::array();
        for (const auto& c : fit.ci95) ci.push_back({c[0], c[1]});
        j["ci95"] = ci;
    }
    return j;
}

nlohmann::json to_json(const GofReport& rep) {
    return {{"w_star", rep.w_star},
            {"a_star", rep.a_star},
            {"w_star_transformed", rep.w_star_transformed},
            {"a_star_transformed", rep.a_star_transformed},
            {"ks", rep.ks},
            {"aic", rep.aic},
            {"caic", rep.caic},
            {"bic", rep.bic},
            {"hqic", rep.hqic},
            {"k", rep.k},
            {"n", rep.n},
            {"loglik", rep.loglik}};
}

nlohmann::json to_json(const SimResult& res, const SimDesign& design) {
    nlohmann::json j;
    j["theta0"] = {design.theta0.alpha, design.theta0.beta, design.theta0.a,
                   design.theta0.b};
    j["replications"] = design.replications;
    j["seed"] = design.seed;
    j["method"] = design.method == FitMethod::ProfileLik ? "profile" : "full";
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : res.cells) {
        cells.push_back({{"size", c.size},
                         {"bias", {c.bias[0], c.bias[1], c.bias[2], c.bias[3]}},
                         {"std_error",
                          {c.std_error[0], c.std_error[1], c.std_error[2], c.std_error[3]}},
                         {"included", c.included},
                         {"failed", c.failed},
                         {"non_stationary", c.non_stationary}});
    }
    j["cells"] = cells;
    return j;
}

} // namespace egnh
