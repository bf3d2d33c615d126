#ifndef EGNH_RESULT_DOCUMENT_HPP
#define EGNH_RESULT_DOCUMENT_HPP

#include <string>

#include <json.hpp>

#include "egnh/gof.hpp"
#include "egnh/inference.hpp"
#include "egnh/sim.hpp"

namespace egnh {

// Envelope for machine-readable CLI output. Payload values are emitted by
// nlohmann::json, whose double formatting is shortest-round-trip, so
// parse(serialize(doc)) reproduces the document bit for bit.
struct ResultDocument {
    std::string schema_version = "egnh/1";
    std::string command;
    std::string inputs_digest;
    nlohmann::json payload;

    bool operator==(const ResultDocument&) const = default;
};

std::string serialize(const ResultDocument& doc);
ResultDocument parse_document(const std::string& text);

// FNV-1a of the bytes that determine a command's result (flags + data).
std::string digest_hex(const std::string& bytes);

nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const GofReport& rep);
nlohmann::json to_json(const SimResult& res, const SimDesign& design);

} // namespace egnh

#endif
