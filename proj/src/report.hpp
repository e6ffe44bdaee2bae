#pragma once

#include <json.hpp>

#include "verify.hpp"

namespace cgf {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json record_to_json(const CheckRecord& rec);
CheckRecord record_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const VerificationReport& rep);
VerificationReport report_from_json(const nlohmann::json& j);

/// Self-describing report document: schema version, manifest, check blocks.
nlohmann::json make_document(const std::vector<VerificationReport>& reports,
                             const nlohmann::json& manifest);

/// Union of the records of several documents, one block per check kind, with
/// aggregates recomputed. Throws ParseError on malformed or inconsistent input
/// (a record whose stored pass flag contradicts residual vs tolerance).
nlohmann::json merge_documents(const std::vector<nlohmann::json>& docs);

/// Parses a CheckSpec from a JSON object; missing keys keep defaults.
CheckSpec check_spec_from_json(const nlohmann::json& j);

}  // namespace cgf
