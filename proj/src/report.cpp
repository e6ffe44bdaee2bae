#include "report.hpp"

#include <map>

namespace cgf {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("expected [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

json record_to_json(const CheckRecord& rec) {
    json j;
    j["label"] = rec.label;
    json z = json::array();
    for (const Complex& c : rec.z) z.push_back(complex_to_json(c));
    j["z"] = z;
    j["w"] = rec.w ? complex_to_json(*rec.w) : json(nullptr);
    j["k"] = rec.k;
    j["component"] = rec.component;
    j["lhs"] = complex_to_json(rec.lhs);
    j["rhs"] = complex_to_json(rec.rhs);
    j["abs_residual"] = rec.abs_residual;
    j["tolerance"] = rec.tolerance;
    j["pass"] = rec.pass;
    return j;
}

CheckRecord record_from_json(const json& j) {
    CheckRecord rec;
    rec.label = j.at("label").get<std::string>();
    for (const json& c : j.at("z")) rec.z.push_back(complex_from_json(c));
    if (!j.at("w").is_null()) rec.w = complex_from_json(j.at("w"));
    rec.k = j.at("k").get<int>();
    rec.component = j.at("component").get<int>();
    rec.lhs = complex_from_json(j.at("lhs"));
    rec.rhs = complex_from_json(j.at("rhs"));
    rec.abs_residual = j.at("abs_residual").get<double>();
    rec.tolerance = j.at("tolerance").get<double>();
    rec.pass = j.at("pass").get<bool>();
    if (rec.pass != (rec.abs_residual <= rec.tolerance))
        throw ParseError("inconsistent record: pass flag contradicts residual vs tolerance");
    return rec;
}

json report_to_json(const VerificationReport& rep) {
    json j;
    j["check"] = check_kind_name(rep.kind);
    json records = json::array();
    for (const CheckRecord& rec : rep.records) records.push_back(record_to_json(rec));
    j["records"] = records;
    j["aggregate"] = {{"max_residual", rep.max_residual},
                      {"all_pass", rep.all_pass},
                      {"wall_time_s", rep.wall_time_s}};
    return j;
}

VerificationReport report_from_json(const json& j) {
    VerificationReport rep;
    rep.kind = check_kind_from_name(j.at("check").get<std::string>());
    for (const json& r : j.at("records")) rep.add(record_from_json(r));
    rep.wall_time_s = j.at("aggregate").at("wall_time_s").get<double>();
    if (rep.all_pass != j.at("aggregate").at("all_pass").get<bool>())
        throw ParseError("inconsistent report aggregate");
    return rep;
}

json make_document(const std::vector<VerificationReport>& reports, const json& manifest) {
    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["manifest"] = manifest;
    json checks = json::array();
    for (const VerificationReport& rep : reports) checks.push_back(report_to_json(rep));
    doc["checks"] = checks;
    return doc;
}

json merge_documents(const std::vector<json>& docs) {
    std::map<std::string, VerificationReport> merged;  // keyed by kind name, sorted
    json manifests = json::array();
    for (const json& doc : docs) {
        if (!doc.is_object() || !doc.contains("schema_version") || !doc.contains("checks"))
            throw ParseError("not a report document");
        if (doc.at("schema_version").get<int>() != kReportSchemaVersion)
            throw ParseError("unsupported report schema version");
        if (doc.contains("manifest") && !doc.at("manifest").is_null())
            manifests.push_back(doc.at("manifest"));
        for (const json& block : doc.at("checks")) {
            const VerificationReport rep = report_from_json(block);
            const std::string name = check_kind_name(rep.kind);
            auto [it, fresh] = merged.try_emplace(name);
            if (fresh) it->second.kind = rep.kind;
            for (const CheckRecord& rec : rep.records) it->second.add(rec);
            it->second.wall_time_s += rep.wall_time_s;
        }
    }
    std::vector<VerificationReport> out;
    for (auto& [name, rep] : merged) out.push_back(std::move(rep));
    json doc = make_document(out, json(nullptr));
    doc["manifest"] = {{"merged_from", manifests}};
    return doc;
}

CheckSpec check_spec_from_json(const json& j) {
    CheckSpec spec;
    if (j.is_null()) return spec;
    if (!j.is_object()) throw ParseError("check options must be a JSON object");
    if (j.contains("k_min")) spec.k_min = j.at("k_min").get<int>();
    if (j.contains("k_max")) spec.k_max = j.at("k_max").get<int>();
    if (j.contains("limits")) spec.limits = j.at("limits").get<Index>();
    if (j.contains("quad_nodes")) spec.quad_nodes = j.at("quad_nodes").get<int>();
    if (j.contains("K")) spec.K = j.at("K").get<int>();
    if (j.contains("n_max")) spec.n_max = j.at("n_max").get<long>();
    if (j.contains("k_bound")) spec.k_bound = j.at("k_bound").get<int>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<unsigned long long>();
    if (j.contains("tol_scale")) spec.tol.scale = j.at("tol_scale").get<double>();
    if (j.contains("tol_floor")) spec.tol.absolute_floor = j.at("tol_floor").get<double>();
    if (j.contains("tol_relative")) spec.tol.relative_factor = j.at("tol_relative").get<double>();
    if (j.contains("tol_tail_multiplier"))
        spec.tol.tail_multiplier = j.at("tol_tail_multiplier").get<double>();
    if (j.contains("z_points"))
        for (const json& zp : j.at("z_points")) {
            CVec z;
            for (const json& c : zp) z.push_back(complex_from_json(c));
            spec.z_points.push_back(std::move(z));
        }
    if (j.contains("w_points"))
        for (const json& wp : j.at("w_points")) spec.w_points.push_back(complex_from_json(wp));
    return spec;
}

}  // namespace cgf
