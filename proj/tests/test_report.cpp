#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "presets.hpp"
#include "report.hpp"

using namespace cgf;

namespace {

CheckRecord sample_record(double residual, double tol) {
    CheckRecord rec;
    rec.label = "recurrence";
    rec.z = {Complex(0.3, 0.1)};
    rec.w = Complex(0.2, 0.0);
    rec.k = 2;
    rec.component = 0;
    rec.lhs = Complex(1.25, -0.5);
    rec.rhs = Complex(1.25, -0.5 + residual);
    rec.abs_residual = residual;
    rec.tolerance = tol;
    rec.pass = residual <= tol;
    return rec;
}

VerificationReport sample_report(CheckKind kind, double residual) {
    VerificationReport rep;
    rep.kind = kind;
    rep.add(sample_record(residual, 1e-9));
    rep.add(sample_record(residual / 2, 1e-9));
    rep.wall_time_s = 0.25;
    return rep;
}

}  // namespace

TEST_CASE("record round trip") {
    const CheckRecord rec = sample_record(1e-11, 1e-9);
    const CheckRecord back = record_from_json(record_to_json(rec));
    CHECK(back.label == rec.label);
    CHECK(back.z == rec.z);
    REQUIRE(back.w.has_value());
    CHECK(*back.w == *rec.w);
    CHECK(back.k == rec.k);
    CHECK(back.lhs == rec.lhs);
    CHECK(back.rhs == rec.rhs);
    CHECK(back.abs_residual == rec.abs_residual);
    CHECK(back.tolerance == rec.tolerance);
    CHECK(back.pass == rec.pass);

    // absent w stays absent
    CheckRecord no_w = rec;
    no_w.w.reset();
    CHECK(!record_from_json(record_to_json(no_w)).w.has_value());
}

TEST_CASE("report round trip preserves aggregates") {
    const VerificationReport rep = sample_report(CheckKind::Recurrence, 1e-11);
    const VerificationReport back = report_from_json(report_to_json(rep));
    CHECK(back.kind == rep.kind);
    CHECK(back.records.size() == 2);
    CHECK(back.max_residual == rep.max_residual);
    CHECK(back.all_pass == rep.all_pass);
    CHECK(back.wall_time_s == rep.wall_time_s);
}

TEST_CASE("documents carry schema version and manifest") {
    const auto doc = make_document({sample_report(CheckKind::Recurrence, 1e-11)},
                                   {{"tool", "test"}, {"seed", 24301}});
    CHECK(doc.at("schema_version") == kReportSchemaVersion);
    CHECK(doc.at("manifest").at("tool") == "test");
    CHECK(doc.at("checks").size() == 1);
    CHECK(doc.at("checks")[0].at("check") == "recurrence");
}

TEST_CASE("merge unions records and recomputes aggregates") {
    const auto doc1 = make_document({sample_report(CheckKind::Recurrence, 1e-11)}, {});
    const auto doc2 = make_document(
        {sample_report(CheckKind::Recurrence, 3e-11), sample_report(CheckKind::Contour, 2e-12)}, {});
    const auto merged = merge_documents({doc1, doc2});
    REQUIRE(merged.at("checks").size() == 2);
    // blocks sorted by kind name: contour before recurrence
    CHECK(merged.at("checks")[0].at("check") == "contour");
    CHECK(merged.at("checks")[1].at("check") == "recurrence");
    CHECK(merged.at("checks")[1].at("records").size() == 4);
    CHECK(merged.at("checks")[1].at("aggregate").at("max_residual") == 3e-11);
    CHECK(merged.at("checks")[1].at("aggregate").at("all_pass") == true);
    CHECK(merged.at("checks")[1].at("aggregate").at("wall_time_s") == 0.5);
}

TEST_CASE("merge rejects inconsistent records") {
    auto doc = make_document({sample_report(CheckKind::Recurrence, 1e-11)}, {});
    // corrupt one record: claims pass but residual exceeds tolerance
    doc["checks"][0]["records"][0]["abs_residual"] = 1.0;
    CHECK_THROWS_AS(merge_documents({doc}), ParseError);

    CHECK_THROWS_AS(merge_documents({nlohmann::json{{"schema_version", 999}}}), ParseError);
}

TEST_CASE("check spec parsing fills defaults for missing keys") {
    const CheckSpec def = check_spec_from_json(nlohmann::json::object());
    CHECK(def.k_min == 1);
    CHECK(def.k_max == 4);
    CHECK(def.quad_nodes == 0);
    CHECK(def.seed == 0x5EEDULL);
    CHECK(def.tol.absolute_floor == 1e-12);

    const nlohmann::json j = {{"k_min", 2},          {"k_max", 3},
                              {"limits", {500}},     {"quad_nodes", 64},
                              {"K", 20},             {"seed", 7},
                              {"tol_scale", 2.0},    {"tol_floor", 1e-10},
                              {"z_points", {{{0.3, 0.0}}}},
                              {"w_points", {{0.1, 0.2}}}};
    const CheckSpec s = check_spec_from_json(j);
    CHECK(s.k_min == 2);
    CHECK(s.k_max == 3);
    CHECK(s.limits == Index{500});
    CHECK(s.quad_nodes == 64);
    CHECK(s.K == 20);
    CHECK(s.seed == 7);
    CHECK(s.tol.scale == 2.0);
    CHECK(s.tol.absolute_floor == 1e-10);
    REQUIRE(s.z_points.size() == 1);
    CHECK(s.z_points[0][0] == Complex(0.3, 0.0));
    REQUIRE(s.w_points.size() == 1);
    CHECK(s.w_points[0] == Complex(0.1, 0.2));
}

TEST_CASE("real reports survive the full serialization cycle") {
    const CollatzMap m = preset("3n+1");
    CheckSpec s;
    s.k_max = 1;
    s.z_points = {{Complex(0.3, 0.0)}};
    s.limits = {400};
    const auto rep = run_check(m, CheckKind::Recurrence, s);
    const auto back = report_from_json(report_to_json(rep));
    CHECK(report_to_json(back).dump() == report_to_json(rep).dump());
}
