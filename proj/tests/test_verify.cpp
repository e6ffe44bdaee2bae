#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "presets.hpp"
#include "report.hpp"

using namespace cgf;

namespace {

CheckSpec small_spec() {
    CheckSpec s;
    s.k_min = 1;
    s.k_max = 2;
    s.z_points = {{Complex(0.3, 0.0)}, {Complex(0.2, 0.4)}};
    s.limits = {800};
    return s;
}

}  // namespace

TEST_CASE("check kind names round trip") {
    for (CheckKind k :
         {CheckKind::Recurrence, CheckKind::Contour, CheckKind::Bivariate,
          CheckKind::CorollaryStructure, CheckKind::Bound, CheckKind::Convergence,
          CheckKind::BranchInvariance, CheckKind::DeltaIdentity})
        CHECK(check_kind_from_name(check_kind_name(k)) == k);
    CHECK_THROWS_AS(check_kind_from_name("nonsense"), ParseError);
}

TEST_CASE("default z points are deterministic and admissible") {
    const auto pts = default_z_points(1, 0x5EEDULL);
    REQUIRE(pts.size() == 12);
    CHECK(pts[0][0] == Complex(0.3, 0.0));
    CHECK(pts[1][0] == Complex(0.2, 0.4));
    for (const auto& z : pts) {
        CHECK(std::abs(z[0]) >= 0.1 - 1e-12);
        CHECK(std::abs(z[0]) <= 0.6 + 1e-12);
    }
    CHECK(default_z_points(1, 0x5EEDULL) == pts);
    CHECK(default_z_points(1, 1ULL) != pts);

    const auto pts2 = default_z_points(2, 0x5EEDULL);
    for (const auto& z : pts2) CHECK(z.size() == 2);
}

TEST_CASE("recurrence check passes on every preset in a reduced setting") {
    for (const std::string& name : preset_names()) {
        const CollatzMap m = preset(name);
        CheckSpec s = small_spec();
        if (m.dim() == 2) {
            s.z_points = {{Complex(0.3, 0.0), Complex(0.1, 0.2)}};
            s.limits = {64, 64};
        }
        const auto rep = check_recurrence(m, s);
        CHECK(rep.all_pass);
        CHECK(rep.max_residual < 1e-9);
        CHECK(!rep.records.empty());
    }
}

TEST_CASE("recurrence at k=1 is truncation independent") {
    // the level-0 closed form pins the lhs; two very different boxes must agree
    const CollatzMap m = preset("3n+1");
    CheckSpec a = small_spec();
    a.k_max = 1;
    a.limits = {400};
    CheckSpec b = a;
    b.limits = {3000};
    const auto ra = check_recurrence(m, a);
    const auto rb = check_recurrence(m, b);
    REQUIRE(ra.records.size() == rb.records.size());
    for (size_t i = 0; i < ra.records.size(); ++i) {
        CHECK(ra.records[i].pass);
        CHECK(rb.records[i].pass);
        CHECK(std::abs(ra.records[i].lhs - rb.records[i].lhs) < 1e-9);
    }
}

TEST_CASE("contour check passes and carries three record families") {
    const CollatzMap m = preset("3n+1");
    CheckSpec s = small_spec();
    const auto rep = check_contour(m, s);
    CHECK(rep.all_pass);
    int quad_vs_residue = 0, direct_vs_quad = 0, robustness = 0;
    for (const auto& r : rep.records) {
        if (r.label == "quad_vs_residue") ++quad_vs_residue;
        if (r.label == "direct_vs_quad") ++direct_vs_quad;
        if (r.label == "radius_robustness") ++robustness;
    }
    CHECK(quad_vs_residue > 0);
    CHECK(direct_vs_quad > 0);
    CHECK(robustness > 0);
}

TEST_CASE("bivariate check passes and rejects |w| >= R_w") {
    const CollatzMap m = preset("3n+1");
    CheckSpec s = small_spec();
    s.w_points = {Complex(0.2, 0.0), Complex(0.0, 0.4), Complex(0.0, 0.0)};
    s.K = 30;
    s.limits = {2000};
    const auto rep = check_bivariate(m, s);
    CHECK(rep.all_pass);
    bool saw_zero = false;
    for (const auto& r : rep.records)
        if (r.w && *r.w == Complex(0.0, 0.0)) {
            saw_zero = true;
            CHECK(r.abs_residual < 1e-12);
        }
    CHECK(saw_zero);

    CheckSpec bad = s;
    bad.w_points = {Complex(0.7, 0.0)};  // R_w = 2/3
    CHECK_THROWS_AS(check_bivariate(m, bad), DomainViolation);
}

TEST_CASE("corollary structure reports both polarities") {
    const auto rep1 = check_corollary_structure(preset("3n+1"));
    CHECK(rep1.all_pass);
    bool free_tag = false;
    for (const auto& r : rep1.records)
        if (r.label.rfind("hypothesis_sigma_free", 0) == 0) free_tag = true;
    CHECK(free_tag);

    const auto rep2 = check_corollary_structure(preset("mu-ge-lambda"));
    CHECK(rep2.all_pass);
    bool present_tag = false;
    for (const auto& r : rep2.records)
        if (r.label.rfind("hypothesis_sigma_present", 0) == 0) present_tag = true;
    CHECK(present_tag);
}

TEST_CASE("bound check sweeps without violations") {
    const auto rep = check_bound(preset("3n+1"), 500, 12);
    CHECK(rep.all_pass);
    CHECK(rep.records.size() == 13);  // one per level 0..12
    for (const auto& r : rep.records) CHECK(r.label == "growth_bound");

    const auto rep2 = check_bound(preset("coupled-2d"), 30, 6);
    CHECK(rep2.all_pass);
}

TEST_CASE("branch invariance across root relabelings") {
    for (const char* name : {"3n+1", "mu-ge-lambda"}) {
        const CollatzMap m = preset(name);
        CheckSpec s = small_spec();
        const auto rep = check_branch_invariance(m, s);
        CHECK(rep.all_pass);
        bool saw_shift = false;
        for (const auto& r : rep.records)
            if (r.label.rfind("shift_", 0) == 0) saw_shift = true;
        // only maps with some lambda_j > 1 admit a nontrivial relabeling
        CHECK(saw_shift == (m.lambda_max(0) > 1));
    }
}

TEST_CASE("convergence diagnostics stay under the geometric budget") {
    const CollatzMap m = preset("3n+1");
    CheckSpec s = small_spec();
    s.K = 30;
    s.w_points = {Complex(0.5, 0.0)};
    s.limits = {2000};
    const auto rep = check_convergence(m, s);
    CHECK(rep.all_pass);
    for (const auto& r : rep.records) {
        if (r.label == "fitted_ratio")
            CHECK(r.abs_residual <= std::abs(*r.w) / radius_R_w(m) + 0.05);
        if (r.label == "monotone_from") CHECK(r.abs_residual <= 10.0);
    }
}

TEST_CASE("delta identity check with reduced settings") {
    CheckSpec s;
    s.quad_nodes = 64;
    const auto rep = check_delta_identity(s);
    CHECK(rep.all_pass);
    CHECK(rep.max_residual < 1e-13);
}

TEST_CASE("run_check dispatch agrees with direct calls") {
    const CollatzMap m = preset("3n+1");
    CheckSpec s = small_spec();
    const auto via = run_check(m, CheckKind::Recurrence, s);
    const auto direct = check_recurrence(m, s);
    CHECK(via.records.size() == direct.records.size());
    CHECK(via.max_residual == direct.max_residual);
}

TEST_CASE("identical specs give bitwise-identical serialized reports") {
    const CollatzMap m = preset("3n+1");
    CheckSpec s = small_spec();
    for (CheckKind k : {CheckKind::Recurrence, CheckKind::Contour, CheckKind::BranchInvariance}) {
        auto a = run_check(m, k, s);
        auto b = run_check(m, k, s);
        a.wall_time_s = b.wall_time_s = 0.0;  // only the timing may differ
        CHECK(report_to_json(a).dump() == report_to_json(b).dump());
    }
}
