#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "presets.hpp"

using namespace cgf;

TEST_CASE("every preset validates and reports a name") {
    const auto names = preset_names();
    REQUIRE(names.size() == 6);
    for (const auto& n : names) {
        const CollatzMap m = preset(n);
        CHECK(m.dim() >= 1);
        CHECK(m.residue_count() >= 1);
    }
    CHECK_THROWS_AS(preset("no-such-map"), ParseError);
}

TEST_CASE("json round trip preserves the map") {
    for (const auto& name : preset_names()) {
        const CollatzMap m = preset(name);
        const nlohmann::json cfg = map_to_json(m, name);
        CHECK(cfg.at("name") == name);
        const CollatzMap back = map_from_json(cfg);
        CHECK(back.dim() == m.dim());
        CHECK(back.modulus() == m.modulus());
        for (long pos = 0; pos < m.residue_count(); ++pos) {
            const auto r = m.residue_at(pos);
            CHECK(back.branch(r).lambda == m.branch(r).lambda);
            CHECK(back.branch(r).mu == m.branch(r).mu);
            CHECK(back.branch(r).A == m.branch(r).A);
            CHECK(back.branch(r).b == m.branch(r).b);
        }
        // text path too
        const CollatzMap back2 = map_from_json_text(cfg.dump());
        CHECK(back2.growth().amax == m.growth().amax);
    }
}

TEST_CASE("parser rejects malformed configs") {
    CHECK_THROWS_AS(map_from_json_text("{not json"), ParseError);
    CHECK_THROWS_AS(map_from_json_text(R"({"d": 1})"), ParseError);
    // structurally fine but mathematically invalid: 3n+2 on odds breaks C2.b
    const std::string bad = R"({
        "name": "bad", "d": 1, "m": [2],
        "branches": [
            {"r": [0], "A": [[[1,2]]], "b": [0]},
            {"r": [1], "A": [[[3,2]]], "b": [[1,3]]}
        ]})";
    CHECK_THROWS_AS(map_from_json_text(bad), ValidationError);
}

TEST_CASE("rationals accepted as integers or pairs") {
    const std::string cfg = R"({
        "name": "half", "d": 1, "m": [2],
        "branches": [
            {"r": [0], "A": [[[1,2]]], "b": [0]},
            {"r": [1], "A": [[[3,2]]], "b": [[1,2]]}
        ]})";
    const CollatzMap m = map_from_json_text(cfg);
    CHECK(m.branch({1}).lambda == std::vector<long>{3});
    CHECK(m.branch({1}).mu == std::vector<long>{2});
}

TEST_CASE("coupled-2d preset is genuinely coupled yet valid") {
    const CollatzMap m = preset("coupled-2d");
    CHECK(m.dim() == 2);
    const Branch& br = m.branch({0, 1});
    CHECK(br.A[0][1] != 0);  // off-diagonal coupling
    CHECK(br.lambda == std::vector<long>({2, 2}));
    CHECK(br.mu == std::vector<long>({1, 1}));
}

TEST_CASE("describe lists growth data and residue classes") {
    const nlohmann::json d = map_describe(preset("3n+1"));
    CHECK(d.at("d") == 1);
    CHECK(d.at("classes").size() == 2);
    CHECK(d.at("classes")[1].at("lambda")[0] == 3);
    CHECK(d.at("classes")[1].at("mu")[0] == 2);
    CHECK(d.contains("radius_w"));
}
