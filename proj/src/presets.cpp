#include "presets.hpp"

namespace cgf {

namespace {

using nlohmann::json;

RawBranch scalar_branch(long r, const Rational& a, const Rational& b) {
    return {{r}, {{a}}, {b}};
}

CollatzMap diag_2d(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    // decoupled product of two copies of the 1-D map (a_r, b_r), r mod 2
    std::vector<RawBranch> raw;
    for (long r0 = 0; r0 < 2; ++r0)
        for (long r1 = 0; r1 < 2; ++r1)
            raw.push_back({{r0, r1},
                           {{a[r0], Rational(0)}, {Rational(0), a[r1]}},
                           {b[r0], b[r1]}});
    return validate_map(2, {2, 2}, raw);
}

}  // namespace

CollatzMap preset(const std::string& name) {
    if (name == "3n+1")
        return validate_map(1, {2},
                            {scalar_branch(0, Rational(1, 2), Rational(0)),
                             scalar_branch(1, Rational(3, 2), Rational(1, 2))});
    if (name == "3n-1")
        return validate_map(1, {2},
                            {scalar_branch(0, Rational(1, 2), Rational(0)),
                             scalar_branch(1, Rational(3, 2), Rational(-1, 2))});
    if (name == "classical")
        return validate_map(1, {2},
                            {scalar_branch(0, Rational(1, 2), Rational(0)),
                             scalar_branch(1, Rational(3), Rational(1))});
    if (name == "double-3n+1")
        return diag_2d({Rational(1, 2), Rational(3, 2)}, {Rational(0), Rational(1, 2)});
    if (name == "coupled-2d") {
        // fully coupled averaging map: t(n) = ((n1+n2)/2, (n1+n2)/2) + b_r
        std::vector<std::vector<Rational>> A = {{Rational(1, 2), Rational(1, 2)},
                                                {Rational(1, 2), Rational(1, 2)}};
        std::vector<RawBranch> raw = {
            {{0, 0}, A, {Rational(0), Rational(0)}},
            {{0, 1}, A, {Rational(1, 2), Rational(1, 2)}},
            {{1, 0}, A, {Rational(1, 2), Rational(1, 2)}},
            {{1, 1}, A, {Rational(0), Rational(0)}},
        };
        return validate_map(2, {2, 2}, raw);
    }
    if (name == "mu-ge-lambda")
        // single branch n -> n + 2: lambda = 1, mu = 2, so the decomposition
        // carries higher-order poles at zero
        return validate_map(1, {1}, {scalar_branch(0, Rational(1), Rational(2))});
    throw ParseError("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
    return {"3n+1", "3n-1", "classical", "double-3n+1", "coupled-2d", "mu-ge-lambda"};
}

namespace {

Rational rational_from_json(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
        const long den = v[1].get<long>();
        if (den == 0) throw ParseError("rational with zero denominator");
        Rational q(v[0].get<long>(), den);
        q.canonicalize();
        return q;
    }
    throw ParseError("expected integer or [numerator, denominator] pair");
}

json rational_to_json(const Rational& q) {
    if (q.get_den() == 1) return json(q.get_num().get_si());
    return json::array({q.get_num().get_si(), q.get_den().get_si()});
}

}  // namespace

CollatzMap map_from_json(const json& cfg) {
    if (!cfg.is_object()) throw ParseError("map config must be a JSON object");
    if (!cfg.contains("d") || !cfg.contains("m") || !cfg.contains("branches"))
        throw ParseError("map config requires d, m and branches");
    const int d = cfg.at("d").get<int>();
    if (d < 1) throw ParseError("dimension must be positive");
    std::vector<long> m = cfg.at("m").get<std::vector<long>>();
    if (static_cast<int>(m.size()) != d) throw ParseError("m must have d entries");

    std::vector<RawBranch> raw;
    for (const json& jb : cfg.at("branches")) {
        RawBranch rb;
        rb.r = jb.at("r").get<std::vector<long>>();
        if (static_cast<int>(rb.r.size()) != d) throw ParseError("residue vector must have d entries");
        const json& jA = jb.at("A");
        if (static_cast<int>(jA.size()) != d) throw ParseError("A must be d x d");
        for (const json& row : jA) {
            if (static_cast<int>(row.size()) != d) throw ParseError("A must be d x d");
            std::vector<Rational> arow;
            for (const json& v : row) arow.push_back(rational_from_json(v));
            rb.A.push_back(std::move(arow));
        }
        const json& jbvec = jb.at("b");
        if (static_cast<int>(jbvec.size()) != d) throw ParseError("b must have d entries");
        for (const json& v : jbvec) rb.b.push_back(rational_from_json(v));
        raw.push_back(std::move(rb));
    }
    return validate_map(d, m, raw);
}

CollatzMap map_from_json_text(const std::string& text) {
    json cfg = json::parse(text, nullptr, false);
    if (cfg.is_discarded()) throw ParseError("invalid JSON in map config");
    return map_from_json(cfg);
}

json map_to_json(const CollatzMap& map, const std::string& name) {
    json out;
    if (!name.empty()) out["name"] = name;
    out["d"] = map.dim();
    out["m"] = map.modulus();
    json branches = json::array();
    for (long pos = 0; pos < map.residue_count(); ++pos) {
        const std::vector<long> r = map.residue_at(pos);
        const Branch& br = map.branch(r);
        json jb;
        jb["r"] = r;
        json jA = json::array();
        for (const auto& row : br.A) {
            json jrow = json::array();
            for (const auto& v : row) jrow.push_back(rational_to_json(v));
            jA.push_back(jrow);
        }
        jb["A"] = jA;
        json jbvec = json::array();
        for (const auto& v : br.b) jbvec.push_back(rational_to_json(v));
        jb["b"] = jbvec;
        branches.push_back(jb);
    }
    out["branches"] = branches;
    return out;
}

json map_describe(const CollatzMap& map) {
    json out;
    out["d"] = map.dim();
    out["m"] = map.modulus();
    out["amax"] = map.growth().amax.get_d();
    out["bmax"] = map.growth().bmax.get_d();
    out["radius_w"] = radius_R_w(map);
    json classes = json::array();
    for (long pos = 0; pos < map.residue_count(); ++pos) {
        const std::vector<long> r = map.residue_at(pos);
        const Branch& br = map.branch(r);
        json jc;
        jc["r"] = r;
        jc["lambda"] = br.lambda;
        jc["mu"] = br.mu;
        classes.push_back(jc);
    }
    out["classes"] = classes;
    return out;
}

}  // namespace cgf
