#include "collatzgf/collatzgf.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "presets.hpp"
#include "report.hpp"

using nlohmann::json;

struct cgf_map {
    cgf::CollatzMap map;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

cgf_status fail(cgf_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

/// Maps the exception hierarchy onto status codes around an API body.
template <typename Fn>
cgf_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return CGF_OK;
    } catch (const cgf::ParseError& e) {
        return fail(CGF_ERROR_PARSE, e.what());
    } catch (const cgf::ValidationError& e) {
        return fail(CGF_ERROR_VALIDATION, e.what());
    } catch (const cgf::DomainViolation& e) {
        return fail(CGF_ERROR_DOMAIN, e.what());
    } catch (const cgf::ZeroArgument& e) {
        return fail(CGF_ERROR_DOMAIN, e.what());
    } catch (const cgf::OutOfBox& e) {
        return fail(CGF_ERROR_DOMAIN, e.what());
    } catch (const cgf::TruncationTooLarge& e) {
        return fail(CGF_ERROR_BUDGET, e.what());
    } catch (const cgf::BudgetExceeded& e) {
        return fail(CGF_ERROR_BUDGET, e.what());
    } catch (const cgf::NonFiniteSample& e) {
        return fail(CGF_ERROR_NUMERIC, e.what());
    } catch (const cgf::PoleProximity& e) {
        return fail(CGF_ERROR_NUMERIC, e.what());
    } catch (const std::exception& e) {
        return fail(CGF_ERROR_INTERNAL, e.what());
    }
}

json factor_to_json(const cgf::PfdFactor& f) {
    json j;
    j["unit"] = json::array({f.eta.unit.real(), f.eta.unit.imag()});
    j["scale"] = json::array({f.eta.scale.get_num().get_si(), f.eta.scale.get_den().get_si()});
    j["exponent"] =
        json::array({f.eta.exponent.get_num().get_si(), f.eta.exponent.get_den().get_si()});
    j["root"] = f.root;  // -1: pole at zero
    return j;
}

json pfd_to_json(const cgf::PfdND& pfd) {
    json j;
    j["r"] = pfd.r;
    j["lambda"] = pfd.lambda;
    j["mu"] = pfd.mu;
    j["m"] = pfd.m;
    json terms = json::array();
    for (const cgf::PfdTermND& term : pfd.terms) {
        json jt;
        jt["ell"] = term.ell;
        jt["nu"] = term.nu;
        json factors = json::array();
        for (const cgf::PfdFactor& f : term.factors) factors.push_back(factor_to_json(f));
        jt["factors"] = factors;
        terms.push_back(jt);
    }
    j["terms"] = terms;
    return j;
}

}  // namespace

extern "C" {

const char* cgf_version(void) { return "0.1.0"; }

const char* cgf_last_error(void) { return g_last_error.c_str(); }

void cgf_string_free(char* s) { std::free(s); }

cgf_status cgf_map_from_preset(const char* name, cgf_map** out) {
    if (!name || !out) return fail(CGF_ERROR_ARGUMENT, "null argument");
    return guarded([&] { *out = new cgf_map{cgf::preset(name)}; });
}

cgf_status cgf_map_from_json(const char* config_json, cgf_map** out) {
    if (!config_json || !out) return fail(CGF_ERROR_ARGUMENT, "null argument");
    return guarded([&] { *out = new cgf_map{cgf::map_from_json_text(config_json)}; });
}

void cgf_map_free(cgf_map* map) { delete map; }

cgf_status cgf_map_describe(const cgf_map* map, char** json_out) {
    if (!map || !json_out) return fail(CGF_ERROR_ARGUMENT, "null argument");
    return guarded([&] {
        json j = cgf::map_describe(map->map);
        j["config"] = cgf::map_to_json(map->map, "");
        *json_out = dup_string(j.dump(2));
    });
}

cgf_status cgf_map_orbit(const cgf_map* map, const long* n, size_t dim, int k, char** json_out) {
    if (!map || !n || !json_out) return fail(CGF_ERROR_ARGUMENT, "null argument");
    if (static_cast<int>(dim) != map->map.dim())
        return fail(CGF_ERROR_ARGUMENT, "point dimension does not match the map");
    if (k < 0) return fail(CGF_ERROR_ARGUMENT, "k must be nonnegative");
    return guarded([&] {
        cgf::LatticePoint p;
        for (size_t j = 0; j < dim; ++j) {
            if (n[j] < 0) throw cgf::DomainViolation("orbit points must be nonnegative");
            p.emplace_back(n[j]);
        }
        const std::vector<cgf::LatticePoint> orbit = cgf::iterate(map->map, p, k);
        json j;
        j["dim"] = dim;
        j["k"] = k;
        json levels = json::array();
        for (const cgf::LatticePoint& v : orbit) {
            json lv = json::array();
            for (const cgf::BigInt& x : v) lv.push_back(x.get_str());
            levels.push_back(lv);
        }
        j["orbit"] = levels;
        *json_out = dup_string(j.dump(2));
    });
}

cgf_status cgf_series(const cgf_map* map, int k, const int* limits, size_t dim, char** json_out) {
    if (!map || !limits || !json_out) return fail(CGF_ERROR_ARGUMENT, "null argument");
    if (static_cast<int>(dim) != map->map.dim())
        return fail(CGF_ERROR_ARGUMENT, "limits dimension does not match the map");
    if (k < 0) return fail(CGF_ERROR_ARGUMENT, "k must be nonnegative");
    return guarded([&] {
        cgf::Index lim(limits, limits + dim);
        for (int l : lim)
            if (l <= 0) throw cgf::DomainViolation("truncation limits must be positive");
        const cgf::SeriesVector sv = cgf::orbit_series(map->map, k, lim);
        json j;
        j["dim"] = dim;
        j["k"] = k;
        j["limits"] = lim;
        json comps = json::array();
        for (const cgf::TruncatedSeries& s : sv.components) {
            json c = json::array();
            for (const cgf::Complex& v : s.coeffs()) c.push_back(json::array({v.real(), v.imag()}));
            comps.push_back(std::move(c));
        }
        j["components"] = comps;
        *json_out = dup_string(j.dump());
    });
}

cgf_status cgf_pfd(const cgf_map* map, const long* r, size_t dim, char** json_out) {
    if (!map || !json_out) return fail(CGF_ERROR_ARGUMENT, "null argument");
    if (r && static_cast<int>(dim) != map->map.dim())
        return fail(CGF_ERROR_ARGUMENT, "residue dimension does not match the map");
    return guarded([&] {
        json blocks = json::array();
        if (r) {
            blocks.push_back(pfd_to_json(cgf::pfd_nd(map->map, std::vector<long>(r, r + dim))));
        } else {
            for (const cgf::PfdND& p : cgf::all_decompositions(map->map))
                blocks.push_back(pfd_to_json(p));
        }
        json j;
        j["decompositions"] = blocks;
        *json_out = dup_string(j.dump(2));
    });
}

cgf_status cgf_verify(const cgf_map* map, const char* check_name, const char* options_json,
                      char** json_out) {
    if (!map || !check_name || !json_out) return fail(CGF_ERROR_ARGUMENT, "null argument");
    return guarded([&] {
        const cgf::CheckKind kind = cgf::check_kind_from_name(check_name);
        json opts(nullptr);
        if (options_json && *options_json) {
            opts = json::parse(options_json, nullptr, false);
            if (opts.is_discarded()) throw cgf::ParseError("invalid JSON in check options");
        }
        const cgf::CheckSpec spec = cgf::check_spec_from_json(opts);
        const cgf::VerificationReport rep = cgf::run_check(map->map, kind, spec);
        json manifest;
        manifest["tool"] = "collatzgf";
        manifest["version"] = cgf_version();
        manifest["seed"] = spec.seed;
        manifest["map"] = cgf::map_to_json(map->map, "");
        manifest["options"] = opts;
        *json_out = dup_string(cgf::make_document({rep}, manifest).dump(2));
    });
}

cgf_status cgf_report_merge(const char* const* docs, size_t count, char** json_out) {
    if (!docs || !json_out) return fail(CGF_ERROR_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<json> parsed;
        for (size_t i = 0; i < count; ++i) {
            if (!docs[i]) throw cgf::ParseError("null report document");
            json doc = json::parse(docs[i], nullptr, false);
            if (doc.is_discarded()) throw cgf::ParseError("invalid JSON in report document");
            parsed.push_back(std::move(doc));
        }
        *json_out = dup_string(cgf::merge_documents(parsed).dump(2));
    });
}

}  // extern "C"
