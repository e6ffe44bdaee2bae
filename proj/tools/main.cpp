// collatzgf: generalized-Collatz generating functions - maps, series,
// partial-fraction data, and numerical certification of the functional
// identities. Front end over the C library API.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "collatzgf/collatzgf.h"

using nlohmann::json;

namespace {

struct CString {
    char* s = nullptr;
    ~CString() { cgf_string_free(s); }
};

struct MapHandle {
    cgf_map* m = nullptr;
    ~MapHandle() { cgf_map_free(m); }
};

[[noreturn]] void die(const std::string& message, int code = 2) {
    std::cerr << "error: " << message << "\n";
    std::exit(code);
}

void check_status(cgf_status st, const std::string& what) {
    if (st != CGF_OK) die(what + ": " + cgf_last_error());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) die("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) die("cannot write " + out_path);
    out << text << "\n";
}

// Complex literal: "0.3", "-0.5", "0.55i", "0.2+0.4i", "0.2-0.4i", "i", "-i".
std::pair<double, double> parse_complex(const std::string& text, const std::string& flag) {
    const std::string s = text;
    auto fail = [&]() -> std::pair<double, double> {
        die("flag " + flag + ": cannot parse complex literal '" + text + "'");
    };
    if (s.empty()) return fail();
    // split at the last +/- that is not a leading sign or part of an exponent
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto parse_part = [&](std::string part, bool* imag) -> double {
        *imag = false;
        if (!part.empty() && part.back() == 'i') {
            *imag = true;
            part.pop_back();
            if (part.empty() || part == "+") part = "1";
            else if (part == "-") part = "-1";
        }
        size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (...) {
            fail();
        }
        if (used != part.size()) fail();
        return v;
    };
    double re = 0.0, im = 0.0;
    bool is_imag = false;
    if (split == std::string::npos) {
        const double v = parse_part(s, &is_imag);
        (is_imag ? im : re) = v;
    } else {
        const double a = parse_part(s.substr(0, split), &is_imag);
        (is_imag ? im : re) = a;
        const bool first_imag = is_imag;
        const double b = parse_part(s.substr(split), &is_imag);
        if (is_imag == first_imag) fail();
        (is_imag ? im : re) = b;
    }
    return {re, im};
}

std::vector<std::array<double, 2>> parse_point(const std::string& text, const std::string& flag) {
    std::vector<std::array<double, 2>> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto [re, im] = parse_complex(part, flag);
        out.push_back({re, im});
    }
    if (out.empty()) die("flag " + flag + ": empty point");
    return out;
}

std::vector<int> parse_limits(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stoi(part));
    return out;
}

std::vector<long> parse_longs(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stol(part));
    return out;
}

MapHandle load_map(const std::string& preset, const std::string& config_path) {
    if (preset.empty() == config_path.empty())
        die("exactly one of --preset and --config is required");
    MapHandle h;
    if (!preset.empty())
        check_status(cgf_map_from_preset(preset.c_str(), &h.m), "preset '" + preset + "'");
    else
        check_status(cgf_map_from_json(read_file(config_path).c_str(), &h.m),
                     "config " + config_path);
    return h;
}

const std::vector<std::string> kAllChecks = {
    "recurrence",   "contour",     "bivariate",        "corollary_structure",
    "bound",        "convergence", "branch_invariance", "delta_identity"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized-Collatz generating functions: dynamics, series, "
                 "partial fractions, and identity certification"};
    app.require_subcommand(1);

    std::string preset, config_path, out_path;
    std::string limits_text;
    std::vector<std::string> z_texts, w_texts;
    int k = 1, nodes = 512;
    double tol_scale = 1.0;
    std::optional<unsigned long long> seed;
    std::string check_list = "all", residue_text, n_text;
    std::vector<std::string> report_paths;

    auto add_map_flags = [&](CLI::App* cmd) {
        cmd->add_option("--preset", preset, "built-in map name");
        cmd->add_option("--config", config_path, "map config file (JSON)");
    };

    CLI::App* validate = app.add_subcommand("validate", "validate a map and print its data");
    add_map_flags(validate);

    CLI::App* orbit = app.add_subcommand("orbit", "exact orbit of one lattice point");
    add_map_flags(orbit);
    orbit->add_option("--n", n_text, "start point, comma-separated")->required();
    orbit->add_option("--k", k, "number of steps");
    orbit->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* series = app.add_subcommand("series", "truncated generating-function dump");
    add_map_flags(series);
    series->add_option("--k", k, "iteration level");
    series->add_option("--limits", limits_text, "per-variable truncation, comma-separated");
    series->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* pfd = app.add_subcommand("pfd", "partial-fraction decomposition dump");
    add_map_flags(pfd);
    pfd->add_option("--r", residue_text, "residue class, comma-separated (default: all)");
    pfd->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "run identity checks and emit a report");
    add_map_flags(verify);
    verify->add_option("--check", check_list, "comma-separated check list or 'all'");
    verify->add_option("--k", k, "maximum iteration level");
    verify->add_option("--limits", limits_text, "per-variable truncation");
    verify->add_option("--nodes,-M", nodes, "quadrature nodes per circle");
    verify->add_option("--tol-scale", tol_scale, "tolerance scale factor");
    verify->add_option("--seed", seed, "sample-point seed");
    verify->add_option("--z", z_texts, "evaluation point (repeatable; components comma-separated)");
    verify->add_option("--w", w_texts, "bivariate w point (repeatable)");
    verify->add_option("--out", out_path, "report file (default stdout)");

    CLI::App* report = app.add_subcommand("report", "merge report files and summarize");
    report->add_option("paths", report_paths, "report files")->required();
    report->add_option("--out", out_path, "merged report file");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) {
        MapHandle h = load_map(preset, config_path);
        CString out;
        check_status(cgf_map_describe(h.m, &out.s), "describe");
        std::cout << out.s << "\n";
        return 0;
    }

    if (orbit->parsed()) {
        MapHandle h = load_map(preset, config_path);
        const std::vector<long> n = parse_longs(n_text);
        CString out;
        check_status(cgf_map_orbit(h.m, n.data(), n.size(), k, &out.s), "orbit");
        write_output(out.s, out_path);
        return 0;
    }

    if (series->parsed()) {
        MapHandle h = load_map(preset, config_path);
        std::vector<int> limits;
        if (!limits_text.empty()) limits = parse_limits(limits_text);
        if (limits.empty()) {
            CString desc;
            check_status(cgf_map_describe(h.m, &desc.s), "describe");
            const int d = json::parse(desc.s).at("d").get<int>();
            limits.assign(d, d == 1 ? 2000 : (d == 2 ? 96 : 24));
        }
        CString out;
        check_status(cgf_series(h.m, k, limits.data(), limits.size(), &out.s), "series");
        write_output(out.s, out_path);
        return 0;
    }

    if (pfd->parsed()) {
        MapHandle h = load_map(preset, config_path);
        CString out;
        if (residue_text.empty()) {
            check_status(cgf_pfd(h.m, nullptr, 0, &out.s), "pfd");
        } else {
            const std::vector<long> r = parse_longs(residue_text);
            check_status(cgf_pfd(h.m, r.data(), r.size(), &out.s), "pfd");
        }
        write_output(out.s, out_path);
        return 0;
    }

    if (verify->parsed()) {
        MapHandle h = load_map(preset, config_path);

        json opts = json::object();
        if (verify->count("--k")) opts["k_max"] = k;
        if (!limits_text.empty()) opts["limits"] = parse_limits(limits_text);
        if (verify->count("--nodes")) opts["quad_nodes"] = nodes;
        if (verify->count("--tol-scale")) opts["tol_scale"] = tol_scale;
        if (seed) opts["seed"] = *seed;
        if (!z_texts.empty()) {
            json zs = json::array();
            for (const std::string& t : z_texts) {
                json p = json::array();
                for (const auto& c : parse_point(t, "--z")) p.push_back(json::array({c[0], c[1]}));
                zs.push_back(p);
            }
            opts["z_points"] = zs;
        }
        if (!w_texts.empty()) {
            json ws = json::array();
            for (const std::string& t : w_texts) {
                const auto [re, im] = parse_complex(t, "--w");
                ws.push_back(json::array({re, im}));
            }
            opts["w_points"] = ws;
        }
        const std::string opts_text = opts.dump();

        std::vector<std::string> checks;
        if (check_list == "all") {
            checks = kAllChecks;
        } else {
            std::stringstream ss(check_list);
            std::string part;
            while (std::getline(ss, part, ',')) checks.push_back(part);
        }

        std::vector<std::string> docs;
        for (const std::string& name : checks) {
            CString out;
            check_status(cgf_verify(h.m, name.c_str(), opts_text.c_str(), &out.s),
                         "check " + name);
            docs.push_back(out.s);
        }
        std::vector<const char*> ptrs;
        for (const std::string& d : docs) ptrs.push_back(d.c_str());
        CString merged;
        check_status(cgf_report_merge(ptrs.data(), ptrs.size(), &merged.s), "merge");

        json doc = json::parse(merged.s);
        json manifest;
        manifest["tool"] = "collatzgf";
        manifest["version"] = cgf_version();
        manifest["seed"] = seed ? json(*seed) : json(0x5EEDULL);
        json args = json::array();
        for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
        manifest["command"] = args;
        manifest["options"] = opts;
        manifest["sources"] = doc.at("manifest");
        doc["manifest"] = manifest;
        write_output(doc.dump(2), out_path);

        bool all_pass = true;
        for (const json& block : doc.at("checks")) {
            const json& agg = block.at("aggregate");
            const bool pass = agg.at("all_pass").get<bool>();
            all_pass = all_pass && pass;
            std::fprintf(stderr, "%-20s max_residual=%.3e  %s\n",
                         block.at("check").get<std::string>().c_str(),
                         agg.at("max_residual").get<double>(), pass ? "pass" : "FAIL");
        }
        return all_pass ? 0 : 1;
    }

    if (report->parsed()) {
        std::vector<std::string> docs;
        for (const std::string& path : report_paths) docs.push_back(read_file(path));
        std::vector<const char*> ptrs;
        for (const std::string& d : docs) ptrs.push_back(d.c_str());
        CString merged;
        check_status(cgf_report_merge(ptrs.data(), ptrs.size(), &merged.s), "merge");
        if (!out_path.empty()) write_output(merged.s, out_path);

        json doc = json::parse(merged.s);
        bool all_pass = true;
        for (const json& block : doc.at("checks")) {
            const json& agg = block.at("aggregate");
            const bool pass = agg.at("all_pass").get<bool>();
            all_pass = all_pass && pass;
            std::printf("%-20s records=%4zu  max_residual=%.3e  %s\n",
                        block.at("check").get<std::string>().c_str(),
                        block.at("records").size(), agg.at("max_residual").get<double>(),
                        pass ? "pass" : "FAIL");
        }
        return all_pass ? 0 : 1;
    }

    return 2;
}
