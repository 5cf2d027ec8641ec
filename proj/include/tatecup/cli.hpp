#pragma once

// Command-line front end. run_cli is the whole program minus main(), so it can
// be driven in-process by tests.
//
// Exit codes: 0 success, 2 invalid input, 3 size budget exceeded, 4 internal
// consistency failure.

#include "tatecup/errors.hpp"
#include "tatecup/group.hpp"
#include "tatecup/homology.hpp"
#include "tatecup/io.hpp"
#include "tatecup/products.hpp"
#include "tatecup/resolution.hpp"
#include "tatecup/tate.hpp"
#include "tatecup/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#ifndef TATECUP_DATA_DIR
#define TATECUP_DATA_DIR "data"
#endif

namespace tatecup {

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitBudget = 3, kExitInternal = 4 };

struct RunConfig {
    std::string command;
    std::string group;
    std::string group_file;
    std::string resolution;  // bar | periodic | kernel | file:<path>; empty picks a default
    std::optional<std::size_t> depth;
    std::string degrees;
    std::string pairs;
    std::string output;
    std::string format = "json";
    std::optional<std::size_t> max_zrank;
    std::uint64_t seed = 1;
};

namespace cli_detail {

inline long parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ValidationError("cannot parse " + what + " '" + s + "'");
}

/// "a..b" (inclusive) or a single "n".
inline std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        long v = parse_int(s, "degree");
        return {v, v};
    }
    long a = parse_int(s.substr(0, dots), "degree range"), b = parse_int(s.substr(dots + 2), "degree range");
    if (a > b) throw ValidationError("empty degree range '" + s + "'");
    return {a, b};
}

/// "1x1,1x3".
inline std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& s) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        auto x = item.find('x');
        if (x == std::string::npos) throw ValidationError("degree pair '" + item + "' should look like 1x3");
        long n = parse_int(item.substr(0, x), "degree pair"), m = parse_int(item.substr(x + 1), "degree pair");
        if (n < 1 || m < 1) throw ValidationError("product degrees must be at least 1 (got '" + item + "')");
        out.emplace_back(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw ValidationError("no degree pairs given");
    return out;
}

inline std::filesystem::path find_data_file(const std::string& name) {
    std::filesystem::path p(name);
    if (std::filesystem::exists(p) || p.is_absolute()) return p;
    if (const char* env = std::getenv("TATECUP_DATA_DIR")) {
        auto q = std::filesystem::path(env) / p;
        if (std::filesystem::exists(q)) return q;
    }
    auto q = std::filesystem::path(TATECUP_DATA_DIR) / p;
    if (std::filesystem::exists(q)) return q;
    return p;
}

inline Limits limits_for(const RunConfig& cfg) {
    Limits l = default_limits();
    if (const char* env = std::getenv("TATECUP_MAX_ZRANK")) {
        long v = parse_int(env, "TATECUP_MAX_ZRANK");
        if (v <= 0) throw ValidationError("TATECUP_MAX_ZRANK must be positive");
        l.max_zrank = static_cast<std::size_t>(v);
    }
    if (cfg.max_zrank) l.max_zrank = *cfg.max_zrank;
    return l;
}

inline bool is_standard_cyclic(const FiniteGroup& g) { return g.order() >= 2 && g.same_law(*cyclic_group(g.order())); }

/// Builds (or loads) and validates the resolution requested by cfg, through `depth`.
inline Resolution make_resolution(const RunConfig& cfg, std::size_t depth, const Limits& limits) {
    std::string kind = cfg.resolution;
    GroupPtr group;
    if (kind.rfind("file:", 0) == 0) {
        Resolution p = load_resolution(find_data_file(kind.substr(5)), limits);
        if (!cfg.group.empty() || !cfg.group_file.empty()) {
            GroupPtr g = cfg.group_file.empty() ? named_group(cfg.group) : load_group_file(find_data_file(cfg.group_file), limits);
            if (!g->same_law(*p.group)) throw ValidationError("the resolution file is over a different group (or element order) than --group");
        }
        if (p.max_degree() < depth)
            throw DegreeError("resolution file " + kind.substr(5) + " only reaches degree " + std::to_string(p.max_degree()) + ", " +
                              std::to_string(depth) + " needed");
        return p.truncated(depth);
    }
    if (!cfg.group_file.empty()) {
        group = load_group_file(find_data_file(cfg.group_file), limits);
    } else if (!cfg.group.empty()) {
        group = named_group(cfg.group);
    } else {
        throw ValidationError("one of --group, --group-file or --resolution file:<path> is required");
    }
    if (kind.empty()) kind = is_standard_cyclic(*group) ? "periodic" : "kernel";
    Resolution p;
    if (kind == "bar") {
        p = bar_resolution(group, depth, limits);
    } else if (kind == "periodic") {
        if (!is_standard_cyclic(*group)) throw ValidationError("the periodic resolution needs a cyclic group of order >= 2 (cyclic:m)");
        p = periodic_cyclic_resolution(group->order(), depth);
    } else if (kind == "kernel") {
        p = kernel_resolution(group, depth, limits);
    } else {
        throw ValidationError("unknown resolution '" + kind + "' (expected bar, periodic, kernel or file:<path>)");
    }
    require_valid(p);
    return p;
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output.empty())
        out << text;
    else
        write_text_file(cfg.output, text);
}

inline void require_json(const RunConfig& cfg) {
    if (cfg.format != "json") throw ValidationError("format '" + cfg.format + "' is only available for product tables");
}

inline int cmd_homology(const RunConfig& cfg, std::ostream& out) {
    require_json(cfg);
    auto [lo, hi] = parse_range(cfg.degrees.empty() ? "1..4" : cfg.degrees);
    if (lo < 0) throw ValidationError("homology degrees must be non-negative");
    const std::size_t top = static_cast<std::size_t>(hi);
    const std::size_t depth = cfg.depth.value_or(top + 1);
    if (depth < top + 1) throw ValidationError("H_" + std::to_string(top) + " needs --depth >= " + std::to_string(top + 1));
    Limits limits = limits_for(cfg);
    Resolution p = make_resolution(cfg, depth, limits);
    Json results = Json::array();
    for (long n = lo; n <= hi; ++n) results.push_back(homology_to_json(p.group->label(), homology(p, static_cast<std::size_t>(n))));
    emit(cfg, results.dump(2) + "\n", out);
    return kExitOk;
}

inline int cmd_tate(const RunConfig& cfg, std::ostream& out) {
    require_json(cfg);
    auto [lo, hi] = parse_range(cfg.degrees.empty() ? "-4..-1" : cfg.degrees);
    if (hi >= 0) throw DegreeError("Tate groups are only computed in negative degrees");
    const std::size_t depth = cfg.depth.value_or(static_cast<std::size_t>(-lo));
    if (depth < static_cast<std::size_t>(-lo)) throw ValidationError("degree " + std::to_string(lo) + " needs --depth >= " + std::to_string(-lo));
    Limits limits = limits_for(cfg);
    Resolution p = make_resolution(cfg, depth, limits);
    Json results = Json::array();
    for (long k = lo; k <= hi; ++k) {
        TateGroup t = tate_group(p, static_cast<int>(k));
        results.push_back(Json{{"group", p.group->label()}, {"tate_degree", k}, {"zero", t.is_zero()}, {"invariant_factors", to_json(t.invariant_factors())}});
    }
    emit(cfg, results.dump(2) + "\n", out);
    return kExitOk;
}

inline std::size_t product_depth(const RunConfig& cfg, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::size_t need = 0;
    for (auto [n, m] : pairs) need = std::max(need, n + m + 2);
    std::size_t depth = cfg.depth.value_or(need);
    if (depth < need) throw ValidationError("these products need --depth >= " + std::to_string(need));
    return depth;
}

inline int cmd_product_table(const RunConfig& cfg, std::ostream& out) {
    if (cfg.format != "json" && cfg.format != "csv") throw ValidationError("unknown format '" + cfg.format + "'");
    auto pairs = parse_pairs(cfg.pairs);
    Limits limits = limits_for(cfg);
    ProductEngine engine(make_resolution(cfg, product_depth(cfg, pairs), limits), limits);
    ProductTable t = engine.product_table(pairs);
    emit(cfg, cfg.format == "csv" ? product_table_to_csv(t) : product_table_to_json(t).dump(2) + "\n", out);
    return t.all_agree() ? kExitOk : kExitInternal;
}

inline int cmd_commutativity(const RunConfig& cfg, std::ostream& out) {
    require_json(cfg);
    auto pairs = parse_pairs(cfg.pairs);
    Limits limits = limits_for(cfg);
    ProductEngine engine(make_resolution(cfg, product_depth(cfg, pairs), limits), limits);
    Json entries = Json::array();
    for (const auto& e : engine.commutativity(pairs))
        entries.push_back(Json{{"n", e.n}, {"m", e.m}, {"a", e.a}, {"b", e.b}, {"ab", to_json(e.ab)}, {"ba", to_json(e.ba)}, {"equal", e.ab == e.ba}});
    Json doc{{"group", engine.resolution().group->label()}, {"resolution", engine.resolution().id}, {"entries", std::move(entries)}};
    emit(cfg, doc.dump(2) + "\n", out);
    return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    require_json(cfg);
    Limits limits = limits_for(cfg);
    ProductEngine engine(make_resolution(cfg, cfg.depth.value_or(6), limits), limits);
    VerifyOptions opt;
    opt.seed = cfg.seed;
    VerifyReport rep = verify_resolution(engine, opt);
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json j{{"name", c.name}, {"passed", c.passed}, {"failed", c.failed}};
        if (c.failed) j["first_failure"] = c.first_failure;
        checks.push_back(std::move(j));
    }
    Json doc{{"group", engine.resolution().group->label()},
             {"resolution", engine.resolution().id},
             {"depth", engine.resolution().max_degree()},
             {"seed", cfg.seed},
             {"checks", std::move(checks)},
             {"passed", rep.total_passed()},
             {"failed", rep.total_failed()}};
    emit(cfg, doc.dump(2) + "\n", out);
    return rep.passed() ? kExitOk : kExitInternal;
}

inline int cmd_resolve(const RunConfig& cfg, std::ostream& out) {
    require_json(cfg);
    Limits limits = limits_for(cfg);
    Resolution p = make_resolution(cfg, cfg.depth.value_or(4), limits);
    emit(cfg, resolution_to_json(p).dump(1) + "\n", out);
    return kExitOk;
}

inline void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << Json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    using namespace cli_detail;
    RunConfig cfg;
    CLI::App app{"Integral homology and negative Tate cup products of finite groups"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--group", cfg.group, "cyclic:n, dihedral:n, sym:n, q8 or trivial");
        sub->add_option("--group-file", cfg.group_file, "JSON group file (multiplication table or permutation generators)");
        sub->add_option("--resolution", cfg.resolution, "bar, periodic, kernel or file:<path>");
        sub->add_option("--depth", cfg.depth, "resolution depth");
        sub->add_option("--output", cfg.output, "write the result to this file instead of stdout");
        sub->add_option("--format", cfg.format, "json or csv");
        sub->add_option("--max-zrank", cfg.max_zrank, "largest expanded Z-rank of any module (default 50000, env TATECUP_MAX_ZRANK)");
    };
    struct Sub {
        const char* name;
        const char* help;
        bool degrees, pairs, seed;
    };
    const Sub subs[] = {
        {"homology", "H_n(G, Z) for a range of degrees", true, false, false},
        {"tate", "negative Tate cohomology; pass --degrees=-4..-1", true, false, false},
        {"product-table", "products of homology generators by both pipelines", false, true, false},
        {"commutativity", "products in both orders, recorded side by side", false, true, false},
        {"verify", "run the self-check suite", false, false, true},
        {"resolve", "print the resolution as JSON", false, false, false},
    };
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        add_common(sub);
        if (s.degrees) sub->add_option("--degrees", cfg.degrees, "degree or inclusive range a..b");
        if (s.pairs) sub->add_option("--pairs", cfg.pairs, "degree pairs, e.g. 1x1,1x3")->required();
        if (s.seed) sub->add_option("--seed", cfg.seed, "seed for randomized checks");
        sub->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
    }

    std::vector<const char*> argv{"tatecup"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", e.what());
        return kExitValidation;
    }

    try {
        if (cfg.command == "homology") return cmd_homology(cfg, out);
        if (cfg.command == "tate") return cmd_tate(cfg, out);
        if (cfg.command == "product-table") return cmd_product_table(cfg, out);
        if (cfg.command == "commutativity") return cmd_commutativity(cfg, out);
        if (cfg.command == "verify") return cmd_verify(cfg, out);
        if (cfg.command == "resolve") return cmd_resolve(cfg, out);
        report_error(err, "usage", "no command given");
        return kExitValidation;
    } catch (const BudgetExceeded& e) {
        report_error(err, "budget", e.what());
        return kExitBudget;
    } catch (const InternalError& e) {
        report_error(err, "internal", e.what());
        return kExitInternal;
    } catch (const ValidationError& e) {
        report_error(err, "validation", e.what());
        return kExitValidation;
    } catch (const DegreeError& e) {
        report_error(err, "degree", e.what());
        return kExitValidation;
    } catch (const std::filesystem::filesystem_error& e) {
        report_error(err, "io", e.what());
        return kExitValidation;
    }
}

}  // namespace tatecup
