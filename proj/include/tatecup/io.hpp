#pragma once

// JSON for groups, resolutions, homology groups and product tables. Integers
// are written as JSON numbers when they fit in 64 bits and as decimal strings
// otherwise; both forms are accepted on input.

#include "tatecup/errors.hpp"
#include "tatecup/group.hpp"
#include "tatecup/homology.hpp"
#include "tatecup/products.hpp"
#include "tatecup/resolution.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace tatecup {

using Json = nlohmann::ordered_json;

inline Json to_json(const Integer& x) {
    if (x.is_small()) return Json(x.to_int64());
    return Json(x.str());
}

inline Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    if (j.is_string()) {
        try {
            return Integer::parse(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ValidationError("expected an integer, got " + j.dump());
}

inline Json to_json(std::span<const Integer> v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline IntVector int_vector_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("expected an integer array, got " + j.dump());
    IntVector v;
    for (const auto& x : j) v.push_back(integer_from_json(x));
    return v;
}

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

/// Writes through a temporary file and renames, so a failure leaves no partial output.
inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ValidationError("cannot write " + path.string());
        out << text;
        if (!out) throw ValidationError("write to " + path.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Groups.

inline Json group_to_json(const FiniteGroup& g) {
    Json t = Json::array();
    for (const auto& row : g.table()) t.push_back(row);
    return Json{{"label", g.label()}, {"order", g.order()}, {"table", std::move(t)}};
}

inline std::size_t index_from_json(const Json& j) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ValidationError("expected a non-negative integer, got " + j.dump());
    return j.get<std::size_t>();
}

/// A group given as a label/spec string, a table object or a permutation object.
inline GroupPtr group_from_json(const Json& j, const Limits& limits = default_limits()) {
    if (j.is_string()) return named_group(j.get<std::string>());
    if (!j.is_object()) throw ValidationError("group must be a string or an object");
    if (j.contains("table")) {
        const auto& t = j.at("table");
        if (!t.is_array()) throw ValidationError("group table must be an array");
        std::vector<std::vector<std::size_t>> table;
        for (const auto& row : t) {
            if (!row.is_array()) throw ValidationError("group table rows must be arrays");
            std::vector<std::size_t> r;
            for (const auto& x : row) r.push_back(index_from_json(x));
            table.push_back(std::move(r));
        }
        if (j.contains("order") && index_from_json(j.at("order")) != table.size())
            throw ValidationError("group order does not match the table size");
        std::string label = j.value("label", "G" + std::to_string(table.size()));
        return std::make_shared<FiniteGroup>(std::move(label), std::move(table), limits);
    }
    if (j.contains("generators")) {
        std::size_t degree = index_from_json(j.at("degree"));
        std::vector<Permutation> gens;
        for (const auto& g : j.at("generators")) {
            Permutation p;
            for (const auto& x : g) p.push_back(index_from_json(x));
            gens.push_back(std::move(p));
        }
        return permutation_group(degree, std::move(gens), j.value("label", std::string()), limits);
    }
    throw ValidationError("group object needs either \"table\" or \"generators\"");
}

inline GroupPtr load_group_file(const std::filesystem::path& path, const Limits& limits = default_limits()) {
    return group_from_json(read_json_file(path), limits);
}

// ---------------------------------------------------------------------------
// Resolutions.

inline Json resolution_to_json(const Resolution& p) {
    Json diffs = Json::array();
    for (const auto& d : p.differentials) {
        Json rows = Json::array();
        for (std::size_t r = 0; r < d.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < d.cols(); ++c) row.push_back(to_json(d.entry(r, c).coefficients()));
            rows.push_back(std::move(row));
        }
        diffs.push_back(std::move(rows));
    }
    return Json{{"id", p.id},
                {"group", group_to_json(*p.group)},
                {"ranks", p.ranks},
                {"differentials", std::move(diffs)},
                {"augmentation", to_json(p.augmentation)}};
}

/// Parses and validates; any failed check becomes a ValidationError naming the degree.
inline Resolution resolution_from_json(const Json& j, const Limits& limits = default_limits(), ValidationOptions opt = {}) {
    if (!j.is_object()) throw ValidationError("resolution must be a JSON object");
    for (const char* key : {"group", "ranks", "differentials", "augmentation"})
        if (!j.contains(key)) throw ValidationError(std::string("resolution is missing \"") + key + "\"");
    Resolution p;
    p.group = group_from_json(j.at("group"), limits);
    p.id = j.value("id", std::string("file"));
    for (const auto& r : j.at("ranks")) p.ranks.push_back(index_from_json(r));
    p.augmentation = int_vector_from_json(j.at("augmentation"));
    const auto& diffs = j.at("differentials");
    if (!diffs.is_array() || p.ranks.empty() || diffs.size() + 1 != p.ranks.size())
        throw ValidationError("resolution needs exactly one differential per positive degree");
    const std::size_t order = p.group->order();
    for (std::size_t k = 1; k <= diffs.size(); ++k) {
        const auto& d = diffs[k - 1];
        const std::size_t rows = p.ranks[k - 1], cols = p.ranks[k];
        if (!d.is_array() || d.size() != rows) throw ValidationError("d_" + std::to_string(k) + " must have " + std::to_string(rows) + " rows");
        ZGMatrix::Builder b(p.group, rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            if (!d[r].is_array() || d[r].size() != cols)
                throw ValidationError("d_" + std::to_string(k) + " row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
            for (std::size_t c = 0; c < cols; ++c) {
                IntVector e = int_vector_from_json(d[r][c]);
                if (e.size() != order) throw ValidationError("d_" + std::to_string(k) + " entry has length " + std::to_string(e.size()) + ", expected |G|");
                b.add(r, c, e);
            }
        }
        p.differentials.push_back(std::move(b).build());
    }
    require_valid(p, opt);
    return p;
}

inline Resolution load_resolution(const std::filesystem::path& path, const Limits& limits = default_limits(), ValidationOptions opt = {}) {
    try {
        return resolution_from_json(read_json_file(path), limits, opt);
    } catch (const Json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

inline void save_resolution(const std::filesystem::path& path, const Resolution& p) {
    write_text_file(path, resolution_to_json(p).dump(1) + "\n");
}

// ---------------------------------------------------------------------------
// Results.

inline Json homology_to_json(const std::string& group, const HomologyGroup& h) {
    Json gens = Json::array();
    for (const auto& g : h.generators()) gens.push_back(to_json(g));
    return Json{{"group", group}, {"degree", h.degree()}, {"invariant_factors", to_json(h.invariant_factors())}, {"generators", std::move(gens)}};
}

inline Json product_table_to_json(const ProductTable& t) {
    Json entries = Json::array();
    for (const auto& e : t.entries)
        entries.push_back(Json{{"n", e.n}, {"m", e.m}, {"a", e.a}, {"b", e.b}, {"join", to_json(e.join)}, {"composition", to_json(e.composition)}, {"agree", e.agree}});
    return Json{{"group", t.group}, {"resolution", t.resolution}, {"entries", std::move(entries)}};
}

inline std::string join_coords(const IntVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + v[i].str();
    return s;
}

/// One row per entry; class coordinates are ';'-separated inside one field.
inline std::string product_table_to_csv(const ProductTable& t) {
    std::ostringstream os;
    os << "group,resolution,n,m,a,b,join,composition,agree\n";
    for (const auto& e : t.entries)
        os << t.group << ',' << t.resolution << ',' << e.n << ',' << e.m << ',' << e.a << ',' << e.b << ',' << join_coords(e.join) << ','
           << join_coords(e.composition) << ',' << (e.agree ? "true" : "false") << '\n';
    return os.str();
}

}  // namespace tatecup
