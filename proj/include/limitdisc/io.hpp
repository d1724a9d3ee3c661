#pragma once

// JSON serialization of the domain types and the CSV trace format.
//
// Conventions: a finite point of the extended plane is a two-element array
// [re, im]; the point at infinity is the string "inf". A generator file is
//   { "generators": [ { "name": ..., "a": [re,im], "b": ..., "c": ..., "d": ... } ],
//     "tol": optional }
// and a word file is
//   { "prefix": [names...], "period": [names...] }.

#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "classify.hpp"
#include "dimension.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "moebius.hpp"
#include "tangency.hpp"

namespace limitdisc {

using Json = nlohmann::json;

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const ExtComplex& z) {
    if (z.is_inf()) return Json("inf");
    return to_json(z.value);
}

inline Json to_json(const MobiusMap& m) {
    return Json{{"a", to_json(m.a)}, {"b", to_json(m.b)}, {"c", to_json(m.c)}, {"d", to_json(m.d)}};
}

inline Json to_json(const Disc& D) {
    return Json{{"center", to_json(D.center)}, {"radius", D.radius}};
}

inline Complex complex_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(what + ": expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline MobiusMap mobius_from_json(const Json& j, const std::string& what) {
    for (const char* k : {"a", "b", "c", "d"})
        if (!j.contains(k)) throw ParseError(what + ": missing matrix entry '" + k + "'");
    return MobiusMap(complex_from_json(j["a"], what), complex_from_json(j["b"], what),
                     complex_from_json(j["c"], what), complex_from_json(j["d"], what));
}

// Parse a generator file (already loaded as JSON).
inline GeneratorSet generator_set_from_json(const Json& j, double default_tol = kChordalTol) {
    if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
        throw ParseError("generator file needs a nonempty 'generators' array");
    const double tol = j.value("tol", default_tol);
    std::vector<std::pair<std::string, MobiusMap>> entries;
    for (const auto& g : j["generators"]) {
        if (!g.contains("name") || !g["name"].is_string())
            throw ParseError("generator entry without a string 'name'");
        const std::string name = g["name"].get<std::string>();
        entries.emplace_back(name, mobius_from_json(g, "generator '" + name + "'"));
    }
    return GeneratorSet(std::move(entries), tol);
}

inline WordSpec word_from_json(const Json& j, const GeneratorSet& F) {
    WordSpec w;
    auto read = [&](const char* key, std::vector<std::size_t>& out) {
        if (!j.contains(key)) return;
        if (!j[key].is_array()) throw ParseError(std::string("word '") + key + "' must be an array");
        for (const auto& item : j[key]) {
            if (!item.is_string()) throw ParseError("word letters must be generator names");
            out.push_back(F.index_of(item.get<std::string>()));
        }
    };
    read("prefix", w.prefix);
    read("period", w.period);
    return w;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline Json to_json(const TangencyData& t) {
    Json j{{"tangent", t.tangent}, {"alpha", to_json(t.alpha)}, {"beta", to_json(t.beta)}};
    if (t.gamma) j["gamma"] = *t.gamma;
    return j;
}

// Graph report: vertex names, edge list, adjacency matrix, tolerance and
// spectral radius.
inline Json to_json(const TangencyGraph& G, const GeneratorSet& F) {
    Json edges = Json::array();
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = 0; j < G.size(); ++j)
            if (G.adjacency[i][j]) edges.push_back(Json::array({F[i].name, F[j].name}));
    Json names = Json::array();
    for (const auto& g : F) names.push_back(g.name);
    return Json{{"vertices", names},
                {"edges", edges},
                {"adjacency", G.adjacency},
                {"tol", G.tol},
                {"spectral_radius", spectral_radius(G)}};
}

inline Json to_json(const Classification& c) {
    return Json{{"verdict", to_string(c.verdict)},
                {"limit_tangent", c.limit_tangent},
                {"tail_start", c.tail_start},
                {"gamma_period_product", c.gamma_period_product},
                {"borderline", c.borderline}};
}

inline Json to_json(const DimensionReport& r) {
    Json j{{"value", r.value}, {"method", to_string(r.method)}, {"details", r.details}};
    if (r.s_star) j["s_star"] = *r.s_star;
    return j;
}

// Per-step trace columns, one row per n.
inline void write_trace_csv(std::ostream& os, const OrbitTrace& tr) {
    os << "n,radius,center_re,center_im,dist_j,height,partial_sum\n";
    os.precision(17);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        os << (i + 1) << ',' << tr.discs[i].radius << ',' << tr.discs[i].center.real() << ','
           << tr.discs[i].center.imag() << ',' << tr.dist_j[i] << ',' << tr.heights[i] << ','
           << tr.escape_partial_sums[i] << '\n';
    }
}

inline Json to_json(const OrbitTrace& tr) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < tr.size(); ++i)
        rows.push_back(Json{{"n", i + 1},
                            {"disc", to_json(tr.discs[i])},
                            {"dist_j", tr.dist_j[i]},
                            {"height", tr.heights[i]},
                            {"partial_sum", tr.escape_partial_sums[i]}});
    return rows;
}

} // namespace limitdisc
