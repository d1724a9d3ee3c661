#pragma once

// Per-generator tangency invariants and the tangency graph.
//
// For f sending the unit disc strictly inside itself, f(D) is either
// internally tangent to the unit circle at a single point or its closure
// stays in the open disc. In the tangent case alpha/beta are the unique
// unit-circle points with f(alpha) = beta and gamma = 1/|f'(alpha)|; in
// the non-tangent case the conventional sentinels are (0, inf) and gamma
// is left unset. The tangency graph has an edge f -> g iff alpha_f = beta_g.

#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "moebius.hpp"

namespace limitdisc {

struct TangencyData {
    bool tangent = false;
    ExtComplex alpha{0.0, 0.0};
    ExtComplex beta = ExtComplex::infinity();
    std::optional<double> gamma; // present iff tangent
};

inline TangencyData tangency_data(const MobiusMap& f, double tol = kChordalTol) {
    const auto r = in_class_md(f);
    if (!r.in_class) throw NotInMDError("map does not send the unit disc strictly inside itself");
    const Disc& E = r.image;
    const double reach = std::abs(E.center) + E.radius;
    if (1.0 - reach > tol) return {}; // boundary circles stay apart

    TangencyData t;
    t.tangent = true;
    // the unique point of the image boundary on the unit circle
    if (std::abs(E.center) < 1e-300)
        throw NotInMDError("tangent image disc with undefined tangency direction");
    const Complex beta = E.center * (1.0 + E.radius / std::abs(E.center));
    t.beta = ExtComplex(beta);
    t.alpha = f.inverse()(t.beta);
    t.gamma = 1.0 / derivative_modulus(f, t.alpha.value);
    return t;
}

struct Generator {
    std::string name;
    MobiusMap map;
    TangencyData data;
};

// An ordered alphabet of maps, each verified to send the unit disc
// strictly inside itself. Order fixes letter indices 0..size()-1.
class GeneratorSet {
  public:
    GeneratorSet(std::vector<std::pair<std::string, MobiusMap>> entries, double tol = kChordalTol)
        : tol_(tol) {
        if (entries.empty()) throw ParseError("generator set must contain at least one map");
        std::set<std::string> seen;
        std::vector<std::string> offenders;
        for (auto& [name, map] : entries) {
            if (!seen.insert(name).second) throw ParseError("duplicate generator name: " + name);
            if (!in_class_md(map).in_class) {
                offenders.push_back(name);
                continue;
            }
            items_.push_back({name, map, tangency_data(map, tol)});
        }
        if (!offenders.empty()) {
            std::ostringstream os;
            os << "maps not sending the unit disc strictly inside itself:";
            for (const auto& n : offenders) os << ' ' << n;
            throw NotInMDError(os.str());
        }
    }

    std::size_t size() const { return items_.size(); }
    double tol() const { return tol_; }
    const Generator& operator[](std::size_t i) const { return items_[i]; }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < items_.size(); ++i)
            if (items_[i].name == name) return i;
        throw UnknownNameError("unknown generator name: " + name);
    }

    // Edge i -> j iff alpha_i equals beta_j (chordal comparison, so the
    // (0, inf) sentinels of non-tangent maps can never match a circle point).
    bool edge(std::size_t i, std::size_t j) const {
        return chordal_close(items_[i].data.alpha, items_[j].data.beta, tol_);
    }

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

  private:
    std::vector<Generator> items_;
    double tol_;
};

struct TangencyGraph {
    std::vector<std::vector<int>> adjacency; // 0/1, adjacency[i][j] = edge i -> j
    double tol = kChordalTol;

    std::size_t size() const { return adjacency.size(); }
    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& row : adjacency)
            for (int e : row) n += static_cast<std::size_t>(e);
        return n;
    }
};

inline TangencyGraph build_tangency_graph(const GeneratorSet& F, double tol = kChordalTol) {
    if (!(tol > 0.0)) throw Error("graph tolerance must be positive");
    const std::size_t b = F.size();
    TangencyGraph G;
    G.tol = tol;
    G.adjacency.assign(b, std::vector<int>(b, 0));
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j)
            if (chordal_close(F[i].data.alpha, F[j].data.beta, tol)) G.adjacency[i][j] = 1;
    return G;
}

namespace detail {

// Transitive closure by Floyd-Warshall; graphs here are tiny.
inline std::vector<std::vector<bool>> reachability(const TangencyGraph& G) {
    const std::size_t b = G.size();
    std::vector<std::vector<bool>> reach(b, std::vector<bool>(b, false));
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) reach[i][j] = G.adjacency[i][j] != 0;
    for (std::size_t k = 0; k < b; ++k)
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < b; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    return reach;
}

inline std::vector<std::vector<std::size_t>> strongly_connected_components(const TangencyGraph& G) {
    const auto reach = reachability(G);
    const std::size_t b = G.size();
    std::vector<bool> assigned(b, false);
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < b; ++i) {
        if (assigned[i]) continue;
        std::vector<std::size_t> comp{i};
        assigned[i] = true;
        for (std::size_t j = i + 1; j < b; ++j)
            if (!assigned[j] && reach[i][j] && reach[j][i]) {
                comp.push_back(j);
                assigned[j] = true;
            }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Perron root of a nonnegative block by power iteration on (A + I).
// Restricted to one strongly connected component the shifted matrix is
// primitive, so the iteration converges geometrically.
inline double perron_root(const TangencyGraph& G, const std::vector<std::size_t>& comp) {
    const std::size_t n = comp.size();
    if (n == 1) return static_cast<double>(G.adjacency[comp[0]][comp[0]]);
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n))), u(n);
    double lambda = 0.0;
    for (long iter = 0; iter < 1000000; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = v[i]; // the +I shift
            for (std::size_t j = 0; j < n; ++j) s += G.adjacency[comp[i]][comp[j]] * v[j];
            u[i] = s;
        }
        double norm = 0.0;
        for (double x : u) norm += x * x;
        norm = std::sqrt(norm);
        const double prev = lambda;
        lambda = norm;
        for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / norm;
        if (iter > 0 && std::abs(lambda - prev) <= 1e-13 * std::max(lambda, 1.0)) return lambda - 1.0;
    }
    throw NoConvergenceError("power iteration did not converge");
}

} // namespace detail

// A directed cycle exists iff some strongly connected component has size
// at least two or carries a self-loop.
inline bool has_cycle(const TangencyGraph& G) {
    for (std::size_t i = 0; i < G.size(); ++i)
        if (G.adjacency[i][i]) return true;
    for (const auto& comp : detail::strongly_connected_components(G))
        if (comp.size() >= 2) return true;
    return false;
}

// Spectral radius of the adjacency matrix. The spectrum of a digraph is
// the union over its strongly connected components, and on each component
// power iteration on the shifted matrix converges geometrically (plain
// power iteration on the whole matrix stalls on defective reducible
// cases such as [[1,1],[0,1]]).
inline double spectral_radius(const TangencyGraph& G) {
    double rho = 0.0;
    for (const auto& comp : detail::strongly_connected_components(G))
        rho = std::max(rho, detail::perron_root(G, comp));
    return rho;
}

inline bool is_complete(const TangencyGraph& G) {
    if (G.size() == 0) throw Error("empty graph");
    for (const auto& row : G.adjacency)
        for (int e : row)
            if (!e) return false;
    return true;
}

struct CompletenessReport {
    bool complete = false;
    std::optional<Complex> fixed_point;  // the shared boundary fixed point, when complete
    std::optional<std::string> warning;  // set if the fixed-point cross-check fails
};

// A complete tangency graph forces all generators to share one fixed
// boundary point; verify that as a cross-check and warn on mismatch.
inline CompletenessReport check_complete(const GeneratorSet& F, const TangencyGraph& G) {
    CompletenessReport rep;
    rep.complete = is_complete(G);
    if (!rep.complete) return rep;
    const ExtComplex p = F[0].data.alpha;
    for (const auto& gen : F) {
        const bool ok = chordal_close(gen.data.alpha, p, 10.0 * G.tol) &&
                        chordal_close(gen.data.beta, p, 10.0 * G.tol) &&
                        chordal_close(gen.map(p), p, 10.0 * G.tol);
        if (!ok) {
            rep.warning = "complete graph but generator '" + gen.name +
                          "' does not share the common boundary fixed point";
            return rep;
        }
    }
    rep.fixed_point = p.value;
    return rep;
}

} // namespace limitdisc
