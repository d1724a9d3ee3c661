#pragma once

// Hausdorff dimension of the set of limit-disc words inside the full
// sequence space with the base-|F| metric.
//
// Two exact regimes and a conservative bound:
//  - all gammas below 1: dimension = log(spectral radius) / log b when the
//    tangency graph has a cycle, else 0;
//  - complete tangency graph: three-way dispatch on the gammas, the mixed
//    case minimizing log(sum gamma_i^{-s}) / log b over s >= 0;
//  - otherwise both expressions are upper bounds and are combined.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "classify.hpp"
#include "errors.hpp"
#include "tangency.hpp"

namespace limitdisc {

struct PowerSumMin {
    double s_star = 0.0;  // argmin over s >= 0
    double log_value = 0.0; // log sum gamma_i^{-s_star}
};

namespace detail {

// log sum_i gamma_i^{-s} and its derivative, evaluated stably.
inline double log_power_sum(std::span<const double> gammas, double s) {
    double m = -1e300;
    for (double g : gammas) m = std::max(m, -s * std::log(g));
    double acc = 0.0;
    for (double g : gammas) acc += std::exp(-s * std::log(g) - m);
    return m + std::log(acc);
}

inline double log_power_sum_deriv(std::span<const double> gammas, double s) {
    double m = -1e300;
    for (double g : gammas) m = std::max(m, -s * std::log(g));
    double num = 0.0, den = 0.0;
    for (double g : gammas) {
        const double w = std::exp(-s * std::log(g) - m);
        num += w * std::log(g);
        den += w;
    }
    return -num / den; // strictly increasing in s
}

} // namespace detail

// Minimize g(s) = log sum gamma_i^{-s}. Needs at least one gamma on each
// side of 1, which makes g' change sign; the root is bracketed and
// bisected (g' is strictly increasing, so this cannot stall).
inline PowerSumMin minimize_power_sum(std::span<const double> gammas) {
    bool above = false, below = false;
    for (double g : gammas) {
        if (!(g > 0.0)) throw Error("gammas must be positive");
        above = above || g > 1.0;
        below = below || g < 1.0;
    }
    if (!above || !below)
        throw NoInteriorMinimumError("need a gamma above 1 and a gamma below 1");

    double lo = -1.0, hi = 1.0;
    while (detail::log_power_sum_deriv(gammas, lo) > 0.0) lo *= 2.0;
    while (detail::log_power_sum_deriv(gammas, hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double d = detail::log_power_sum_deriv(gammas, mid);
        if (d == 0.0) {
            lo = hi = mid;
            break;
        }
        (d < 0.0 ? lo : hi) = mid;
    }
    const double s0 = 0.5 * (lo + hi);
    PowerSumMin r;
    r.s_star = std::max(s0, 0.0);
    r.log_value = detail::log_power_sum(gammas, r.s_star);
    return r;
}

enum class DimensionMethod { SpectralRadius, CompleteGraph, UpperBoundOnly };

inline const char* to_string(DimensionMethod m) {
    switch (m) {
        case DimensionMethod::SpectralRadius: return "spectral-radius";
        case DimensionMethod::CompleteGraph: return "complete-graph";
        default: return "upper-bound-only";
    }
}

struct DimensionReport {
    double value = 0.0;
    DimensionMethod method = DimensionMethod::UpperBoundOnly;
    std::optional<double> s_star;
    std::string details;
};

namespace detail {

inline std::vector<double> tangent_gammas(const GeneratorSet& F) {
    std::vector<double> gs;
    for (const auto& gen : F)
        if (gen.data.tangent) gs.push_back(*gen.data.gamma);
    return gs;
}

inline void require_base(const GeneratorSet& F) {
    if (F.size() < 2)
        throw LogBaseDegenerateError("sequence-space metric degenerates for a single generator");
}

} // namespace detail

// Exact value under the hypothesis that every tangent generator has
// gamma < 1 (the gamma series then always converges): the dimension is
// carried by the infinite paths of the tangency graph.
inline DimensionReport dimension_spectral(const GeneratorSet& F, const TangencyGraph& G) {
    detail::require_base(F);
    std::vector<std::string> offenders;
    for (const auto& gen : F)
        if (gen.data.tangent && !(*gen.data.gamma < 1.0)) offenders.push_back(gen.name);
    if (!offenders.empty()) {
        std::ostringstream os;
        os << "tangent generators with gamma >= 1:";
        for (const auto& n : offenders) os << ' ' << n;
        throw HypothesisViolatedError(os.str());
    }
    DimensionReport rep;
    rep.method = DimensionMethod::SpectralRadius;
    if (!has_cycle(G)) {
        rep.value = 0.0;
        rep.details = "tangency graph has no cycle; no infinite chains exist";
        return rep;
    }
    const double rho = spectral_radius(G);
    rep.value = std::log(rho) / std::log(static_cast<double>(F.size()));
    rep.details = "log(spectral radius) / log(alphabet size)";
    return rep;
}

// Exact value when the tangency graph is complete (all generators share a
// boundary fixed point): dispatch on the gammas.
inline DimensionReport dimension_complete_graph(const GeneratorSet& F, const TangencyGraph& G) {
    detail::require_base(F);
    if (!is_complete(G)) throw GraphNotCompleteError("tangency graph is not complete");
    std::vector<double> gs;
    for (const auto& gen : F) gs.push_back(*gen.data.gamma); // complete graph => all tangent
    const bool all_ge = std::all_of(gs.begin(), gs.end(), [](double g) { return g >= 1.0; });
    const bool all_lt = std::all_of(gs.begin(), gs.end(), [](double g) { return g < 1.0; });
    DimensionReport rep;
    rep.method = DimensionMethod::CompleteGraph;
    if (all_ge) {
        rep.value = 0.0;
        rep.details = "all gammas >= 1; the gamma series never converges";
        return rep;
    }
    if (all_lt) {
        rep.value = 1.0;
        rep.details = "all gammas < 1; every word is of limit-disc type";
        return rep;
    }
    const auto m = minimize_power_sum(gs);
    rep.value = m.log_value / std::log(static_cast<double>(F.size()));
    rep.s_star = m.s_star;
    rep.details = "min over s >= 0 of log(sum gamma^-s) / log(alphabet size)";
    return rep;
}

// General case: defer to whichever exact regime applies, otherwise return
// the smaller of the two expressions as an upper bound.
inline DimensionReport dimension_upper_bound(const GeneratorSet& F, const TangencyGraph& G) {
    detail::require_base(F);
    const auto tg = detail::tangent_gammas(F);
    const bool all_lt = std::all_of(tg.begin(), tg.end(), [](double g) { return g < 1.0; });
    if (all_lt) return dimension_spectral(F, G);
    if (is_complete(G)) return dimension_complete_graph(F, G);

    const double logb = std::log(static_cast<double>(F.size()));
    DimensionReport rep;
    rep.method = DimensionMethod::UpperBoundOnly;
    double bound = has_cycle(G) ? std::log(spectral_radius(G)) / logb : 0.0;
    std::string details = "chain bound log(rho)/log b";
    const bool any_lt = std::any_of(tg.begin(), tg.end(), [](double g) { return g < 1.0; });
    const bool any_gt = std::any_of(tg.begin(), tg.end(), [](double g) { return g > 1.0; });
    if (!any_lt) {
        // every tangent gamma >= 1: the gamma series cannot converge
        bound = 0.0;
        details = "all tangent gammas >= 1; the gamma series never converges";
    } else if (any_gt) {
        const auto m = minimize_power_sum(tg);
        const double series_bound = m.log_value / logb;
        if (series_bound < bound) {
            bound = series_bound;
            rep.s_star = m.s_star;
            details = "series bound min_s log(sum gamma^-s)/log b";
        } else {
            details += " (below series bound)";
        }
    }
    rep.value = std::max(bound, 0.0);
    rep.details = details;
    return rep;
}

// Test-fixture constructor: a generator tangent at p with prescribed gamma,
// built by conjugating w -> gamma w + offset back from the half-plane.
inline MobiusMap make_tangent_generator(double gamma, Complex offset, Complex p) {
    if (!(gamma > 0.0)) throw ConstructionFailedError("gamma must be positive");
    if (!(offset.real() > 0.0)) throw ConstructionFailedError("offset must have positive real part");
    if (std::abs(std::abs(p) - 1.0) > 1e-12) throw ConstructionFailedError("p must lie on the unit circle");
    const MobiusMap chart = halfplane_chart(p);
    const MobiusMap affine(std::sqrt(gamma), offset / std::sqrt(gamma), 0.0, 1.0 / std::sqrt(gamma));
    const MobiusMap f = chart.inverse() * affine * chart;
    const auto data = tangency_data(f);
    if (!data.tangent || !chordal_close(data.alpha, ExtComplex(p), 1e-7) ||
        !chordal_close(data.beta, ExtComplex(p), 1e-7) || std::abs(*data.gamma - gamma) > 1e-7 * gamma)
        throw ConstructionFailedError("constructed generator failed verification");
    return f;
}

} // namespace limitdisc
