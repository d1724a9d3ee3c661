#pragma once

// Orbit simulation for composition sequences: nested image discs of the
// unit disc, escape data in hyperbolic 3-space, ideal limits, pointwise
// convergence, and the disc-tangency diagnostic.
//
// The running composition is kept as a Frobenius-normalized matrix plus a
// log scale, so escape quantities never overflow. Disc extraction switches
// representation with depth:
//   - while the true matrix norm is small, discs come straight from the
//     matrix (pole reflection in closed form);
//   - once a tangency chain is active, discs come from the half-plane
//     offset recursion, which is the only parametrization that stays
//     conditioned at depth (in raw disc coordinates the tangency gap is
//     repelling with multiplier 1/gamma per step, so any forward scheme
//     loses the limit disc to rounding);
//   - otherwise discs are rebuilt inside-out from the letters, which is
//     accurate whenever the radius is collapsing.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "classify.hpp"
#include "errors.hpp"
#include "moebius.hpp"
#include "tangency.hpp"

namespace limitdisc {

struct OrbitTrace {
    std::vector<Disc> discs;                  // F_n(unit disc), n = 1..N
    std::vector<double> dist_j;               // rho(j, F_n(j))
    std::vector<double> heights;              // height of F_n(j)
    std::vector<double> escape_partial_sums;  // sum_{k<=n} exp(-rho(j, F_k(j)))
    std::vector<H3Point> ideal_points;        // F_n(j)

    std::size_t size() const { return discs.size(); }
};

namespace detail {

// True map = exp(sigma) * M with M kept at Frobenius norm 2 and the true
// determinant equal to 1.
struct ScaledMap {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};
    double sigma = 0.0;

    double frob2() const { return std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d); }

    void append(const MobiusMap& f) {
        const Complex na = a * f.a + b * f.c, nb = a * f.b + b * f.d;
        const Complex nc = c * f.a + d * f.c, nd = c * f.b + d * f.d;
        a = na, b = nb, c = nc, d = nd;
        const double s = std::sqrt(frob2() / 4.0);
        a /= s, b /= s, c /= s, d /= s;
        sigma += std::log(s);
        if (!std::isfinite(sigma) || !std::isfinite(a.real()) || !std::isfinite(d.real()))
            throw OrbitUnstableError("orbit matrix lost finiteness");
    }

    // log of cosh rho(j, F(j)) = (true Frobenius norm^2) / 2
    double log_cosh_dist() const { return 2.0 * sigma + std::log(frob2() / 2.0); }

    double dist_j() const {
        const double lc = log_cosh_dist();
        if (lc > 40.0) return lc + std::log(2.0); // acosh(x) ~ log(2x) for large x
        const double ch = std::exp(lc);
        return std::acosh(ch < 1.0 ? 1.0 : ch);
    }

    H3Point ideal_point() const {
        const double cd = std::norm(c) + std::norm(d);
        const Complex z = (b * std::conj(d) + a * std::conj(c)) / cd;
        const double lt = -(2.0 * sigma + std::log(cd));
        return {z.real(), z.imag(), std::exp(lt)};
    }

    bool small_enough(double log_norm2_cap) const {
        return 2.0 * sigma + std::log(frob2()) <= log_norm2_cap;
    }

    MobiusMap as_mobius() const {
        const double s = std::exp(sigma);
        return MobiusMap(a * s, b * s, c * s, d * s);
    }
};

inline Disc cascade_disc(const GeneratorSet& F, const WordSpec& w, std::size_t n) {
    Disc D = Disc::unit();
    for (std::size_t i = n; i-- > 0;) D = image_disc(F[w.letter(i)].map, D);
    return D;
}

// Disc image under a scaled map, with the determinant factored analytically
// so the radius survives extreme scales. Declines (nullopt) when the pole
// sits close enough to the disc that the closed form would cancel badly.
inline std::optional<Disc> image_disc_scaled(const ScaledMap& f, const Disc& D) {
    const Complex czd = f.c * D.center + f.d;
    const double u2 = std::norm(czd);
    const double v2 = D.radius * D.radius * std::norm(f.c);
    const double delta = u2 - v2;
    if (!(delta > 1e-4 * (u2 + v2))) return std::nullopt;
    const Complex num =
        (f.a * D.center + f.b) * std::conj(czd) - D.radius * D.radius * f.a * std::conj(f.c);
    const double log_radius = std::log(D.radius) - 2.0 * f.sigma - std::log(delta);
    return Disc(num / delta, std::max(std::exp(log_radius), 1e-300));
}

// matrix route stays accurate while norm^2 <= 1e3 (error ~ eps * norm^2)
inline constexpr double kMatrixRouteLogCap = 6.907755278982137; // log(1e3)

} // namespace detail

// Simulate F_n = f_1 ... f_n for n = 1..N over the letters of w.
inline OrbitTrace iterate_orbit(const GeneratorSet& F, const WordSpec& w, std::size_t N) {
    if (N < 1) throw Error("orbit length must be at least 1");
    w.validate(F, /*need_period=*/false);
    if (w.finite_only() && w.prefix.size() < N)
        throw ParseError("finite word too short for the requested orbit length");

    OrbitTrace tr;
    tr.discs.reserve(N);
    tr.dist_j.reserve(N);
    tr.heights.reserve(N);
    tr.escape_partial_sums.reserve(N);
    tr.ideal_points.reserve(N);

    detail::ScaledMap Fn;

    // tangency-chain bookkeeping: the active chain covers a tail of the
    // letters seen so far; chain_prefix holds the composition before it
    bool chain_valid = false;
    Complex chain_z0{1.0, 0.0};
    double chain_t = 0.0, chain_A = 1.0;
    std::optional<detail::ScaledMap> chain_prefix;

    std::vector<std::optional<AffineMap>> affine(F.size());
    auto affine_of = [&](std::size_t i) -> const AffineMap& {
        if (!affine[i])
            affine[i] = conjugate_to_halfplane(F[i].map, F[i].data.alpha.value, F[i].data.beta.value, F.tol());
        return *affine[i];
    };

    double partial = 0.0;
    std::size_t prev_letter = 0;
    for (std::size_t n = 1; n <= N; ++n) {
        const std::size_t letter = w.letter(n - 1);
        const bool tangent = F[letter].data.tangent;
        if (!(chain_valid && n > 1 && F.edge(prev_letter, letter))) {
            chain_valid = tangent;
            chain_t = 0.0;
            chain_A = 1.0;
            chain_prefix = (n > 1) ? std::optional(Fn) : std::nullopt;
            if (tangent) chain_z0 = F[letter].data.beta.value;
        }
        if (chain_valid) {
            const AffineMap& m = affine_of(letter);
            chain_t += chain_A * m.b.real();
            chain_A *= m.a;
        }

        Fn.append(F[letter].map);
        prev_letter = letter;

        const double rho = Fn.dist_j();
        tr.dist_j.push_back(rho);
        tr.ideal_points.push_back(Fn.ideal_point());
        tr.heights.push_back(tr.ideal_points.back().t);
        partial += std::exp(-rho);
        tr.escape_partial_sums.push_back(partial);

        std::optional<Disc> disc;
        if (Fn.small_enough(detail::kMatrixRouteLogCap)) {
            disc = image_disc(Fn.as_mobius(), Disc::unit());
        } else if (chain_valid && chain_t < 1e290) {
            const Disc D = tangent_disc_from_offset(chain_z0, chain_t);
            disc = chain_prefix ? detail::image_disc_scaled(*chain_prefix, D) : D;
        }
        tr.discs.push_back(disc ? *disc : detail::cascade_disc(F, w, n));
    }
    return tr;
}

struct EscapeReport {
    bool cauchy_tail = false;        // last quarter of partial sums moved < 1e-8
    double tail_sum_estimate = 0.0;  // geometric extrapolation of the remaining sum
    bool height_inequality_ok = false; // exp(-rho_n) <= height_n + 1e-12 for every n
};

inline EscapeReport rapid_escape_report(const OrbitTrace& tr) {
    const std::size_t n = tr.size();
    if (n < 20) throw TraceTooShortError("escape report needs at least 20 orbit steps");
    EscapeReport rep;
    const std::size_t q3 = (3 * n) / 4;
    rep.cauchy_tail = tr.escape_partial_sums[n - 1] - tr.escape_partial_sums[q3 - 1] < 1e-8;

    const double t1 = std::exp(-tr.dist_j[n - 2]);
    const double t2 = std::exp(-tr.dist_j[n - 1]);
    const double ratio = t1 > 0.0 ? t2 / t1 : 0.0;
    rep.tail_sum_estimate = (ratio > 0.0 && ratio < 1.0)
                                ? t2 * ratio / (1.0 - ratio)
                                : (t2 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());

    rep.height_inequality_ok = true;
    for (std::size_t i = 0; i < n; ++i)
        if (std::exp(-tr.dist_j[i]) > tr.heights[i] + 1e-12) rep.height_inequality_ok = false;
    return rep;
}

struct IdealLimit {
    ExtComplex q{0.0, 0.0};
    double resid = 0.0;   // chordal diameter of the last 10 boundary shadows
    bool converged = false;
};

inline IdealLimit ideal_limit(const OrbitTrace& tr, double tol = 1e-7) {
    const std::size_t n = tr.size();
    if (n < 20) throw TraceTooShortError("ideal limit needs at least 20 orbit steps");
    IdealLimit lim;
    lim.q = ExtComplex(tr.ideal_points[n - 1].shadow());
    for (std::size_t i = n - 10; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            lim.resid = std::max(
                lim.resid, chordal_metric(ExtComplex(tr.ideal_points[i].shadow()),
                                          ExtComplex(tr.ideal_points[j].shadow())));
    lim.converged = lim.resid <= tol && tr.heights[n - 1] < tol;
    return lim;
}

struct PointReport {
    ExtComplex point{0.0, 0.0};
    bool converged = false;
    ExtComplex limit{0.0, 0.0};            // last computed value F_N(x)
    std::vector<std::size_t> anchor_hits;  // n with F_n(x) back at the chain anchor
};

struct ConvergenceReport {
    ExtComplex q{0.0, 0.0};
    double q_resid = 0.0;
    std::vector<ExtComplex> exceptional_set; // alphas of letters occurring infinitely often
    std::vector<PointReport> per_point;
};

// Track F_n(x) for each sample point. Chain-active words are evaluated
// through the half-plane conjugation (the direct cascade is exponentially
// unstable exactly at the exceptional points); other words cascade
// directly, which is stable because their orbits contract.
inline ConvergenceReport pointwise_convergence(const GeneratorSet& F, const WordSpec& w,
                                               std::size_t N, std::span<const ExtComplex> points,
                                               double tol = 1e-7) {
    w.validate(F, /*need_period=*/false);
    if (N < 50) throw TraceTooShortError("pointwise convergence needs at least 50 steps");
    if (w.finite_only() && w.prefix.size() < N)
        throw ParseError("finite word too short for the requested orbit length");
    for (const auto& p : points)
        if (p.is_inf() || std::abs(p.value) > 1.0 + 1e-9)
            throw PointOutsideClosedDiscError("sample point outside the closed unit disc");

    ConvergenceReport rep;
    for (std::size_t i : w.period)
        if (F[i].data.tangent) {
            bool dup = false;
            for (const auto& x : rep.exceptional_set)
                if (chordal_close(x, F[i].data.alpha, F.tol())) dup = true;
            if (!dup) rep.exceptional_set.push_back(F[i].data.alpha);
        }

    // ideal limit from a metrics-only pass
    {
        detail::ScaledMap Fn;
        std::vector<H3Point> last;
        for (std::size_t n = 1; n <= N; ++n) {
            Fn.append(F[w.letter(n - 1)].map);
            if (n + 10 > N) last.push_back(Fn.ideal_point());
        }
        rep.q = ExtComplex(last.back().shadow());
        for (std::size_t i = 0; i < last.size(); ++i)
            for (std::size_t j = i + 1; j < last.size(); ++j)
                rep.q_resid = std::max(rep.q_resid,
                                       chordal_metric(ExtComplex(last[i].shadow()),
                                                      ExtComplex(last[j].shadow())));
    }

    // chain structure (for eventually periodic words only)
    bool chain = false;
    std::size_t k0 = 0;
    if (!w.period.empty()) {
        const auto lt = is_limit_tangent(F, w);
        chain = lt.eventually_tangent;
        k0 = lt.tail_start;
    }

    Complex anchor{1.0, 0.0};
    std::vector<double> As;          // A_n over chain letters, 1-indexed from k0
    std::vector<Complex> Bs;
    std::vector<std::size_t> zidx;   // letter at chain position, for phi_{z_n}
    if (chain) {
        anchor = F[w.letter(k0)].data.beta.value;
        double A = 1.0;
        Complex B{0.0, 0.0};
        for (std::size_t i = k0; i < N; ++i) {
            const auto& g = F[w.letter(i)];
            const AffineMap m =
                conjugate_to_halfplane(g.map, g.data.alpha.value, g.data.beta.value, F.tol());
            B += A * m.b;
            A *= m.a;
            As.push_back(A);
            Bs.push_back(B);
            zidx.push_back(w.letter(i));
        }
    }

    for (const auto& x : points) {
        PointReport pr;
        pr.point = x;
        std::vector<ExtComplex> vals(N);
        if (chain) {
            const MobiusMap anchor_chart_inv = halfplane_chart(anchor).inverse();
            for (std::size_t n = 1; n <= N; ++n) {
                ExtComplex v;
                if (n <= k0) {
                    v = x;
                    for (std::size_t i = n; i-- > 0;) v = F[w.letter(i)].map(v);
                } else {
                    const std::size_t m = n - k0 - 1;
                    const Complex zn = F[zidx[m]].data.alpha.value;
                    // the anchors are only known to the set tolerance; a point
                    // that close to the chart pole is the exceptional hit
                    ExtComplex wv;
                    if (chordal_metric(x, ExtComplex(zn)) <= F.tol())
                        wv = ExtComplex::infinity();
                    else
                        wv = halfplane_chart(zn)(x);
                    ExtComplex hv;
                    if (wv.is_inf())
                        hv = ExtComplex::infinity();
                    else
                        hv = ExtComplex(As[m] * wv.value + Bs[m]);
                    v = anchor_chart_inv(hv);
                    for (std::size_t i = k0; i-- > 0;) v = F[w.letter(i)].map(v);
                }
                vals[n - 1] = v;
            }
        } else {
            for (std::size_t n = 1; n <= N; ++n) {
                ExtComplex v = x;
                for (std::size_t i = n; i-- > 0;) v = F[w.letter(i)].map(v);
                vals[n - 1] = v;
            }
        }
        double diam = 0.0;
        for (std::size_t i = N - 10; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j)
                diam = std::max(diam, chordal_metric(vals[i], vals[j]));
        pr.converged = diam < tol;
        pr.limit = vals[N - 1];
        if (!pr.converged && chain) {
            const ExtComplex za(anchor);
            for (std::size_t n = 1; n <= N; ++n)
                if (chordal_close(vals[n - 1], za, 10.0 * tol)) pr.anchor_hits.push_back(n);
        }
        rep.per_point.push_back(std::move(pr));
    }
    return rep;
}

struct ChainCheck {
    bool eventually_tangent = false;
    std::ptrdiff_t witness_index = -1; // first index from which every (n, n+2) pair is tangent
};

// A nested disc sequence is eventually tangent iff D_n touches D_{n+2}
// for all large n. The test is relative to the outer radius: an absolute
// tolerance would pass vacuously once the radii collapse below it.
inline ChainCheck tangency_chain_check(std::span<const Disc> discs, double tol = 1e-6) {
    ChainCheck res;
    if (discs.size() < 3) return res;
    std::ptrdiff_t last_fail = -1;
    const std::size_t pairs = discs.size() - 2;
    for (std::size_t i = 0; i < pairs; ++i) {
        const double reach = std::abs(discs[i].center - discs[i + 2].center) + discs[i + 2].radius;
        const double gap = discs[i].radius - reach;
        if (gap > tol * discs[i].radius) last_fail = static_cast<std::ptrdiff_t>(i);
    }
    if (last_fail == static_cast<std::ptrdiff_t>(pairs) - 1) {
        res.eventually_tangent = false;
        res.witness_index = -1;
    } else {
        res.eventually_tangent = true;
        res.witness_index = last_fail + 1;
    }
    return res;
}

} // namespace limitdisc
