#pragma once

// Word specifications over a generator set and the limit-point / limit-disc
// classification of the composition sequence they generate.
//
// Classification is exact for eventually periodic words: the tangency-chain
// condition is a tail condition decided on the period, and the product of
// the gammas over one period decides convergence of the gamma series by
// block comparison with a geometric series.
//
// The exact limit disc comes from conjugating each tangent generator to an
// affine map a w + b of the right half-plane via
//   phi_p(z) = (z + p) / (-z + p),   phi_p : unit disc -> right half-plane,
// under which the nested images are the half-planes { Re w >= t_n } with
//   t_n = sum_{k<=n} a_1 ... a_{k-1} Re(b_k),
// and a_k equals the gamma of the k-th letter.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "moebius.hpp"
#include "tangency.hpp"

namespace limitdisc {

// An eventually periodic word: finite prefix, then the period repeated
// forever. An empty period restricts the word to simulation over the
// prefix only; classification requires a nonempty period.
struct WordSpec {
    std::vector<std::size_t> prefix;
    std::vector<std::size_t> period;

    std::size_t letter(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return period[(i - prefix.size()) % period.size()];
    }

    // number of letters available; infinite when the period is nonempty
    bool finite_only() const { return period.empty(); }
    std::size_t prefix_length() const { return prefix.size(); }

    void validate(const GeneratorSet& F, bool need_period = true) const {
        for (std::size_t i : prefix)
            if (i >= F.size()) throw ParseError("word letter index out of range");
        for (std::size_t i : period)
            if (i >= F.size()) throw ParseError("word letter index out of range");
        if (need_period && period.empty())
            throw ParseError("classification requires a word with a nonempty period");
    }
};

struct LimitTangentResult {
    bool eventually_tangent = false;
    // first index from which the tangency chain holds onward (0 if everywhere)
    std::size_t tail_start = 0;
};

// Condition: the pair (f_n, f_{n+1}) is admissible iff there is a tangency
// graph edge f_n -> f_{n+1}. Pairs starting inside the prefix occur once;
// pairs starting inside the period (including the wrap-around) recur forever.
inline LimitTangentResult is_limit_tangent(const GeneratorSet& F, const WordSpec& w) {
    w.validate(F);
    const std::size_t m = w.prefix.size(), L = w.period.size();
    LimitTangentResult res;
    res.eventually_tangent = true;
    for (std::size_t i = 0; i < m + L; ++i) {
        const bool ok = F.edge(w.letter(i), w.letter(i + 1));
        if (ok) continue;
        if (i < m) {
            res.tail_start = i + 1; // finite violation; chain starts after it
        } else {
            res.eventually_tangent = false; // recurs every period
        }
    }
    if (!res.eventually_tangent) res.tail_start = 0;
    return res;
}

struct GammaSeriesResult {
    bool converges = false;
    double period_product = 1.0;
    bool borderline = false; // product within 1e-12 of 1
};

// The gamma series converges iff the product of the gammas over one period
// is < 1; a finite prefix only rescales the series by a positive constant.
inline GammaSeriesResult gamma_series_test(const GeneratorSet& F, const WordSpec& w) {
    w.validate(F);
    double P = 1.0;
    for (std::size_t i : w.period) {
        const auto& g = F[i].data;
        if (!g.tangent)
            throw MissingGammaError("non-tangent generator '" + F[i].name + "' has no gamma");
        P *= *g.gamma;
    }
    for (std::size_t i : w.prefix)
        if (!F[i].data.tangent)
            throw MissingGammaError("non-tangent generator '" + F[i].name + "' has no gamma");
    GammaSeriesResult r;
    r.period_product = P;
    r.borderline = std::abs(P - 1.0) <= 1e-12;
    r.converges = P < 1.0 - 1e-12;
    return r;
}

enum class Verdict { LimitPoint, LimitDisc };

inline const char* to_string(Verdict v) {
    return v == Verdict::LimitDisc ? "limit-disc" : "limit-point";
}

struct Classification {
    Verdict verdict = Verdict::LimitPoint;
    bool limit_tangent = false;
    std::size_t tail_start = 0;
    double gamma_period_product = 0.0;
    bool borderline = false;
};

// Limit-disc iff the tangency chain eventually holds and the gamma series
// converges. The series test runs on the periodic tail only: when the chain
// holds, every period letter is tangent, and prefix letters (tangent or
// not) rescale the series without affecting convergence.
inline Classification classify_word(const GeneratorSet& F, const WordSpec& w) {
    const auto lt = is_limit_tangent(F, w);
    Classification c;
    c.limit_tangent = lt.eventually_tangent;
    c.tail_start = lt.tail_start;
    if (!lt.eventually_tangent) {
        c.verdict = Verdict::LimitPoint;
        // period product still reported when defined
        double P = 1.0;
        bool defined = true;
        for (std::size_t i : w.period) {
            if (!F[i].data.tangent) {
                defined = false;
                break;
            }
            P *= *F[i].data.gamma;
        }
        c.gamma_period_product = defined ? P : 0.0;
        return c;
    }
    WordSpec tail;
    tail.period = w.period;
    const auto gs = gamma_series_test(F, tail);
    c.gamma_period_product = gs.period_product;
    c.borderline = gs.borderline;
    c.verdict = gs.converges ? Verdict::LimitDisc : Verdict::LimitPoint;
    return c;
}

// phi_p(z) = (z + p)/(-z + p): unit disc -> right half-plane, p -> inf,
// fixes j under the Poincaré extension.
inline MobiusMap halfplane_chart(Complex p) { return MobiusMap(1.0, p, -1.0, p); }

// Affine self-map of the right half-plane: w -> a w + b with a > 0, Re b >= 0.
struct AffineMap {
    double a = 1.0;
    Complex b{0.0, 0.0};

    Complex operator()(Complex w) const { return a * w + b; }
};

// Conjugate f to the half-plane: h = phi_{z_out} o f o phi_{z_in}^{-1}.
// Requires |z_in| = |z_out| = 1 and f(z_in) = z_out, which forces h to fix
// infinity, i.e. to be affine. The slope equals 1/|f'(z_in)|.
inline AffineMap conjugate_to_halfplane(const MobiusMap& f, Complex z_in, Complex z_out,
                                        double tol = kChordalTol) {
    if (std::abs(std::abs(z_in) - 1.0) > tol || std::abs(std::abs(z_out) - 1.0) > tol)
        throw NotTangentPairError("conjugation anchors must lie on the unit circle");
    if (!chordal_close(f(ExtComplex(z_in)), ExtComplex(z_out), tol))
        throw NotTangentPairError("map does not send z_in to z_out");
    const MobiusMap h = halfplane_chart(z_out) * f * halfplane_chart(z_in).inverse();
    if (std::abs(h.c) > 1e-9) throw NotAffineError("conjugate is not affine; inconsistent anchors");
    const Complex slope = h.a / h.d;
    if (std::abs(slope.imag()) > 1e-9 || slope.real() <= 0.0)
        throw NotAffineError("conjugate slope is not a positive real");
    AffineMap m;
    m.a = slope.real();
    m.b = h.b / h.d;
    if (m.b.real() < -kChordalTol) throw NotAffineError("conjugate offset has negative real part");
    return m;
}

// Image of the half-plane { Re w >= t } under phi_p^{-1}: the disc internally
// tangent to the unit circle at p with radius 1/(1+t).
inline Disc tangent_disc_from_offset(Complex p, double t) {
    if (!(t > 0.0)) throw SeriesDivergesError("half-plane offset must be positive");
    return Disc(p * (t / (1.0 + t)), 1.0 / (1.0 + t));
}

struct LimitDiscResult {
    Disc disc = Disc::unit();
    double t_infinity = 0.0;       // limiting half-plane offset
    std::size_t dropped_prefix = 0; // letters discarded before the chain starts
};

// Exact limit disc of a limit-disc word. Any non-conforming prefix is
// dropped (the tangency chain is a tail condition); the result describes
// the truncated sequence. The offset series has, per letter f,
//   a = gamma_f  and  b = offset of phi_{beta_f} o f o phi_{alpha_f}^{-1},
// and for an eventually periodic word it sums in closed form: a finite
// prefix sum plus a geometric block tail with ratio = product of the a's
// over one period.
inline LimitDiscResult limit_disc_exact(const GeneratorSet& F, const WordSpec& w) {
    const auto cls = classify_word(F, w);
    if (cls.verdict != Verdict::LimitDisc)
        throw NotLimitDiscError("word is not of limit-disc type");

    const std::size_t k0 = cls.tail_start; // chain holds from this letter on; k0 <= prefix length
    std::vector<std::size_t> head(w.prefix.begin() + static_cast<std::ptrdiff_t>(k0), w.prefix.end());

    // per-letter affine data
    std::vector<AffineMap> per_letter(F.size());
    std::vector<bool> have(F.size(), false);
    auto affine_of = [&](std::size_t i) -> const AffineMap& {
        if (!have[i]) {
            const auto& g = F[i];
            if (!g.data.tangent) throw MissingGammaError("non-tangent generator in the chain");
            per_letter[i] = conjugate_to_halfplane(g.map, g.data.alpha.value, g.data.beta.value, F.tol());
            have[i] = true;
        }
        return per_letter[i];
    };

    double t = 0.0, A = 1.0; // partial sum and running product over the head
    for (std::size_t i : head) {
        const auto& m = affine_of(i);
        t += A * m.b.real();
        A *= m.a;
    }
    double S = 0.0, R = 1.0; // one period block: sum and ratio
    for (std::size_t i : w.period) {
        const auto& m = affine_of(i);
        S += R * m.b.real();
        R *= m.a;
    }
    if (!(R < 1.0)) throw SeriesDivergesError("period gamma product not below 1");
    const double t_inf = t + A * S / (1.0 - R);

    const std::size_t first = head.empty() ? w.period.front() : head.front();
    LimitDiscResult res;
    res.t_infinity = t_inf;
    res.dropped_prefix = k0;
    res.disc = tangent_disc_from_offset(F[first].data.beta.value, t_inf);
    return res;
}

// Running mean of log gamma over a word prefix; negative values are the
// root-test signal that the gamma series converges.
inline double q_statistic(std::span<const double> gamma_log_prefix) {
    if (gamma_log_prefix.empty()) throw EmptyPrefixError("q statistic of an empty prefix");
    double s = 0.0;
    for (double x : gamma_log_prefix) s += x;
    return s / static_cast<double>(gamma_log_prefix.size());
}

} // namespace limitdisc
