#pragma once

// Seeded random fixtures shared across the test suites.

#include <random>
#include <utility>
#include <vector>

#include <limitdisc/classify.hpp>
#include <limitdisc/moebius.hpp>
#include <limitdisc/tangency.hpp>

namespace fixtures {

using limitdisc::Complex;
using limitdisc::Disc;
using limitdisc::GeneratorSet;
using limitdisc::MobiusMap;
using limitdisc::WordSpec;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& r, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(r);
}

inline Complex unit_point(std::mt19937_64& r) {
    const double t = uniform(r, 0.0, 6.283185307179586);
    return {std::cos(t), std::sin(t)};
}

// A generic invertible map, not necessarily sending the disc inside itself.
inline MobiusMap random_mobius(std::mt19937_64& r) {
    std::normal_distribution<double> n(0.0, 1.0);
    while (true) {
        const Complex a(n(r), n(r)), b(n(r), n(r)), c(n(r), n(r)), d(n(r), n(r));
        if (std::abs(a * d - b * c) > 0.1) return MobiusMap(a, b, c, d);
    }
}

// A map sending the unit disc strictly inside itself: a strict affine
// contraction followed by a disc automorphism.
inline MobiusMap random_inclass(std::mt19937_64& r) {
    const double lam = uniform(r, 0.15, 0.8);
    const double mu = uniform(r, 0.0, 0.95 - lam);
    const Complex rot = unit_point(r), shift = mu * unit_point(r);
    const MobiusMap contraction(lam * rot, shift, 0.0, 1.0);
    const Complex z0 = uniform(r, 0.0, 0.7) * unit_point(r);
    const Complex phase = unit_point(r);
    const MobiusMap automorphism(phase, -phase * z0, -std::conj(z0), 1.0);
    return automorphism * contraction;
}

inline Disc random_subdisc(std::mt19937_64& r) {
    const Complex c = uniform(r, 0.0, 0.7) * unit_point(r);
    const double rad = uniform(r, 0.05, 0.95 * (1.0 - std::abs(c)));
    return Disc(c, std::max(rad, 0.01));
}

inline Complex random_interior_point(std::mt19937_64& r) {
    return uniform(r, 0.0, 0.95) * unit_point(r);
}

// The worked three-generator example used throughout the suites.
inline GeneratorSet ghk() {
    const MobiusMap g(Complex(0.0), Complex(0.5), Complex(1.0), Complex(1.5));
    const MobiusMap h(Complex(0.0), Complex(0.5), Complex(1.0), Complex(-1.5));
    const MobiusMap k(Complex(0.0), Complex(-0.5), Complex(1.0), Complex(-1.5));
    return GeneratorSet({{"g", g}, {"h", h}, {"k", k}});
}

inline WordSpec word(std::vector<std::size_t> prefix, std::vector<std::size_t> period) {
    WordSpec w;
    w.prefix = std::move(prefix);
    w.period = std::move(period);
    return w;
}

inline WordSpec random_word(std::mt19937_64& r, std::size_t alphabet, std::size_t max_prefix,
                            std::size_t max_period) {
    std::uniform_int_distribution<std::size_t> letter(0, alphabet - 1);
    std::uniform_int_distribution<std::size_t> plen(0, max_prefix);
    std::uniform_int_distribution<std::size_t> len(1, max_period);
    WordSpec w;
    const std::size_t np = plen(r), nl = len(r);
    for (std::size_t i = 0; i < np; ++i) w.prefix.push_back(letter(r));
    for (std::size_t i = 0; i < nl; ++i) w.period.push_back(letter(r));
    return w;
}

} // namespace fixtures
