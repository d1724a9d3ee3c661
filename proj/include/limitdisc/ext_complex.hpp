#pragma once

#include <cmath>
#include <complex>
#include <ostream>

namespace limitdisc {

using Complex = std::complex<double>;

// Default tolerances. Equality on the extended plane is always chordal.
inline constexpr double kChordalTol = 1e-9;
inline constexpr double kDegenerateDetTol = 1e-14;
inline constexpr double kPoleTol = 1e-12;

// A point of the extended complex plane: either a finite value or the
// point at infinity. Infinity is a real sentinel here (the beta of a
// non-tangent generator), so it is a tagged state, not a large float.
struct ExtComplex {
    Complex value{0.0, 0.0};
    bool inf = false;

    ExtComplex() = default;
    ExtComplex(Complex z) : value(z) {}                   // NOLINT(google-explicit-constructor)
    ExtComplex(double re, double im) : value(re, im) {}

    static ExtComplex infinity() {
        ExtComplex z;
        z.inf = true;
        return z;
    }

    bool is_inf() const { return inf; }
    bool finite() const { return !inf; }

    friend std::ostream& operator<<(std::ostream& os, const ExtComplex& z) {
        if (z.inf) return os << "inf";
        return os << z.value.real() << (z.value.imag() < 0 ? "" : "+") << z.value.imag() << "i";
    }
};

// Chordal distance on the Riemann sphere, range [0, 2].
//   d(z, w)   = 2|z - w| / sqrt((1+|z|^2)(1+|w|^2))
//   d(z, inf) = 2 / sqrt(1+|z|^2)
inline double chordal_metric(const ExtComplex& z, const ExtComplex& w) {
    if (z.is_inf() && w.is_inf()) return 0.0;
    if (z.is_inf()) return 2.0 / std::hypot(1.0, std::abs(w.value));
    if (w.is_inf()) return 2.0 / std::hypot(1.0, std::abs(z.value));
    const double num = 2.0 * std::abs(z.value - w.value);
    const double den = std::hypot(1.0, std::abs(z.value)) * std::hypot(1.0, std::abs(w.value));
    const double d = num / den;
    return d > 2.0 ? 2.0 : d; // rounding can push slightly past the diameter
}

inline bool chordal_close(const ExtComplex& z, const ExtComplex& w, double tol = kChordalTol) {
    return chordal_metric(z, w) <= tol;
}

} // namespace limitdisc
