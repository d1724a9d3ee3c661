#pragma once

// Möbius transformations z -> (az+b)/(cz+d) on the extended plane, their
// action on Euclidean discs, and the Poincaré extension to the upper
// half-space model of hyperbolic 3-space.
//
// Matrices are stored normalized to ad - bc = 1 (principal square root of
// the determinant, so the scalar has Re >= 0, ties broken toward Im >= 0).
// With that convention the standard identities apply directly:
//   |f'(z)|            = 1 / |cz+d|^2
//   cosh rho(j, f(j))  = (|a|^2+|b|^2+|c|^2+|d|^2) / 2

#include <cmath>
#include <utility>

#include "errors.hpp"
#include "ext_complex.hpp"

namespace limitdisc {

struct MobiusMap {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

    MobiusMap() = default;

    MobiusMap(Complex a_, Complex b_, Complex c_, Complex d_) : a(a_), b(b_), c(c_), d(d_) {
        Complex det = a * d - b * c;
        if (std::abs(det) <= kDegenerateDetTol)
            throw DegenerateMapError("mobius map has (near-)zero determinant");
        if (det.imag() == 0.0) det = Complex(det.real(), 0.0); // kill -0 so sqrt lands on Im >= 0
        const Complex s = std::sqrt(det);
        a /= s;
        b /= s;
        c /= s;
        d /= s;
    }

    static MobiusMap identity() { return MobiusMap(); }

    // Entries (0,1;1,0) have det -1; normalized this is w -> 1/w.
    static MobiusMap inversion() { return MobiusMap(0.0, 1.0, 1.0, 0.0); }

    // det stays 1, no renormalization needed.
    MobiusMap inverse() const {
        MobiusMap m;
        m.a = d;
        m.b = -b;
        m.c = -c;
        m.d = a;
        return m;
    }

    Complex det() const { return a * d - b * c; }

    ExtComplex operator()(const ExtComplex& z) const {
        if (z.is_inf()) {
            if (std::abs(c) == 0.0) return ExtComplex::infinity();
            return ExtComplex(a / c);
        }
        const Complex num = a * z.value + b;
        const Complex den = c * z.value + d;
        if (std::abs(den) == 0.0) return ExtComplex::infinity();
        const Complex w = num / den;
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return ExtComplex::infinity();
        return ExtComplex(w);
    }
};

// Matrix product; f * g acts as z -> f(g(z)).
inline MobiusMap operator*(const MobiusMap& f, const MobiusMap& g) {
    return MobiusMap(f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
                     f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d);
}

inline MobiusMap compose(const MobiusMap& f, const MobiusMap& g) { return f * g; }

inline ExtComplex apply(const MobiusMap& f, const ExtComplex& z) { return f(z); }

// |f'(z)| for finite z away from the pole.
inline double derivative_modulus(const MobiusMap& f, Complex z) {
    const double den = std::abs(f.c * z + f.d);
    if (den < 1e-14) throw PoleDerivativeError("derivative requested at the pole");
    return 1.0 / (den * den);
}

// Chordal derivative f#(z) = (1+|z|^2)/(1+|f(z)|^2) |f'(z)|.
// Values at or onto infinity are reduced by conjugating with w -> 1/w,
// which is a chordal isometry.
inline double chordal_derivative(const MobiusMap& f, const ExtComplex& z) {
    if (z.is_inf()) return chordal_derivative(f * MobiusMap::inversion(), ExtComplex(0.0, 0.0));
    const ExtComplex w = f(z);
    if (w.is_inf()) return chordal_derivative(MobiusMap::inversion() * f, z);
    const double den = std::abs(f.c * z.value + f.d);
    const double zz = std::norm(z.value);
    const double ww = std::norm(w.value);
    return (1.0 + zz) / (1.0 + ww) / (den * den);
}

// Euclidean disc in the plane.
struct Disc {
    Complex center{0.0, 0.0};
    double radius = 1.0;

    Disc() = default;
    Disc(Complex c, double r) : center(c), radius(r) {
        if (!(radius > 0.0)) throw Error("disc radius must be positive");
    }

    static Disc unit() { return Disc(Complex(0.0, 0.0), 1.0); }

    bool contains(Complex z, double slack = 0.0) const {
        return std::abs(z - center) <= radius + slack;
    }
};

namespace detail {

// Pole-exteriority measure for f acting on D(center r): positive iff the
// pole lies strictly outside the closed disc, and |Delta| = r |det| / r'.
inline double pole_delta(const MobiusMap& f, const Disc& D) {
    const double u = std::abs(f.c * D.center + f.d);
    const double v = D.radius * std::abs(f.c);
    return u * u - v * v;
}

// Image disc in closed form (pole reflection reduced algebraically):
//   center' = [ (a z + b) conj(c z + d) - r^2 a conj(c) ] / Delta
//   radius' = r |det| / |Delta|
// Valid whenever the pole is off the boundary circle; for Delta < 0 the
// returned disc is the image of the *boundary* (the interior maps onto
// its exterior).
inline Disc image_circle(const MobiusMap& f, const Disc& D) {
    const double delta = pole_delta(f, D);
    const Complex num =
        (f.a * D.center + f.b) * std::conj(f.c * D.center + f.d) - D.radius * D.radius * f.a * std::conj(f.c);
    const double adet = std::abs(f.det());
    return Disc(num / delta, D.radius * adet / std::abs(delta));
}

} // namespace detail

// Image f(D) as a Euclidean disc. Requires the pole of f strictly outside
// the closure of D; that always holds for maps sending the unit disc into
// itself applied to sub-discs of it.
inline Disc image_disc(const MobiusMap& f, const Disc& D) {
    if (std::abs(f.c) > 0.0) {
        const double delta = detail::pole_delta(f, D);
        const double u = std::abs(f.c * D.center + f.d);
        const double v = D.radius * std::abs(f.c);
        // distance from the pole to the boundary circle
        const double dist = delta / (std::abs(f.c) * (u + v));
        if (dist <= kPoleTol) throw PoleInsideDiscError("pole of the map inside (or on) the disc");
    }
    return detail::image_circle(f, D);
}

struct InClassResult {
    bool in_class = false;
    Disc image = Disc::unit(); // f(unit disc) when in class, else the image of its boundary circle
};

// Membership in the family of maps sending the unit disc strictly inside
// itself, together with the image disc.
inline InClassResult in_class_md(const MobiusMap& f) {
    const Disc unit = Disc::unit();
    if (std::abs(f.c) > 0.0 && detail::pole_delta(f, unit) <= 0.0) {
        // Pole inside or on the closed unit disc: the interior maps onto the
        // exterior of the returned circle (or a half-plane), so never in class.
        const double delta = detail::pole_delta(f, unit);
        if (std::abs(delta) < 1e-12) {
            // Pole essentially on the unit circle; the image degenerates to a
            // half-plane. Report a huge disc through the finite images.
            return {false, Disc(Complex(0.0, 0.0), 1e300)};
        }
        return {false, detail::image_circle(f, unit)};
    }
    const Disc E = detail::image_circle(f, unit);
    const double reach = std::abs(E.center) + E.radius;
    const bool inside = reach <= 1.0 + 1e-12;
    const bool proper = E.radius < 1.0 - 1e-12 || std::abs(E.center) > 1e-12;
    return {inside && proper, E};
}

// Point of the upper half-space model H^3 = { (x, y, t) : t > 0 }.
struct H3Point {
    double x = 0.0, y = 0.0, t = 1.0;

    H3Point() = default;
    H3Point(double x_, double y_, double t_) : x(x_), y(y_), t(t_) {}

    static H3Point j() { return {0.0, 0.0, 1.0}; }

    Complex shadow() const { return Complex(x, y); }
};

// Poincaré extension: with det = 1 and P = z + t j,
//   f(P) = ( (az+b) conj(cz+d) + a conj(c) t^2,  t ) / (|cz+d|^2 + |c|^2 t^2).
inline H3Point apply_h3(const MobiusMap& f, const H3Point& P) {
    const Complex z(P.x, P.y);
    const Complex czd = f.c * z + f.d;
    const double den = std::norm(czd) + std::norm(f.c) * P.t * P.t;
    const Complex zo = ((f.a * z + f.b) * std::conj(czd) + f.a * std::conj(f.c) * P.t * P.t) / den;
    return {zo.real(), zo.imag(), P.t / den};
}

// Hyperbolic distance between two half-space points.
inline double hyp_dist(const H3Point& P, const H3Point& Q) {
    const double dx = P.x - Q.x, dy = P.y - Q.y, dt = P.t - Q.t;
    const double ch = 1.0 + (dx * dx + dy * dy + dt * dt) / (2.0 * P.t * Q.t);
    return std::acosh(ch < 1.0 ? 1.0 : ch);
}

// rho(j, f(j)) from the matrix norm identity (entries normalized to det 1).
inline double hyp_dist_from_j(const MobiusMap& f) {
    const double s = std::norm(f.a) + std::norm(f.b) + std::norm(f.c) + std::norm(f.d);
    const double ch = s / 2.0;
    return std::acosh(ch < 1.0 ? 1.0 : ch);
}

} // namespace limitdisc
