#pragma once

// Forward-mode dual numbers: value + one derivative channel. Used to obtain
// exact (to roundoff) gradients of speed expressions by seeding d = 1 on one
// principal curvature at a time.

namespace geoflow {

struct Dual {
    double v = 0.0;  // value
    double d = 0.0;  // derivative

    Dual() = default;
    Dual(double value) : v(value), d(0.0) {}  // NOLINT: implicit constants
    Dual(double value, double deriv) : v(value), d(deriv) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) {
    const double inv = 1.0 / b.v;
    const double q = a.v * inv;
    return {q, (a.d - q * b.d) * inv};
}
inline Dual& operator+=(Dual& a, Dual b) { a = a + b; return a; }

inline bool operator<(Dual a, Dual b) { return a.v < b.v; }
inline bool operator==(Dual a, Dual b) { return a.v == b.v; }

// Scalar access helpers so templated code can read "the value" uniformly.
inline double value_of(double x) { return x; }
inline double value_of(Dual x) { return x.v; }

}  // namespace geoflow
