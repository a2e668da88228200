#pragma once

// Independent reference implementations used only by the tests.  Everything
// here is deliberately written by a different method than the library code it
// checks: elementary symmetric sums by explicit subset enumeration instead of
// the coefficient recurrence, radii by plain bisection instead of Newton,
// gradients by central differences instead of dual numbers.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracles {

// ---------------------------------------------------------------- symmetric

// S0..Sn by brute-force subset enumeration (2^n subsets); n <= ~20.
inline std::vector<double> brute_elementary(const std::vector<double>& lambda) {
    const std::size_t n = lambda.size();
    std::vector<double> s(n + 1, 0.0);
    s[0] = 1.0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        double prod = 1.0;
        int bits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                prod *= lambda[i];
                ++bits;
            }
        }
        s[static_cast<std::size_t>(bits)] += prod;
    }
    return s;
}

// --------------------------------------------------------------- closed forms

// Flat-core surface tube (n=2, k=1): r(t) = asinh(e^{-t} sinh 2r0) / 2.
inline double radius_21(double r0, double t) {
    return 0.5 * std::asinh(std::exp(-t) * std::sinh(2.0 * r0));
}

// Umbilic family (k = n): sinh r(t) = e^{-t/n} sinh r0.
inline double radius_umbilic(int n, double r0, double t) {
    return std::asinh(std::exp(-t / static_cast<double>(n)) * std::sinh(r0));
}

// Geodesic spheres (k = 0): cosh r(t) = e^{-t/n} cosh r0, extinct when <= 1.
inline double radius_spherical(int n, double r0, double t) {
    const double c = std::exp(-t / static_cast<double>(n)) * std::cosh(r0);
    return c <= 1.0 ? 0.0 : std::acosh(c);
}

// Extinction time of the k = 0 family: t = n ln cosh r0.
inline double extinction_spherical(int n, double r0) {
    return static_cast<double>(n) * std::log(std::cosh(r0));
}

// Lifetime of the mean-curvature speed S1 on (2,1): T0 = ln(cosh 2r0) / 4.
inline double lifetime_s1_21(double r0) { return 0.25 * std::log(std::cosh(2.0 * r0)); }

// --------------------------------------------------------------- bisection

// Radius of the harmonic-speed flow at time t for any (n,k), k >= 1, solved
// by 200 plain bisections of the conservation law
//   k ln sinh r + (n-k) ln cosh r = k ln sinh r0 + (n-k) ln cosh r0 - t.
inline double radius_bisection(int n, int k, double r0, double t) {
    if (k == 0) return radius_spherical(n, r0, t);
    const auto g = [&](double r) {
        return k * std::log(std::sinh(r)) + (n - k) * std::log(std::cosh(r));
    };
    const double target = g(r0) - t;
    double hi = r0;
    double lo = r0;
    while (g(lo) > target) lo *= 0.5;
    if (lo == hi) return r0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > target)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------- derivative

// Central-difference gradient of f : R^n -> double.
template <class F>
std::vector<double> central_diff_grad(const F& f, const std::vector<double>& x, double h) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<double> lo = x, hi = x;
        lo[i] -= h;
        hi[i] += h;
        g[i] = (f(hi) - f(lo)) / (2.0 * h);
    }
    return g;
}

// -------------------------------------------------------------------- random

// Deterministic uniform sampling matching the library's bit-to-double rule.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double u01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(u01() * static_cast<double>(hi - lo + 1));
    }
};

inline std::vector<double> random_lambdas(Rng& rng, int n, double lo, double hi) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

// ------------------------------------------------------- random expressions

// Random expression text exercising the whole grammar: numbers (plain and
// scientific), S-symbols, builtins, all binary operators, integer powers,
// parentheses, unary minus.  Every produced string parses; evaluation may
// still divide by zero, which round-trip tests never do.
inline std::string random_expr(Rng& rng, int n, int depth) {
    const auto number = [&]() -> std::string {
        switch (rng.uniform_int(0, 4)) {
            case 0: return std::to_string(rng.uniform_int(1, 9));
            case 1: return "0.5";
            case 2: return "2.25";
            case 3: return "1e-2";
            default: return "3.5e3";
        }
    };
    const auto atom = [&]() -> std::string {
        switch (rng.uniform_int(0, 3)) {
            case 0: return number();
            case 1: return "S" + std::to_string(rng.uniform_int(0, n));
            case 2: return "harmonic";
            default: return "mean";
        }
    };
    if (depth <= 0) return atom();
    switch (rng.uniform_int(0, 6)) {
        case 0: return atom();
        case 1: return "(" + random_expr(rng, n, depth - 1) + ")";
        case 2: return "-(" + random_expr(rng, n, depth - 1) + ")";
        case 3: {
            const int e = rng.uniform_int(-4, 4);
            return atom() + "^" + std::to_string(e);
        }
        case 4:
            return random_expr(rng, n, depth - 1) + (rng.u01() < 0.5 ? " + " : " - ") +
                   random_expr(rng, n, depth - 1);
        case 5:
            return random_expr(rng, n, depth - 1) + "*" + random_expr(rng, n, depth - 1);
        default:
            return random_expr(rng, n, depth - 1) + "/" + random_expr(rng, n, depth - 1);
    }
}

// Random expression that is smooth (and differentiable) on lambda in
// [0.5, 3]^n: only +, -, *, division by nonzero constants, and powers with
// exponent 1..3.  Used for gradient-versus-central-difference checks.
inline std::string random_smooth_expr(Rng& rng, int n, int depth) {
    const auto atom = [&]() -> std::string {
        switch (rng.uniform_int(0, 3)) {
            case 0: return std::to_string(rng.uniform_int(1, 4));
            case 1: return "S" + std::to_string(rng.uniform_int(1, n));
            case 2: return "harmonic";
            default: return "mean";
        }
    };
    if (depth <= 0) return atom();
    switch (rng.uniform_int(0, 5)) {
        case 0: return atom();
        case 1: return "(" + random_smooth_expr(rng, n, depth - 1) + ")";
        case 2: return atom() + "^" + std::to_string(rng.uniform_int(1, 3));
        case 3:
            return random_smooth_expr(rng, n, depth - 1) + (rng.u01() < 0.5 ? " + " : " - ") +
                   random_smooth_expr(rng, n, depth - 1);
        case 4:
            return random_smooth_expr(rng, n, depth - 1) + "*" +
                   random_smooth_expr(rng, n, depth - 1);
        default:
            return random_smooth_expr(rng, n, depth - 1) + "/" +
                   std::to_string(rng.uniform_int(2, 5));
    }
}

}  // namespace oracles
