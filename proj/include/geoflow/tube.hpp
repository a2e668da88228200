#pragma once

// Geometry of equidistant tubes of radius r around a totally geodesic
// k-dimensional core inside a hyperbolic (n+1)-manifold.  Such a tube is an
// n-dimensional hypersurface whose principal curvatures come in two blocks:
// k copies of tanh(r) (directions along the core) and n-k copies of coth(r)
// (directions around it).

#include <vector>

#include "geoflow/constants.hpp"
#include "geoflow/errors.hpp"

namespace geoflow {

struct TubeConfig {
    int n = 2;  // hypersurface dimension, >= 1
    int k = 1;  // core dimension, 0 <= k <= n
};

// Throws DomainError unless n >= 1 and 0 <= k <= n.
void validate(const TubeConfig& cfg);

struct TubeState {
    double r = 0.0;                // tube radius
    std::vector<double> lambdas;   // principal curvatures, ascending
    double F = 0.0;                // speed value at those curvatures
    double H = 0.0;                // mean curvature sum: k*tanh(r) + (n-k)*coth(r)
    double K = 0.0;                // Gauss-Kronecker product: tanh(r)^k * coth(r)^(n-k)
    double area_factor = 0.0;      // cosh(r)^k * sinh(r)^(n-k)
};

// Principal curvatures of the radius-r tube, ascending: k copies of tanh(r)
// then n-k copies of coth(r).  Requires 0 < r <= r_max; r == 0 is allowed
// only when k == n (the curvatures stay finite there).
std::vector<double> principal_curvatures(const TubeConfig& cfg, double r);

// cosh(r)^k * sinh(r)^(n-k); the tube's area element relative to the core.
// Requires 0 <= r <= r_max.
double area_factor(const TubeConfig& cfg, double r);

// H = k*tanh(r) + (n-k)*coth(r), same domain as principal_curvatures.
double mean_curvature(const TubeConfig& cfg, double r);

// tanh(r)^k * coth(r)^(n-k), with the overlapping powers cancelled first so
// that k == n-k yields exactly 1.  Same domain as principal_curvatures.
double gauss_kronecker(const TubeConfig& cfg, double r);

// Full state bundle; F is filled by the caller-supplied speed value.
TubeState tube_state(const TubeConfig& cfg, double r, double speed_value);

// Residual of the radial Riccati equation lambda'(r) + lambda(r)^2 = 1 for
// each principal curvature, using a central difference with step dr.
// Requires r > 0, r - dr > 0, and 0 < dr <= 1e-4.
std::vector<double> riccati_residual(const TubeConfig& cfg, double r, double dr);

}  // namespace geoflow
