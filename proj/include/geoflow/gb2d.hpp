#pragma once

// Surface-flow bookkeeping for n = 2: the Gauss-Bonnet area law
// V(t) = (V0 + C0)e^{-t} - C0 with C0 = 2*pi*chi, its three genus cases,
// maximum-principle envelopes for the speed F and mean curvature H, the
// shrinking-sphere barrier, and the blow-up / decay checks along radial
// trajectories.

#include <cstddef>
#include <optional>
#include <vector>

#include "geoflow/radial_flow.hpp"

namespace geoflow {

enum class GenusCase { I, II, III };  // C0 < 0, C0 = 0, C0 > 0

const char* to_string(GenusCase c);

struct SurfaceCase {
    int genus = 0;
    double c0 = 0.0;  // 2*pi*chi = 4*pi*(1 - genus)
    double v0 = 0.0;  // initial area
    GenusCase which = GenusCase::III;
    std::optional<double> extinction_time;  // case III: ln((v0+c0)/c0)
    double limit_area = 0.0;                // case I: -c0; case II/III: 0
    bool nonexistence_flag = false;         // case III under the F < 1/2 barrier
};

// Genus/area classification; genus >= 0, v0 > 0.
SurfaceCase classify_surface(int genus, double v0);

// V(t) = (v0 + c0)e^{-t} - c0.  Requires t >= 0 and, in case III,
// t <= extinction_time.
double area_law(const SurfaceCase& surface, double t);

// Upper envelope for the speed: (n^2 + (F0^-2 - n^2)e^{2t/n})^{-1/2}.
// Requires 0 < F0 < 1/n (the envelope hypothesis) and t >= 0.
double envelope_upper_F(int n, double f0, double t);

// Lower envelope F0_min * e^{-t}; requires F0_min > 0, t >= 0.
double envelope_lower_F(double f0_min, double t);

// Upper envelope H0_max * e^{(2n + 1/n) t}; requires H0_max > 0, t >= 0.
double envelope_upper_H(int n, double h0_max, double t);

// Speed of the shrinking-sphere barrier: coth(r)/n > 1/n.  Requires r > 0.
double sphere_barrier_F(int n, double r);

struct EnvelopeViolation {
    double t = 0.0;
    const char* bound = "";  // "lower_F", "upper_F", "upper_H"
    double value = 0.0;
    double limit = 0.0;
};

struct EnvelopeReport {
    bool ok = false;
    int n = 0;
    double f0 = 0.0;
    double h0 = 0.0;
    double f_final = 0.0;
    std::size_t samples = 0;
    std::vector<EnvelopeViolation> violations;
};

// Per-sample envelope containment along a harmonic-speed trajectory:
// lower_F(F(0),t) - eps <= F(t) <= upper_F(n,F(0),t) + eps and
// H(t) <= upper_H(n,H(0),t)*(1+eps), eps = 1e-9.  Requires a trajectory
// produced with the harmonic speed and F(0) < 1/n.
EnvelopeReport check_envelopes(const Trajectory& traj);

struct DecayPoint {
    double t = 0.0;
    double value = 0.0;  // F(t)^2 * area_scale * area_factor(r(t))
};

// The series F^2 * Area sampled along the trajectory; area_scale is the
// r-independent factor of the tube area (for a tube around a closed
// geodesic of length L it is 2*pi*L).  Requires harmonic speed and k >= 1.
std::vector<DecayPoint> decay_functional(const Trajectory& traj, double area_scale);

struct BlowupResult {
    bool reached = false;
    double t_star = 0.0;    // first sample time with H > threshold
    double h_star = 0.0;    // H at that sample
    double h_final = 0.0;   // H at the last sample
    double threshold = kBlowupThresholdH;
};

// Mean-curvature blow-up along the flat-core tube flow (n=2, k=1, harmonic
// speed): finds the first sample with H above the named threshold and
// asserts H is strictly increasing along the whole trajectory (ComputeError
// otherwise).  Any other configuration is rejected with DomainError.
BlowupResult blowup_check(const Trajectory& traj);

}  // namespace geoflow
