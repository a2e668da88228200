#include "geoflow/gb2d.hpp"

#include <cmath>
#include <string>

namespace geoflow {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kEnvelopeSlack = kEnvelopeEps;
}  // namespace

const char* to_string(GenusCase c) {
    switch (c) {
        case GenusCase::I: return "I";
        case GenusCase::II: return "II";
        case GenusCase::III: return "III";
    }
    return "?";
}

SurfaceCase classify_surface(int genus, double v0) {
    if (genus < 0) throw DomainError("genus must be >= 0");
    if (!(v0 > 0.0)) throw DomainError("initial area v0 must be > 0");
    SurfaceCase sc;
    sc.genus = genus;
    sc.v0 = v0;
    sc.c0 = 4.0 * kPi * (1.0 - genus);
    if (sc.c0 < 0.0) {
        sc.which = GenusCase::I;
        sc.limit_area = -sc.c0;  // area settles at 4*pi*(genus-1)
    } else if (sc.c0 == 0.0) {
        sc.which = GenusCase::II;
        sc.limit_area = 0.0;  // area decays to zero; curvature must blow up
    } else {
        sc.which = GenusCase::III;
        sc.limit_area = 0.0;
        sc.extinction_time = std::log((v0 + sc.c0) / sc.c0);
        // A closed surface with speed below the horosphere value 1/n cannot
        // exist in this case: the shrinking-sphere barrier forces F > 1/2.
        sc.nonexistence_flag = true;
    }
    return sc;
}

double area_law(const SurfaceCase& surface, double t) {
    if (!(t >= 0.0)) throw DomainError("area_law requires t >= 0");
    if (surface.which == GenusCase::III && surface.extinction_time &&
        t > *surface.extinction_time)
        throw DomainError("t=" + std::to_string(t) + " is beyond the extinction time " +
                          std::to_string(*surface.extinction_time));
    return (surface.v0 + surface.c0) * std::exp(-t) - surface.c0;
}

double envelope_upper_F(int n, double f0, double t) {
    if (n < 1) throw DomainError("envelope_upper_F requires n >= 1");
    if (!(t >= 0.0)) throw DomainError("envelope_upper_F requires t >= 0");
    if (!(f0 > 0.0) || !(f0 < 1.0 / n))
        throw DomainError("envelope_upper_F requires 0 < F0 < 1/n (got F0=" + std::to_string(f0) +
                          ", n=" + std::to_string(n) + ")");
    const double nn = static_cast<double>(n) * n;
    return 1.0 / std::sqrt(nn + (1.0 / (f0 * f0) - nn) * std::exp(2.0 * t / n));
}

double envelope_lower_F(double f0_min, double t) {
    if (!(f0_min > 0.0)) throw DomainError("envelope_lower_F requires F0_min > 0");
    if (!(t >= 0.0)) throw DomainError("envelope_lower_F requires t >= 0");
    return f0_min * std::exp(-t);
}

double envelope_upper_H(int n, double h0_max, double t) {
    if (n < 1) throw DomainError("envelope_upper_H requires n >= 1");
    if (!(h0_max > 0.0)) throw DomainError("envelope_upper_H requires H0_max > 0");
    if (!(t >= 0.0)) throw DomainError("envelope_upper_H requires t >= 0");
    return h0_max * std::exp((2.0 * n + 1.0 / n) * t);
}

double sphere_barrier_F(int n, double r) {
    if (n < 1) throw DomainError("sphere_barrier_F requires n >= 1");
    if (!(r > 0.0)) throw DomainError("sphere_barrier_F requires r > 0");
    return 1.0 / (n * std::tanh(r));
}

EnvelopeReport check_envelopes(const Trajectory& traj) {
    if (!traj.problem.speed.is_harmonic())
        throw DomainError("envelope bounds are stated for the harmonic speed");
    if (traj.samples.empty()) throw DomainError("trajectory has no samples");
    const int n = traj.problem.cfg.n;
    EnvelopeReport rep;
    rep.n = n;
    rep.f0 = traj.samples.front().state.F;
    rep.h0 = traj.samples.front().state.H;
    if (!(rep.f0 > 0.0) || !(rep.f0 < 1.0 / n))
        throw DomainError("envelope check requires F(0) < 1/n, got F(0)=" +
                          std::to_string(rep.f0));
    for (const FlowSample& s : traj.samples) {
        const double lo = envelope_lower_F(rep.f0, s.t);
        const double hi = envelope_upper_F(n, rep.f0, s.t);
        const double hh = envelope_upper_H(n, rep.h0, s.t);
        if (s.state.F < lo - kEnvelopeSlack)
            rep.violations.push_back({s.t, "lower_F", s.state.F, lo});
        if (s.state.F > hi + kEnvelopeSlack)
            rep.violations.push_back({s.t, "upper_F", s.state.F, hi});
        if (s.state.H > hh * (1.0 + kEnvelopeSlack))
            rep.violations.push_back({s.t, "upper_H", s.state.H, hh});
    }
    rep.samples = traj.samples.size();
    rep.f_final = traj.samples.back().state.F;
    rep.ok = rep.violations.empty();
    return rep;
}

std::vector<DecayPoint> decay_functional(const Trajectory& traj, double area_scale) {
    if (!traj.problem.speed.is_harmonic())
        throw DomainError("decay functional is stated for the harmonic speed");
    if (traj.problem.cfg.k < 1)
        throw DomainError("decay functional requires k >= 1 (infinite-lifetime tubes)");
    std::vector<DecayPoint> series;
    series.reserve(traj.samples.size());
    for (const FlowSample& s : traj.samples)
        series.push_back({s.t, s.state.F * s.state.F * area_scale * s.state.area_factor});
    return series;
}

BlowupResult blowup_check(const Trajectory& traj) {
    if (traj.problem.cfg.n != 2 || traj.problem.cfg.k != 1)
        throw DomainError("blow-up check applies to the flat-core tube (n=2, k=1) only");
    if (!traj.problem.speed.is_harmonic())
        throw DomainError("blow-up check is stated for the harmonic speed");
    if (traj.samples.size() < 2) throw DomainError("trajectory too short for a blow-up check");
    BlowupResult res;
    double prev = traj.samples.front().state.H;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const double h = traj.samples[i].state.H;
        if (!(h > prev))
            throw ComputeError("mean curvature failed to increase strictly at t=" +
                               std::to_string(traj.samples[i].t));
        prev = h;
    }
    for (const FlowSample& s : traj.samples) {
        if (s.state.H > kBlowupThresholdH) {
            res.reached = true;
            res.t_star = s.t;
            res.h_star = s.state.H;
            break;
        }
    }
    res.h_final = traj.samples.back().state.H;
    return res;
}

}  // namespace geoflow
