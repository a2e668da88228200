#pragma once

// Finite vs infinite lifetime for radial flows.  Near r = 0 every S_m/S_l
// speed behaves like a power of coth(r); the sign of that exponent decides
// whether the lifetime integral T0 = integral of dr/h(r) converges.  Three
// routes are provided: the exact exponent table for S_m/S_l, a numeric
// exponent fit for arbitrary parsed speeds, and the quadrature itself.

#include <cstddef>
#include <optional>
#include <string>

#include "geoflow/radial_flow.hpp"
#include "geoflow/symfun.hpp"
#include "geoflow/tube.hpp"

namespace geoflow {

enum class LifetimeVerdict { Infinite, Finite, Degenerate };
enum class LifetimeMethod { ExactTable, NumericEstimate, Quadrature };

const char* to_string(LifetimeVerdict v);

// Cross-check between the exponent-sign verdict and the quadrature verdict.
struct AgreementRecord {
    int exact_exponent = 0;
    double numeric_exponent = 0.0;
    LifetimeVerdict exponent_verdict = LifetimeVerdict::Degenerate;
    LifetimeVerdict quadrature_verdict = LifetimeVerdict::Degenerate;
    bool agree = false;
};

struct LifetimeClassification {
    double exponent = 0.0;  // coth-exponent e with h ~ (coth r)^e as r -> 0
    LifetimeVerdict verdict = LifetimeVerdict::Degenerate;
    double t0 = 0.0;        // Finite: the lifetime; Infinite: +infinity
    std::string reason;     // Degenerate: why no verdict was reached
    LifetimeMethod method = LifetimeMethod::Quadrature;
    std::optional<AgreementRecord> agreement;
    std::size_t panels = 0;  // dyadic panels examined by the quadrature
};

// Exponent of coth(r) in S_m/S_l near r = 0 on the (n,k) tube:
// e(j) = j for j <= n-k, else 2(n-k)-j; returns e(m) - e(l).
// The lifetime is infinite exactly when the result is <= -1, equivalently
// |m-(n-k)| > |l-(n-k)|.
int exact_exponent(int n, int k, int m, int l);

// Least-squares slope of ln h(r) against ln coth(r) on 20 log-spaced radii
// in [1e-6, 1e-3]; the slope is the coth-exponent of the speed.  Throws
// ComputeError when h is non-positive or non-finite on the grid.
double numeric_exponent(const TubeConfig& cfg, const SpeedExpr& speed);

// T0 = integral over (0, r0] of dr/h(r), split at delta = min(r0/2, 1e-2):
// adaptive quadrature above delta, dyadically shrinking panels below.  The
// panels decide convergence: a panel below the cutoff ends the sum (finite);
// a run of non-decreasing panels together with a numeric exponent <= -0.9
// declares divergence (infinite); exhausting the panel budget yields a
// Degenerate verdict.
LifetimeClassification lifetime_quadrature(const FlowProblem& problem);

// Verdict for speed S_m/S_l on the (n,k) tube from the exact exponent sign,
// cross-checked against lifetime_quadrature.  A disagreement between the two
// routes throws ComputeError: it would mean a defect, not a data point.
LifetimeClassification classify_lifetime(int n, int k, int m, int l, double r0);

}  // namespace geoflow
