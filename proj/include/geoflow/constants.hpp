#pragma once

#include <cstdint>

namespace geoflow {

// ---- geometric domain caps ----

// Largest admissible tube radius. cosh(30) ~ 5.3e12; powers of it for n <= 32
// stay far from double overflow, while radii beyond this are geometrically
// uninteresting here.
inline constexpr double kRMax = 30.0;

// Extinction floor: below this radius tanh/coth evaluation loses relative
// accuracy, so the integrator reports extinction instead of continuing.
inline constexpr double kRFloor = 1e-9;

// Absolute tolerance for refining the extinction time on the final step.
inline constexpr double kExtinctionRefineTol = 1e-10;

// If |dr/dt| exceeds this, the radial speed is blowing up near r = 0 and the
// integrator switches to extinction refinement (tail quadrature).
inline constexpr double kSpeedBlowup = 1e6;

// Largest exponent accepted by conserved-quantity evaluation (e^t overflow guard).
inline constexpr double kTExpMax = 700.0;

// ---- expression limits ----

// Static cap on symbol indices S0..S32.
inline constexpr int kMaxSymbolIndex = 32;

// Power operator accepts integer exponents with |e| <= 16.
inline constexpr int kMaxPowExponent = 16;

// ---- integrator defaults ----

// Default local error tolerances for trajectory integration. Chosen so that
// conserved-quantity drift stays below 1e-8 even where the sensitivity
// d(lnQ)/dr ~ k/r is large (r ~ 1e-5 at the end of long runs).
inline constexpr double kDefaultRelTol = 1e-12;
inline constexpr double kDefaultAbsTol = 1e-14;

// ---- quadrature constants (part of the external contract) ----

// The lifetime integral splits at delta = min(r0/2, kQuadDeltaMax).
inline constexpr double kQuadDeltaMax = 1e-2;

// Tolerances of the adaptive quadrature on [delta, r0].  The relative term
// keeps steep integrands (values of 1e9 and beyond arise for speeds that
// vanish rapidly at r = 0) convergeable: a pure 1e-10 absolute demand would
// sit below double roundoff there.
inline constexpr double kQuadAbsTol = 1e-10;
inline constexpr double kQuadRelTol = 1e-12;

// A dyadic panel below delta counts as converged once its contribution falls
// below this cutoff.
inline constexpr double kPanelCutoff = 1e-12;

// Number of consecutive non-decreasing panel contributions that, together with
// a sufficiently negative asymptotic exponent, signals a divergent integral.
inline constexpr int kPanelNonDecreaseRun = 8;

// Relative jitter absorbed when comparing successive panel contributions
// (panels of a borderline divergent integrand converge to a constant from
// above or below within roundoff).
inline constexpr double kPanelCompareSlack = 1e-12;

// Asymptotic-exponent threshold paired with the non-decreasing panel run:
// infinite verdict requires exponent <= -1 + 0.1.
inline constexpr double kExponentInfiniteThreshold = -0.9;

// Hard cap on dyadic panels before the classification is reported degenerate.
inline constexpr int kMaxDyadicPanels = 2000;

// ---- parabolicity sampling ----

// Principal-curvature sampling box for parabolicity reports.
inline constexpr double kParabolicSampleLo = 0.05;
inline constexpr double kParabolicSampleHi = 20.0;

// All gradient components below this magnitude => "first-order" verdict.
inline constexpr double kFirstOrderTol = 1e-9;

// ---- surface-flow checks ----

// Mean-curvature blow-up detection threshold (checks H > 10^3 along a
// zero-Euler-characteristic tube trajectory).
inline constexpr double kBlowupThresholdH = 1e3;

// Slack used by envelope containment checks.
inline constexpr double kEnvelopeEps = 1e-9;

// ---- reproducibility ----

// Default RNG seed for deterministic sampling (overridable via GEOFLOW_SEED).
inline constexpr std::uint64_t kDefaultSeed = 0;

}  // namespace geoflow
