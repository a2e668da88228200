#pragma once

// For tubes around a totally geodesic core, a curvature flow with speed
// F(lambda_1..lambda_n) preserves the tube family, so the whole flow reduces
// to a scalar ODE for the radius: dr/dt = -h(r), where h(r) is the speed
// evaluated at the tube's principal curvatures.

#include <optional>
#include <string>
#include <vector>

#include "geoflow/constants.hpp"
#include "geoflow/errors.hpp"
#include "geoflow/symfun.hpp"
#include "geoflow/tube.hpp"

namespace geoflow {

// One radial flow instance: tube family, starting radius, speed function.
struct FlowProblem {
    TubeConfig cfg;
    double r0 = 0.5;
    SpeedExpr speed;
};

struct FlowSample {
    double t = 0.0;
    TubeState state;
    double conserved = 0.0;  // exp(t) * sinh(r)^k * cosh(r)^(n-k)
};

enum class TerminationKind { ReachedTMax, Extinction, Error };

struct Termination {
    TerminationKind kind = TerminationKind::ReachedTMax;
    std::optional<double> t_ext;  // set for Extinction
    std::string message;
};

struct Trajectory {
    FlowProblem problem;
    std::vector<FlowSample> samples;
    Termination termination;
};

struct IntegrateOptions {
    double rel_tol = kDefaultRelTol;
    double abs_tol = kDefaultAbsTol;
};

// Speed evaluated on the radius-r tube: h(r) = F(principal curvatures).
double radial_speed(const FlowProblem& problem, double r);

// Integrate dr/dt = -h(r) from r(0) = r0 with samples on the uniform grid
// t = j*out_step up to t_max.  The run ends when t_max is reached, when the
// radius crosses the extinction floor (the crossing time is refined to
// 1e-10), or when the speed magnitude trips the blow-up guard (the remaining
// lifetime is then completed by quadrature).  A radius that grows past the
// domain cap, or a step-size underflow, ends the run with an Error record
// that keeps every sample produced so far.
Trajectory integrate(const FlowProblem& problem, double t_max, double out_step,
                     const IntegrateOptions& opt = {});

// Radius at time t under the harmonic-mean-curvature flow, from the
// conservation law exp(t)*sinh(r)^k*cosh(r)^(n-k) = const.  Explicit for
// k = n, k = 0, and (n,k) = (2,1); a safeguarded Newton solve otherwise.
double hmcf_closed_form(const TubeConfig& cfg, double r0, double t);

// exp(t) * sinh(r)^k * cosh(r)^(n-k); constant in t along the
// harmonic-mean-curvature flow.  Requires r <= r_max and t <= 700.
double conserved_quantity(const TubeConfig& cfg, double r, double t);

namespace detail {
// Newton/bisection solve of k*log(sinh r) + (n-k)*log(cosh r) = target for
// r in (0, hi]; exposed so tests can cross-check it against the explicit
// closed forms.
double solve_log_conserved(const TubeConfig& cfg, double target, double hi);
}  // namespace detail

}  // namespace geoflow
