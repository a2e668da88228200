#include "geoflow/radial_flow.hpp"

#include <cmath>
#include <limits>

#include "geoflow/dopri5.hpp"
#include "geoflow/quadrature.hpp"

namespace geoflow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Curvature vector without the domain-cap checks, for use inside integrator
// stages that may probe slightly outside the accepted region.  Returns NaN
// contamination via tanh/coth when r <= 0 with k < n handled by the caller.
std::vector<double> raw_curvatures(const TubeConfig& cfg, double r) {
    std::vector<double> lambdas;
    lambdas.reserve(static_cast<std::size_t>(cfg.n));
    const double t = std::tanh(r);
    for (int i = 0; i < cfg.k; ++i) lambdas.push_back(t);
    for (int i = cfg.k; i < cfg.n; ++i) lambdas.push_back(1.0 / t);
    return lambdas;
}

}  // namespace

double radial_speed(const FlowProblem& problem, double r) {
    return eval_speed(problem.speed, principal_curvatures(problem.cfg, r));
}

double conserved_quantity(const TubeConfig& cfg, double r, double t) {
    validate(cfg);
    if (!(r >= 0.0) || r > kRMax)
        throw DomainError("conserved_quantity requires 0 <= r <= " + std::to_string(kRMax));
    if (!(t <= kTExpMax))
        throw DomainError("conserved_quantity requires t <= " + std::to_string(kTExpMax) +
                          " to keep exp(t) representable");
    return std::exp(t) * std::pow(std::sinh(r), cfg.k) * std::pow(std::cosh(r), cfg.n - cfg.k);
}

namespace detail {

double solve_log_conserved(const TubeConfig& cfg, double target, double hi) {
    const auto g = [&](double r) {
        return cfg.k * std::log(std::sinh(r)) + (cfg.n - cfg.k) * std::log(std::cosh(r)) - target;
    };
    const auto gp = [&](double r) {
        return cfg.k / std::tanh(r) + (cfg.n - cfg.k) * std::tanh(r);
    };
    if (g(hi) < 0.0) throw ComputeError("log-conserved solve: upper bracket below target");
    double lo = hi;
    for (int i = 0; i < 4096 && g(lo) > 0.0; ++i) lo *= 0.5;
    if (g(lo) > 0.0) throw ComputeError("log-conserved solve: failed to bracket the root");
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double gx = g(x);
        if (gx > 0.0) hi = x;
        else lo = x;
        double step = gx / gp(x);
        double xn = x - step;
        if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);  // bisection fallback
        if (std::abs(xn - x) <= 1e-13 * std::max(1.0, std::abs(xn))) return xn;
        x = xn;
    }
    return x;
}

}  // namespace detail

double hmcf_closed_form(const TubeConfig& cfg, double r0, double t) {
    validate(cfg);
    if (!(r0 > 0.0) || r0 > kRMax)
        throw DomainError("hmcf_closed_form requires 0 < r0 <= " + std::to_string(kRMax));
    if (!(t >= 0.0)) throw DomainError("hmcf_closed_form requires t >= 0");
    const int n = cfg.n, k = cfg.k;
    if (k == 0) {
        // cosh(r)^n decays like exp(-t); extinction when it reaches 1.
        const double c = std::exp(-t / n) * std::cosh(r0);
        if (c <= 1.0) return 0.0;
        return std::acosh(c);
    }
    if (k == n) return std::asinh(std::exp(-t / n) * std::sinh(r0));
    if (n == 2 && k == 1) return 0.5 * std::asinh(std::exp(-t) * std::sinh(2.0 * r0));
    const double target =
        k * std::log(std::sinh(r0)) + (n - k) * std::log(std::cosh(r0)) - t;
    return detail::solve_log_conserved(cfg, target, r0);
}

Trajectory integrate(const FlowProblem& problem, double t_max, double out_step,
                     const IntegrateOptions& opt) {
    const TubeConfig& cfg = problem.cfg;
    const SpeedExpr& speed = problem.speed;
    const double r0 = problem.r0;
    validate(cfg);
    if (!(r0 > 0.0) || r0 > kRMax)
        throw DomainError("integrate requires 0 < r0 <= " + std::to_string(kRMax));
    if (!(t_max > 0.0)) throw DomainError("integrate requires t_max > 0");
    if (!(out_step > 0.0)) throw DomainError("integrate requires out_step > 0");
    const int max_sym = speed.max_symbol_index();
    if (max_sym > cfg.n)
        throw DomainError("speed references S" + std::to_string(max_sym) +
                          " but the tube has only n=" + std::to_string(cfg.n) +
                          " principal curvatures");

    // Speed on the tube; NaN outside the usable radius band so the
    // integrator rejects any stage that strays there.
    const auto h_of_r = [&](double r) -> double {
        if (!(r > 0.0) || r > 2.0 * kRMax) return kNaN;
        try {
            return eval_speed(speed, raw_curvatures(cfg, r));
        } catch (const Error&) {
            return kNaN;
        }
    };
    const auto rhs = [&](double /*t*/, double r) -> double {
        const double h = h_of_r(r);
        return std::isnan(h) ? kNaN : -h;
    };

    Trajectory out;
    out.problem = problem;
    const auto emit = [&](double t, double r) {
        FlowSample s;
        s.t = t;
        s.state = tube_state(cfg, r, radial_speed(problem, r));
        s.conserved = conserved_quantity(cfg, r, t);
        out.samples.push_back(std::move(s));
    };

    // Remaining lifetime from radius r, by quadrature of dt = dr / h(r).
    // Used when the speed blows up near r = 0 faster than the step size can
    // follow; the integrand 1/h is small and vanishes at 0 in that regime.
    const auto tail_lifetime = [&](double r) -> double {
        const auto f = [&](double rr) {
            if (rr <= 0.0) return 0.0;
            const double h = h_of_r(rr);
            return std::isnan(h) ? kNaN : 1.0 / h;
        };
        return integrate_adaptive(f, 0.0, r, 1e-12 * std::max(1.0, r)).value;
    };

    emit(0.0, r0);
    long next_j = 1;  // next output grid index
    const double grid_end = t_max * (1.0 + 1e-14) + 1e-15;

    Dopri5Options dopt;
    dopt.rel_tol = opt.rel_tol;
    dopt.abs_tol = opt.abs_tol;

    try {
        Dopri5 solver(rhs, 0.0, r0, dopt);
        while (solver.t() < t_max) {
            double t_prev = solver.t();
            if (!solver.step(t_max)) break;
            const double t1 = solver.t();
            const double r1 = solver.y();
            const auto& dense = solver.dense();

            // Extinction: the radius crossed the floor inside this step.
            if (r1 < kRFloor) {
                double lo = t_prev, hi = t1;  // r(lo) >= floor > r(hi)
                while (hi - lo > kExtinctionRefineTol) {
                    const double mid = 0.5 * (lo + hi);
                    if (dense.eval(mid) >= kRFloor) lo = mid;
                    else hi = mid;
                }
                const double t_cross = 0.5 * (lo + hi);
                for (; next_j * out_step <= t_cross && next_j * out_step <= grid_end; ++next_j)
                    emit(next_j * out_step, std::max(dense.eval(next_j * out_step), kRFloor));
                out.termination.kind = TerminationKind::Extinction;
                out.termination.t_ext = t_cross;
                out.termination.message = "radius reached the extinction floor";
                return out;
            }

            // Grid times are j*out_step; the product can round a hair past
            // the step endpoint, so allow a relative slack and evaluate such
            // points at the endpoint itself.
            const double slack = 1e-14 * std::max(1.0, std::abs(t1));

            // Domain cap: the radius grew past the usable band.  Emit the
            // grid samples that are still below the cap, then stop.
            if (r1 > kRMax) {
                for (; next_j * out_step <= std::min(t1 + slack, grid_end); ++next_j) {
                    const double tj = next_j * out_step;
                    const double rj = tj >= t1 ? r1 : dense.eval(tj);
                    if (rj > kRMax) break;
                    emit(tj, rj);
                }
                out.termination.kind = TerminationKind::Error;
                out.termination.message =
                    "radius exceeded the domain cap r_max=" + std::to_string(kRMax) +
                    " at t=" + std::to_string(t1);
                return out;
            }

            // Emit grid samples covered by this step.
            for (; next_j * out_step <= std::min(t1 + slack, grid_end); ++next_j) {
                const double tj = next_j * out_step;
                emit(tj, tj >= t1 ? r1 : dense.eval(tj));
            }

            // Blow-up guard on the speed.
            const double h1 = h_of_r(r1);
            if (std::isfinite(h1) && std::abs(h1) > kSpeedBlowup) {
                if (h1 > 0.0) {
                    const double t_cross = t1 + tail_lifetime(r1);
                    out.termination.kind = TerminationKind::Extinction;
                    out.termination.t_ext = t_cross;
                    out.termination.message =
                        "speed exceeded the blow-up guard; lifetime completed by quadrature";
                } else {
                    out.termination.kind = TerminationKind::Error;
                    out.termination.message = "speed exceeded the blow-up guard with growing radius";
                }
                return out;
            }
        }
        out.termination.kind = TerminationKind::ReachedTMax;
        out.termination.message = "reached t_max";
    } catch (const Error& e) {
        out.termination.kind = TerminationKind::Error;
        out.termination.message = e.what();
    }
    return out;
}

}  // namespace geoflow
