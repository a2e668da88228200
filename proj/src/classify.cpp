#include "geoflow/classify.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "geoflow/quadrature.hpp"

namespace geoflow {

namespace {

double coth_exponent_entry(int n, int k, int j) {
    const int free_dirs = n - k;  // directions carrying coth(r)
    return j <= free_dirs ? j : 2 * free_dirs - j;
}

// 1/h(r) with positivity and finiteness enforced.
double inverse_speed(const FlowProblem& problem, double r) {
    const double h = eval_speed(problem.speed, principal_curvatures(problem.cfg, r));
    if (!std::isfinite(h) || h <= 0.0)
        throw ComputeError("speed is not positive at r=" + std::to_string(r) +
                           "; lifetime integral undefined");
    return 1.0 / h;
}

}  // namespace

const char* to_string(LifetimeVerdict v) {
    switch (v) {
        case LifetimeVerdict::Infinite: return "infinite";
        case LifetimeVerdict::Finite: return "finite";
        case LifetimeVerdict::Degenerate: return "degenerate";
    }
    return "?";
}

int exact_exponent(int n, int k, int m, int l) {
    TubeConfig cfg{n, k};
    validate(cfg);
    if (m < 0 || m > n || l < 0 || l > n)
        throw DomainError("exact_exponent requires 0 <= m, l <= n");
    return static_cast<int>(coth_exponent_entry(n, k, m) - coth_exponent_entry(n, k, l));
}

double numeric_exponent(const TubeConfig& cfg, const SpeedExpr& speed) {
    validate(cfg);
    constexpr int kPoints = 20;
    constexpr double kLo = 1e-6, kHi = 1e-3;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < kPoints; ++i) {
        const double r = kLo * std::pow(kHi / kLo, static_cast<double>(i) / (kPoints - 1));
        const double h = eval_speed(speed, principal_curvatures(cfg, r));
        if (!std::isfinite(h) || h <= 0.0)
            throw ComputeError("speed non-positive or non-finite at r=" + std::to_string(r) +
                               "; exponent fit impossible");
        const double x = std::log(1.0 / std::tanh(r));
        const double y = std::log(h);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = kPoints * sxx - sx * sx;
    return (kPoints * sxy - sx * sy) / denom;
}

LifetimeClassification lifetime_quadrature(const FlowProblem& problem) {
    validate(problem.cfg);
    if (!(problem.r0 > 0.0) || problem.r0 > kRMax)
        throw DomainError("lifetime quadrature requires 0 < r0 <= " + std::to_string(kRMax));

    LifetimeClassification out;
    out.method = LifetimeMethod::Quadrature;

    const auto f = [&](double r) { return inverse_speed(problem, r); };

    const double delta = std::min(problem.r0 / 2.0, kQuadDeltaMax);
    const double outer =
        integrate_adaptive(f, delta, problem.r0, kQuadAbsTol, kQuadRelTol).value;

    double inner = 0.0;
    double prev_panel = std::numeric_limits<double>::infinity();
    int nondecreasing_run = 0;
    std::optional<double> exponent_estimate;

    double hi = delta;
    for (std::size_t j = 0; j < kMaxDyadicPanels; ++j) {
        const double lo = hi / 2.0;
        const double panel = detail::gk15(f, lo, hi).value;
        if (!std::isfinite(panel) || panel < 0.0)
            throw ComputeError("lifetime integrand misbehaved on panel [" + std::to_string(lo) +
                               ", " + std::to_string(hi) + "]");
        inner += panel;
        out.panels = j + 1;

        if (panel < kPanelCutoff) {
            out.verdict = LifetimeVerdict::Finite;
            out.t0 = outer + inner;
            if (exponent_estimate) out.exponent = *exponent_estimate;
            return out;
        }
        if (panel >= prev_panel * (1.0 - kPanelCompareSlack)) {
            if (++nondecreasing_run >= kPanelNonDecreaseRun) {
                if (!exponent_estimate)
                    exponent_estimate = numeric_exponent(problem.cfg, problem.speed);
                if (*exponent_estimate <= kExponentInfiniteThreshold) {
                    out.verdict = LifetimeVerdict::Infinite;
                    out.t0 = std::numeric_limits<double>::infinity();
                    out.exponent = *exponent_estimate;
                    return out;
                }
                // Panels refuse to shrink yet the exponent says convergent;
                // keep sampling until the budget runs out.
                nondecreasing_run = 0;
            }
        } else {
            nondecreasing_run = 0;
        }
        prev_panel = panel;
        hi = lo;
    }
    out.verdict = LifetimeVerdict::Degenerate;
    out.t0 = std::numeric_limits<double>::quiet_NaN();
    out.reason = "panel budget (" + std::to_string(kMaxDyadicPanels) +
                 ") exhausted without convergence or divergence evidence";
    if (exponent_estimate) out.exponent = *exponent_estimate;
    return out;
}

LifetimeClassification classify_lifetime(int n, int k, int m, int l, double r0) {
    const int exact = exact_exponent(n, k, m, l);  // validates n, k, m, l
    if (!(r0 > 0.0) || r0 > kRMax)
        throw DomainError("classify_lifetime requires 0 < r0 <= " + std::to_string(kRMax));

    FlowProblem problem;
    problem.cfg = TubeConfig{n, k};
    problem.r0 = r0;
    problem.speed = parse_speed("S" + std::to_string(m) + "/S" + std::to_string(l));

    const double numeric = numeric_exponent(problem.cfg, problem.speed);
    LifetimeClassification quad = lifetime_quadrature(problem);

    AgreementRecord rec;
    rec.exact_exponent = exact;
    rec.numeric_exponent = numeric;
    rec.exponent_verdict = exact <= -1 ? LifetimeVerdict::Infinite : LifetimeVerdict::Finite;
    rec.quadrature_verdict = quad.verdict;
    rec.agree = rec.exponent_verdict == rec.quadrature_verdict &&
                std::abs(numeric - exact) < 0.05;
    if (!rec.agree)
        throw ComputeError("lifetime cross-check disagreement for (n=" + std::to_string(n) +
                           ", k=" + std::to_string(k) + ", m=" + std::to_string(m) +
                           ", l=" + std::to_string(l) + "): exponent says " +
                           to_string(rec.exponent_verdict) + " (exact " + std::to_string(exact) +
                           ", numeric " + std::to_string(numeric) + "), quadrature says " +
                           to_string(quad.verdict) + "; this is a defect, not a data point");

    LifetimeClassification out;
    out.exponent = exact;
    out.verdict = rec.exponent_verdict;
    out.t0 = quad.t0;
    out.method = LifetimeMethod::ExactTable;
    out.agreement = rec;
    out.panels = quad.panels;
    return out;
}

}  // namespace geoflow
