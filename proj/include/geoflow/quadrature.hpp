#pragma once

// Adaptive Gauss-Kronrod 15(7) quadrature.  Each interval is scored by the
// classical error model err = (200*|G7 - K15|)^1.5 and the worst interval is
// bisected until the summed error estimate drops below the requested
// absolute tolerance.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <vector>

#include "geoflow/errors.hpp"

namespace geoflow {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;          // summed error estimate
    std::size_t intervals = 0;   // intervals in the final partition
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a = 0.0, b = 0.0;
    double value = 0.0, error = 0.0;
};

template <class F>
Panel gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double k15 = 0.0, g7 = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = hw * kKronrodNodes[i];
        double fsum;
        if (i == 7) {
            fsum = f(c);
        } else {
            fsum = f(c - x) + f(c + x);
        }
        k15 += kKronrodWeights[i] * fsum;
        // Odd slots (and the center, slot 7) are the embedded Gauss nodes.
        if (i % 2 == 1) g7 += kGaussWeights[i / 2] * fsum;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = hw * k15;
    p.error = std::pow(200.0 * std::abs(hw * (k15 - g7)), 1.5);
    return p;
}

}  // namespace detail

// Integrate f over [a, b] until the summed error estimate drops below
// max(abs_tol, rel_tol * |integral|); a pure absolute tolerance can sit
// below the roundoff floor when the integral itself is large, so callers
// integrating functions of unknown magnitude should pass a relative term.
// Throws ComputeError if the partition exceeds max_intervals or a sample is
// not finite.
template <class F>
QuadResult integrate_adaptive(const F& f, double a, double b, double abs_tol,
                              double rel_tol = 0.0, std::size_t max_intervals = 10000) {
    if (!(b >= a)) throw DomainError("integration bounds must satisfy a <= b");
    QuadResult out;
    if (a == b) return out;
    std::vector<detail::Panel> panels;
    panels.push_back(detail::gk15(f, a, b));
    for (;;) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        if (!std::isfinite(total))
            throw ComputeError("integrand produced a non-finite value");
        const double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (err <= tol || panels.size() >= max_intervals) {
            if (err > tol) {
                char msg[128];
                std::snprintf(msg, sizeof(msg),
                              "quadrature failed to converge: estimate %.3e above tolerance %.3e",
                              err, tol);
                throw ComputeError(msg);
            }
            out.value = total;
            out.error = err;
            out.intervals = panels.size();
            return out;
        }
        const detail::Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        panels[worst] = detail::gk15(f, p.a, mid);
        panels.push_back(detail::gk15(f, mid, p.b));
    }
}

}  // namespace geoflow
