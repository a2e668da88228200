#pragma once

// Scalar Dormand-Prince 5(4) embedded Runge-Kutta step with FSAL and the
// classical quartic dense-output interpolant.  The controller follows the
// standard PI step-size recipe (safety 0.9, growth clamp [0.2, 10], error
// exponent 0.2 with a 0.04 stabilizing term).

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>

#include "geoflow/errors.hpp"

namespace geoflow {

struct Dopri5Options {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double initial_step = 0.0;  // 0 => choose automatically
    double max_step = 0.0;      // 0 => no explicit bound beyond the span
    std::size_t max_steps = 2000000;
};

// One accepted step's dense-output coefficients over [t, t + h].
struct Dopri5Dense {
    double t = 0.0;
    double h = 0.0;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0;

    double eval(double ti) const {
        const double theta = (ti - t) / h;
        const double th1 = 1.0 - theta;
        return c1 + theta * (c2 + th1 * (c3 + theta * (c4 + th1 * c5)));
    }
};

class Dopri5 {
  public:
    using Rhs = std::function<double(double, double)>;

    Dopri5(Rhs rhs, double t0, double y0, const Dopri5Options& opt)
        : rhs_(std::move(rhs)), opt_(opt), t_(t0), y_(y0) {
        k1_ = rhs_(t_, y_);
        if (!std::isfinite(k1_)) throw ComputeError("derivative not finite at the initial state");
        facold_ = 1e-4;
    }

    double t() const { return t_; }
    double y() const { return y_; }
    double dydt() const { return k1_; }
    std::size_t steps_taken() const { return nsteps_; }
    const Dopri5Dense& dense() const { return dense_; }

    // Advance by one accepted step, at most up to t_end.  Returns false when
    // t has already reached t_end.  Throws ComputeError on step underflow or
    // when the step budget is exhausted.
    bool step(double t_end) {
        if (t_ >= t_end) return false;
        if (h_ == 0.0) h_ = initial_step_guess(t_end);
        for (;;) {
            if (++nsteps_ > opt_.max_steps)
                throw ComputeError("step budget exhausted at t=" + std::to_string(t_));
            if (!(h_ > std::abs(t_) * 1e-16 + 1e-300))
                throw ComputeError("step size underflow at t=" + std::to_string(t_));
            double h = h_;
            bool clamped = false;
            if (t_ + h >= t_end) {
                h = t_end - t_;
                clamped = true;
            }
            if (opt_.max_step > 0.0 && h > opt_.max_step) {
                h = opt_.max_step;
                clamped = (t_ + h >= t_end);
            }

            const double k1 = k1_;
            const double y = y_;
            const double k2 = rhs_(t_ + c2 * h, y + h * (a21 * k1));
            const double k3 = rhs_(t_ + c3 * h, y + h * (a31 * k1 + a32 * k2));
            const double k4 = rhs_(t_ + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const double k5 = rhs_(t_ + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const double k6 =
                rhs_(t_ + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const double ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
            const double k7 = rhs_(t_ + h, ynew);

            const double ee = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            bool bad = !std::isfinite(ynew) || !std::isfinite(ee) || !std::isfinite(k7);
            double err = 0.0;
            if (!bad) {
                const double sk = opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y), std::abs(ynew));
                err = std::abs(ee / sk);
            }

            if (bad) {
                h_ = h * 0.5;
                continue;
            }
            if (err <= 1.0) {
                // accept: build dense output then advance
                dense_.t = t_;
                dense_.h = h;
                dense_.c1 = y;
                dense_.c2 = ynew - y;
                dense_.c3 = h * k1 - dense_.c2;
                dense_.c4 = dense_.c2 - h * k7 - dense_.c3;
                dense_.c5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

                const double facold = std::max(err, 1e-4);
                double fac = std::pow(err, expo1) / std::pow(facold_, beta);
                fac = std::max(inv_fac2, std::min(inv_fac1, fac / safe));
                double hnew = h / fac;
                facold_ = facold;

                t_ = clamped ? t_end : t_ + h;
                y_ = ynew;
                k1_ = k7;  // FSAL
                if (!clamped) h_ = hnew;
                else h_ = std::max(h_, hnew);
                return true;
            }
            // reject
            const double fac11 = std::pow(err, expo1);
            h_ = h / std::min(inv_fac1, fac11 / safe);
        }
    }

  private:
    double initial_step_guess(double t_end) const {
        // Hairer's heuristic, specialized to a scalar problem.
        const double sk = opt_.abs_tol + opt_.rel_tol * std::abs(y_);
        const double dnf = std::abs(k1_ / sk);
        const double dny = std::abs(y_ / sk);
        double h0 = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * (dny / dnf);
        h0 = std::min(h0, t_end - t_);
        const double y1 = y_ + h0 * k1_;
        const double f1 = rhs_(t_ + h0, y1);
        const double der2 = std::abs(f1 - k1_) / (h0 * sk);
        const double der12 = std::max(der2, dnf);
        double h1;
        if (der12 <= 1e-15)
            h1 = std::max(1e-6, h0 * 1e-3);
        else
            h1 = std::pow(0.01 / der12, 0.2);
        double h = std::min({100.0 * h0, h1, t_end - t_});
        if (opt_.max_step > 0.0) h = std::min(h, opt_.max_step);
        return h;
    }

    // Dormand-Prince coefficients.
    static constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
    static constexpr double a21 = 0.2;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                            a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
    static constexpr double safe = 0.9, inv_fac1 = 5.0, inv_fac2 = 0.1;  // 1/fac1, 1/fac2 clamps
    static constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75;

    Rhs rhs_;
    Dopri5Options opt_;
    double t_;
    double y_;
    double k1_ = 0.0;
    double h_ = 0.0;
    double facold_ = 1e-4;
    std::size_t nsteps_ = 0;
    Dopri5Dense dense_;
};

}  // namespace geoflow
