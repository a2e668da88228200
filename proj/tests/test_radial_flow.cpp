#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "geoflow/errors.hpp"
#include "geoflow/radial_flow.hpp"
#include "geoflow/symfun.hpp"
#include "geoflow/tube.hpp"
#include "oracles.hpp"

using namespace geoflow;

namespace {

FlowProblem make_problem(int n, int k, double r0, const std::string& speed = "harmonic") {
    return FlowProblem{TubeConfig{n, k}, r0, parse_speed(speed)};
}

}  // namespace

TEST_CASE("radial speed: frozen values for the reference tubes") {
    // harmonic on (2,1) equals tanh(2r)/2
    CHECK(radial_speed(make_problem(2, 1, 0.5), 0.5) ==
          doctest::Approx(0.38079707797788244).epsilon(1e-15));
    // harmonic on the umbilic family equals tanh(r)/2
    CHECK(radial_speed(make_problem(2, 2, 0.5), 0.5) ==
          doctest::Approx(0.23105857863000488).epsilon(1e-15));
    // harmonic on geodesic spheres equals coth(r)/2
    CHECK(radial_speed(make_problem(2, 0, 1.0), 1.0) ==
          doctest::Approx(0.65651764274966565).epsilon(1e-15));
    // mean-curvature speed S1 on (2,1) equals tanh r + coth r
    CHECK(radial_speed(make_problem(2, 1, 0.5, "S1"), 0.5) ==
          doctest::Approx(2.6260705709986626).epsilon(1e-15));
}

TEST_CASE("conserved quantity: frozen value and invariance along the closed form") {
    CHECK(conserved_quantity(TubeConfig{2, 1}, 0.5, 0.0) ==
          doctest::Approx(0.58760059682190073).epsilon(1e-15));
    for (int n = 2; n <= 5; ++n) {
        for (int k = 1; k <= n; ++k) {
            const TubeConfig cfg{n, k};
            const double q0 = conserved_quantity(cfg, 1.0, 0.0);
            for (double t : {0.5, 1.0, 3.0, 7.0}) {
                const double r = hmcf_closed_form(cfg, 1.0, t);
                const double q = conserved_quantity(cfg, r, t);
                CAPTURE(n);
                CAPTURE(k);
                CAPTURE(t);
                CHECK(std::abs(q / q0 - 1.0) <= 1e-10);
            }
        }
    }
    CHECK_THROWS_AS(conserved_quantity(TubeConfig{2, 1}, -0.1, 0.0), DomainError);
    CHECK_THROWS_AS(conserved_quantity(TubeConfig{2, 1}, 31.0, 0.0), DomainError);
    CHECK_THROWS_AS(conserved_quantity(TubeConfig{2, 1}, 0.5, 701.0), DomainError);
}

TEST_CASE("closed-form radius: frozen values and oracle agreement") {
    CHECK(hmcf_closed_form(TubeConfig{2, 1}, 0.5, 1.0) ==
          doctest::Approx(0.20994262878102746).epsilon(1e-15));
    CHECK(hmcf_closed_form(TubeConfig{2, 2}, 1.0, 2.0) ==
          doctest::Approx(0.41988525756205492).epsilon(1e-15));

    // geodesic spheres clamp to zero after extinction
    const double text = 2.0 * std::log(std::cosh(1.0));
    CHECK(text == doctest::Approx(0.86756166096605437).epsilon(1e-15));
    CHECK(hmcf_closed_form(TubeConfig{2, 0}, 1.0, text + 0.1) == 0.0);
    CHECK(hmcf_closed_form(TubeConfig{2, 0}, 1.0, 0.4) ==
          doctest::Approx(oracles::radius_spherical(2, 1.0, 0.4)).epsilon(1e-13));

    // the Newton path (no explicit formula) against plain bisection
    for (int n = 3; n <= 5; ++n) {
        for (int k = 1; k < n; ++k) {
            if (n == 2 && k == 1) continue;
            for (double r0 : {0.25, 0.5, 1.0, 2.0}) {
                for (double t : {0.1, 1.0, 5.0, 10.0}) {
                    const double got = hmcf_closed_form(TubeConfig{n, k}, r0, t);
                    const double want = oracles::radius_bisection(n, k, r0, t);
                    CAPTURE(n);
                    CAPTURE(k);
                    CAPTURE(r0);
                    CAPTURE(t);
                    CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, want));
                }
            }
        }
    }
}

TEST_CASE("log-conserved solver reproduces the frozen root") {
    // sinh(r) cosh(r)^2 = 0.13931761152140152 has root r = 0.13633700219221451
    const TubeConfig cfg{3, 1};
    const double raw = 0.13931761152140152;
    const double root = detail::solve_log_conserved(cfg, std::log(raw), 0.5);
    CHECK(root == doctest::Approx(0.13633700219221451).epsilon(1e-13));
    const double residual = std::sinh(root) * std::cosh(root) * std::cosh(root) - raw;
    CHECK(std::abs(residual) <= 1e-12 * raw);
}

TEST_CASE("integrated flat-core flow matches the closed form to 1e-8") {
    const Trajectory traj = integrate(make_problem(2, 1, 0.5), 10.0, 0.1);
    CHECK(traj.termination.kind == TerminationKind::ReachedTMax);
    REQUIRE(traj.samples.size() == 101);
    double max_err = 0.0;
    double max_drift = 0.0;
    const double q0 = traj.samples.front().conserved;
    for (const FlowSample& s : traj.samples) {
        max_err = std::max(max_err, std::abs(s.state.r - oracles::radius_21(0.5, s.t)));
        max_drift = std::max(max_drift, std::abs(s.conserved / q0 - 1.0));
    }
    CHECK(max_err <= 1e-8);
    CHECK(max_drift <= 1e-8);
    CHECK(traj.samples.back().state.r ==
          doctest::Approx(2.6677025811451759e-5).epsilon(1e-8));
}

TEST_CASE("integrated trajectories: monotone time, monotone radius, consistent fields") {
    const Trajectory traj = integrate(make_problem(3, 2, 1.0), 5.0, 0.25);
    const TubeConfig cfg{3, 2};
    REQUIRE(traj.samples.size() == 21);
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const FlowSample& s = traj.samples[i];
        if (i > 0) {
            CHECK(s.t > traj.samples[i - 1].t);
            CHECK(s.state.r < traj.samples[i - 1].state.r);
        }
        const TubeState ref = tube_state(cfg, s.state.r, radial_speed(traj.problem, s.state.r));
        CHECK(s.state.H == ref.H);
        CHECK(s.state.K == ref.K);
        CHECK(s.state.F == ref.F);
        CHECK(s.state.area_factor == ref.area_factor);
        CHECK(s.conserved == conserved_quantity(cfg, s.state.r, s.t));
    }
    CHECK(traj.samples.front().t == 0.0);
    CHECK(traj.samples.front().state.r == 1.0);
}

TEST_CASE("sampled trajectory obeys dr/dt = -h(r) by central differences") {
    const FlowProblem problem = make_problem(2, 1, 0.5);
    const Trajectory traj = integrate(problem, 0.5, 1e-3);
    REQUIRE(traj.samples.size() == 501);
    for (std::size_t i = 1; i + 1 < traj.samples.size(); ++i) {
        const double numeric = (traj.samples[i + 1].state.r - traj.samples[i - 1].state.r) /
                               (traj.samples[i + 1].t - traj.samples[i - 1].t);
        const double h = radial_speed(problem, traj.samples[i].state.r);
        CHECK(std::abs(numeric + h) <= 1e-6 * std::max(1.0, std::abs(h)));
    }
}

TEST_CASE("late-time radius decays like exp(-t/k)") {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 3}}) {
        const Trajectory traj = integrate(make_problem(n, k, 0.25), 10.0, 0.1);
        REQUIRE(traj.samples.size() == 101);
        const double r8 = traj.samples[80].state.r;
        const double r10 = traj.samples[100].state.r;
        const double slope = (std::log(r10) - std::log(r8)) / 2.0;
        CAPTURE(n);
        CAPTURE(k);
        CHECK(std::abs(slope + 1.0 / k) <= 0.01);
    }
}

TEST_CASE("output grid handles accumulated rounding in j*out_step") {
    const Trajectory traj = integrate(make_problem(2, 1, 0.5), 1.0, 0.2);
    REQUIRE(traj.samples.size() == 6);
    for (std::size_t j = 0; j < traj.samples.size(); ++j)
        CHECK(traj.samples[j].t == doctest::Approx(0.2 * static_cast<double>(j)).epsilon(1e-12));
}

TEST_CASE("geodesic-sphere flow goes extinct at n ln cosh r0") {
    const Trajectory traj = integrate(make_problem(2, 0, 1.0), 10.0, 0.1);
    CHECK(traj.termination.kind == TerminationKind::Extinction);
    REQUIRE(traj.termination.t_ext.has_value());
    CHECK(*traj.termination.t_ext ==
          doctest::Approx(0.86756166096605437).epsilon(1e-9));
    // samples stop at the extinction time
    CHECK(traj.samples.back().t <= *traj.termination.t_ext);
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].state.r < traj.samples[i - 1].state.r);
}

TEST_CASE("mean-curvature speed on the flat-core tube: blow-up guard completes the lifetime") {
    const Trajectory traj = integrate(make_problem(2, 1, 0.5, "S1"), 1.0, 0.1);
    CHECK(traj.termination.kind == TerminationKind::Extinction);
    REQUIRE(traj.termination.t_ext.has_value());
    // T0 = ln(cosh 2 r0)/4
    CHECK(*traj.termination.t_ext ==
          doctest::Approx(0.1084452076207568).epsilon(1e-9));
    CHECK(oracles::lifetime_s1_21(0.5) ==
          doctest::Approx(0.1084452076207568).epsilon(1e-15));
    // a larger starting radius takes longer
    const Trajectory big = integrate(make_problem(2, 1, 1.0, "S1"), 1.0, 0.1);
    REQUIRE(big.termination.t_ext.has_value());
    CHECK(*big.termination.t_ext ==
          doctest::Approx(0.33125068683946611).epsilon(1e-9));
    CHECK(*big.termination.t_ext > *traj.termination.t_ext);
}

TEST_CASE("integration agrees with the conservation-law radius for many configurations") {
    for (int n = 2; n <= 4; ++n) {
        for (int k = 0; k <= n; ++k) {
            for (double r0 : {0.25, 1.0}) {
                const Trajectory traj = integrate(make_problem(n, k, r0), 10.0, 0.5);
                const TubeConfig cfg{n, k};
                for (const FlowSample& s : traj.samples) {
                    const double want = hmcf_closed_form(cfg, r0, s.t);
                    CAPTURE(n);
                    CAPTURE(k);
                    CAPTURE(r0);
                    CAPTURE(s.t);
                    CHECK(std::abs(s.state.r - want) <= 1e-8);
                }
                if (k == 0) {
                    CHECK(traj.termination.kind == TerminationKind::Extinction);
                    REQUIRE(traj.termination.t_ext.has_value());
                    CHECK(*traj.termination.t_ext ==
                          doctest::Approx(oracles::extinction_spherical(n, r0)).epsilon(1e-8));
                } else {
                    CHECK(traj.termination.kind == TerminationKind::ReachedTMax);
                }
            }
        }
    }
}

TEST_CASE("integration rejects invalid arguments") {
    CHECK_THROWS_AS(integrate(make_problem(2, 1, 0.0), 1.0, 0.1), DomainError);
    CHECK_THROWS_AS(integrate(make_problem(2, 1, 31.0), 1.0, 0.1), DomainError);
    CHECK_THROWS_AS(integrate(make_problem(2, 1, 0.5), 0.0, 0.1), DomainError);
    CHECK_THROWS_AS(integrate(make_problem(2, 1, 0.5), 1.0, 0.0), DomainError);
    // speed referencing S3 cannot run on a two-curvature tube
    CHECK_THROWS_AS(integrate(make_problem(2, 1, 0.5, "S3"), 1.0, 0.1), DomainError);
}

TEST_CASE("a backwards speed grows past the radius cap and ends with an error record") {
    const Trajectory traj = integrate(make_problem(2, 1, 1.0, "0 - harmonic"), 100.0, 0.5);
    CHECK(traj.termination.kind == TerminationKind::Error);
    CHECK(!traj.termination.message.empty());
    CHECK(!traj.samples.empty());
    for (const FlowSample& s : traj.samples) CHECK(s.state.r <= 30.0);
    // the radius grows along the way
    CHECK(traj.samples.back().state.r > traj.samples.front().state.r);
}

TEST_CASE("looser integration tolerances still meet the acceptance bound") {
    IntegrateOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-12;
    const Trajectory traj = integrate(make_problem(2, 1, 0.5), 10.0, 0.5, opt);
    for (const FlowSample& s : traj.samples)
        CHECK(std::abs(s.state.r - oracles::radius_21(0.5, s.t)) <= 1e-8);
}
