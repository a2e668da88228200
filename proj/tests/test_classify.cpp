#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "geoflow/classify.hpp"
#include "geoflow/errors.hpp"
#include "geoflow/radial_flow.hpp"
#include "geoflow/symfun.hpp"

using namespace geoflow;

namespace {

// e(j) = j for j <= n-k, else 2(n-k) - j: the coth-exponent of S_j near r = 0.
int table_e(int n, int k, int j) { return j <= n - k ? j : 2 * (n - k) - j; }

}  // namespace

TEST_CASE("exact exponent table and the absolute-value form are equivalent") {
    for (int n = 1; n <= 6; ++n) {
        for (int k = 0; k <= n; ++k) {
            for (int m = 0; m <= n; ++m) {
                for (int l = 0; l <= n; ++l) {
                    const int e = exact_exponent(n, k, m, l);
                    CHECK(e == table_e(n, k, m) - table_e(n, k, l));
                    const bool infinite_by_exponent = e <= -1;
                    const bool infinite_by_distance =
                        std::abs(m - (n - k)) > std::abs(l - (n - k));
                    CAPTURE(n);
                    CAPTURE(k);
                    CAPTURE(m);
                    CAPTURE(l);
                    CHECK(infinite_by_exponent == infinite_by_distance);
                }
            }
        }
    }
}

TEST_CASE("numeric exponent fit agrees with the exact table") {
    for (int n = 1; n <= 4; ++n) {
        for (int k = 0; k <= n; ++k) {
            for (int m = 0; m <= n; ++m) {
                for (int l = 0; l <= n; ++l) {
                    const SpeedExpr speed =
                        parse_speed("S" + std::to_string(m) + "/S" + std::to_string(l));
                    const double est = numeric_exponent(TubeConfig{n, k}, speed);
                    const int exact = exact_exponent(n, k, m, l);
                    CAPTURE(n);
                    CAPTURE(k);
                    CAPTURE(m);
                    CAPTURE(l);
                    CHECK(std::abs(est - exact) < 0.05);
                }
            }
        }
    }
}

TEST_CASE("numeric exponent matches the small-radius asymptotics of reference speeds") {
    // harmonic ~ tanh(r)/k ~ r for k >= 1 (coth-exponent -1); ~ coth/n for k = 0.
    CHECK(std::abs(numeric_exponent(TubeConfig{2, 1}, parse_speed("harmonic")) - (-1.0)) < 0.05);
    CHECK(std::abs(numeric_exponent(TubeConfig{3, 2}, parse_speed("harmonic")) - (-1.0)) < 0.05);
    CHECK(std::abs(numeric_exponent(TubeConfig{2, 0}, parse_speed("harmonic")) - 1.0) < 0.05);
    // S1 ~ (n-k) coth r for k < n
    CHECK(std::abs(numeric_exponent(TubeConfig{2, 1}, parse_speed("S1")) - 1.0) < 0.05);
    // a speed that vanishes identically cannot be fitted
    CHECK_THROWS_AS(numeric_exponent(TubeConfig{2, 1}, parse_speed("S1 - S1")), ComputeError);
}

TEST_CASE("lifetime quadrature: frozen finite lifetimes") {
    // mean-curvature speed on (2,1): T0 = ln(cosh 2 r0)/4
    const LifetimeClassification a =
        lifetime_quadrature(FlowProblem{TubeConfig{2, 1}, 0.5, parse_speed("S1")});
    CHECK(a.verdict == LifetimeVerdict::Finite);
    CHECK(a.t0 == doctest::Approx(0.1084452076207568).epsilon(1e-8));

    const LifetimeClassification b =
        lifetime_quadrature(FlowProblem{TubeConfig{2, 1}, 2.0, parse_speed("S1")});
    CHECK(b.verdict == LifetimeVerdict::Finite);
    CHECK(b.t0 == doctest::Approx(0.82679705645323761).epsilon(1e-8));  // ln(cosh 4)/4

    // geodesic spheres under harmonic speed: T0 = n ln cosh r0
    const LifetimeClassification c =
        lifetime_quadrature(FlowProblem{TubeConfig{2, 0}, 1.0, parse_speed("harmonic")});
    CHECK(c.verdict == LifetimeVerdict::Finite);
    CHECK(c.t0 == doctest::Approx(0.86756166096605437).epsilon(1e-8));
}

TEST_CASE("lifetime quadrature: infinite verdicts carry an infinite t0") {
    const LifetimeClassification inf21 =
        lifetime_quadrature(FlowProblem{TubeConfig{2, 1}, 0.5, parse_speed("harmonic")});
    CHECK(inf21.verdict == LifetimeVerdict::Infinite);
    CHECK(std::isinf(inf21.t0));
    CHECK(inf21.panels > 0);

    // inverse mean curvature on (2,1): S0/S1, exponent -1
    const LifetimeClassification imcf =
        lifetime_quadrature(FlowProblem{TubeConfig{2, 1}, 0.5, parse_speed("S0/S1")});
    CHECK(imcf.verdict == LifetimeVerdict::Infinite);
}

TEST_CASE("lifetime monotonicity: larger tubes live longer") {
    double prev = 0.0;
    for (double r0 : {0.25, 0.5, 1.0, 2.0}) {
        const LifetimeClassification c =
            lifetime_quadrature(FlowProblem{TubeConfig{2, 1}, r0, parse_speed("S1")});
        REQUIRE(c.verdict == LifetimeVerdict::Finite);
        CHECK(c.t0 > prev);
        prev = c.t0;
    }
}

TEST_CASE("quadrature lifetime matches the integrator's extinction time") {
    for (double r0 : {0.25, 0.5, 1.0}) {
        const FlowProblem problem{TubeConfig{2, 1}, r0, parse_speed("S1")};
        const LifetimeClassification c = lifetime_quadrature(problem);
        REQUIRE(c.verdict == LifetimeVerdict::Finite);
        const Trajectory traj = integrate(problem, 5.0, 0.1);
        REQUIRE(traj.termination.t_ext.has_value());
        CHECK(std::abs(*traj.termination.t_ext - c.t0) <= 1e-6);
    }
}

TEST_CASE("classify_lifetime: frozen verdict for the worked (3,1) ratio") {
    const LifetimeClassification c = classify_lifetime(3, 1, 2, 1, 0.5);
    CHECK(c.verdict == LifetimeVerdict::Finite);
    CHECK(c.exponent == 1.0);
    CHECK(c.t0 == doctest::Approx(0.20902640451800797).epsilon(1e-10));
    CHECK(c.method == LifetimeMethod::ExactTable);
    REQUIRE(c.agreement.has_value());
    CHECK(c.agreement->exact_exponent == 1);
    CHECK(std::abs(c.agreement->numeric_exponent - 1.0) < 0.05);
    CHECK(c.agreement->exponent_verdict == LifetimeVerdict::Finite);
    CHECK(c.agreement->quadrature_verdict == LifetimeVerdict::Finite);
    CHECK(c.agreement->agree);
    CHECK(c.panels > 0);
}

TEST_CASE("classify_lifetime: the named infinite-lifetime examples") {
    // mean curvature on the umbilic family (k = n, m = 1, l = 0)
    CHECK(classify_lifetime(2, 2, 1, 0, 0.5).verdict == LifetimeVerdict::Infinite);
    CHECK(classify_lifetime(3, 3, 1, 0, 0.5).verdict == LifetimeVerdict::Infinite);
    // inverse mean curvature one step below the umbilic family (k = n-1, m = 0, l = 1)
    CHECK(classify_lifetime(2, 1, 0, 1, 0.5).verdict == LifetimeVerdict::Infinite);
    CHECK(classify_lifetime(3, 2, 0, 1, 0.5).verdict == LifetimeVerdict::Infinite);
    // the contrasting finite case: k = n, m = 0, l = 1 has exponent +1
    CHECK(exact_exponent(3, 3, 0, 1) == 1);
    CHECK(classify_lifetime(3, 3, 0, 1, 0.5).verdict == LifetimeVerdict::Finite);
}

TEST_CASE("classify_lifetime agrees with itself across all small configurations") {
    for (int n = 1; n <= 3; ++n) {
        for (int k = 0; k <= n; ++k) {
            for (int m = 0; m <= n; ++m) {
                for (int l = 0; l <= n; ++l) {
                    const LifetimeClassification c = classify_lifetime(n, k, m, l, 0.5);
                    CAPTURE(n);
                    CAPTURE(k);
                    CAPTURE(m);
                    CAPTURE(l);
                    REQUIRE(c.agreement.has_value());
                    CHECK(c.agreement->agree);
                    CHECK(c.verdict == c.agreement->quadrature_verdict);
                    CHECK((c.verdict == LifetimeVerdict::Finite ||
                           c.verdict == LifetimeVerdict::Infinite));
                    if (c.verdict == LifetimeVerdict::Finite) {
                        CHECK(c.t0 > 0.0);
                        CHECK(std::isfinite(c.t0));
                    } else {
                        CHECK(std::isinf(c.t0));
                    }
                }
            }
        }
    }
}

TEST_CASE("classify_lifetime rejects invalid configurations") {
    CHECK_THROWS_AS(classify_lifetime(0, 0, 1, 0, 0.5), DomainError);
    CHECK_THROWS_AS(classify_lifetime(2, 3, 1, 0, 0.5), DomainError);
    CHECK_THROWS_AS(classify_lifetime(2, 1, 1, 0, 0.0), DomainError);
    CHECK_THROWS_AS(classify_lifetime(2, 1, 1, 0, -1.0), DomainError);
    CHECK_THROWS_AS(classify_lifetime(2, 1, 3, 0, 0.5), DomainError);
    CHECK_THROWS_AS(classify_lifetime(2, 1, 0, 3, 0.5), DomainError);
}

TEST_CASE("verdict names used in reports") {
    CHECK(std::string(to_string(LifetimeVerdict::Finite)) == "finite");
    CHECK(std::string(to_string(LifetimeVerdict::Infinite)) == "infinite");
    CHECK(std::string(to_string(LifetimeVerdict::Degenerate)) == "degenerate");
}
