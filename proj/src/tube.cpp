#include "geoflow/tube.hpp"

#include <cmath>
#include <string>

namespace geoflow {

namespace {

double ipow(double base, int e) {
    double acc = 1.0;
    double b = base;
    int k = e;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

void check_radius(const TubeConfig& cfg, double r) {
    if (!(r >= 0.0)) throw DomainError("tube radius must be nonnegative, got " + std::to_string(r));
    if (r > kRMax)
        throw DomainError("tube radius " + std::to_string(r) + " exceeds cap " + std::to_string(kRMax));
    if (r == 0.0 && cfg.k < cfg.n)
        throw DomainError("tube radius 0 is singular unless k == n (coth blows up)");
}

}  // namespace

void validate(const TubeConfig& cfg) {
    if (cfg.n < 1) throw DomainError("dimension n must be >= 1, got " + std::to_string(cfg.n));
    if (cfg.k < 0 || cfg.k > cfg.n)
        throw DomainError("core dimension k must satisfy 0 <= k <= n, got k=" + std::to_string(cfg.k) +
                          ", n=" + std::to_string(cfg.n));
}

std::vector<double> principal_curvatures(const TubeConfig& cfg, double r) {
    validate(cfg);
    check_radius(cfg, r);
    std::vector<double> lambdas;
    lambdas.reserve(static_cast<std::size_t>(cfg.n));
    const double t = std::tanh(r);
    for (int i = 0; i < cfg.k; ++i) lambdas.push_back(t);
    if (cfg.k < cfg.n) {
        const double c = 1.0 / t;
        for (int i = cfg.k; i < cfg.n; ++i) lambdas.push_back(c);
    }
    return lambdas;
}

double area_factor(const TubeConfig& cfg, double r) {
    validate(cfg);
    if (!(r >= 0.0)) throw DomainError("tube radius must be nonnegative, got " + std::to_string(r));
    if (r > kRMax)
        throw DomainError("tube radius " + std::to_string(r) + " exceeds cap " + std::to_string(kRMax));
    return ipow(std::cosh(r), cfg.k) * ipow(std::sinh(r), cfg.n - cfg.k);
}

double mean_curvature(const TubeConfig& cfg, double r) {
    validate(cfg);
    check_radius(cfg, r);
    const double t = std::tanh(r);
    double h = cfg.k * t;
    if (cfg.k < cfg.n) h += (cfg.n - cfg.k) / t;
    return h;
}

double gauss_kronecker(const TubeConfig& cfg, double r) {
    validate(cfg);
    check_radius(cfg, r);
    // tanh^k * coth^(n-k) = tanh^(k-m) * coth^(n-k-m) with m = min(k, n-k);
    // cancelling first keeps the balanced case exactly 1.
    const int m = std::min(cfg.k, cfg.n - cfg.k);
    const double t = std::tanh(r);
    double value = ipow(t, cfg.k - m);
    if (cfg.n - cfg.k - m > 0) value *= ipow(1.0 / t, cfg.n - cfg.k - m);
    return value;
}

TubeState tube_state(const TubeConfig& cfg, double r, double speed_value) {
    TubeState st;
    st.r = r;
    st.lambdas = principal_curvatures(cfg, r);
    st.F = speed_value;
    st.H = mean_curvature(cfg, r);
    st.K = gauss_kronecker(cfg, r);
    st.area_factor = area_factor(cfg, r);
    return st;
}

std::vector<double> riccati_residual(const TubeConfig& cfg, double r, double dr) {
    validate(cfg);
    if (!(r > 0.0)) throw DomainError("riccati_residual requires r > 0");
    if (!(dr > 0.0) || dr > 1e-4)
        throw DomainError("riccati_residual requires 0 < dr <= 1e-4, got " + std::to_string(dr));
    if (!(r - dr > 0.0)) throw DomainError("riccati_residual requires r - dr > 0");
    check_radius(cfg, r + dr);
    const std::vector<double> lo = principal_curvatures(cfg, r - dr);
    const std::vector<double> mid = principal_curvatures(cfg, r);
    const std::vector<double> hi = principal_curvatures(cfg, r + dr);
    std::vector<double> res(mid.size());
    for (std::size_t i = 0; i < mid.size(); ++i) {
        const double deriv = (hi[i] - lo[i]) / (2.0 * dr);
        res[i] = deriv + mid[i] * mid[i] - 1.0;
    }
    return res;
}

}  // namespace geoflow
