#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "usc/error.hpp"
#include "usc/polaron.hpp"

using namespace usc;

namespace {

ModelParams linear(double alpha, double omega_c = 100.0) {
    ModelParams p;
    p.alpha = alpha;
    p.omega_c = omega_c;
    return p;
}

}  // namespace

TEST_SUITE("polaron") {

TEST_CASE("no coupling leaves the gap untouched") {
    const auto p = linear(0.0);
    const auto sol = solve_self_consistent(p, build_grid(p));
    CHECK(sol.delta_tilde == 1.0);
    CHECK(sol.iterations == 1);
    CHECK(asymptotic_gap(p) == 1.0);
}

TEST_CASE("fixed point agrees with the bisection oracle") {
    for (double alpha : {0.05, 0.1, 0.2, 0.3}) {
        CAPTURE(alpha);
        const auto p = linear(alpha);
        const auto grid = build_grid(p);
        const auto sol = solve_self_consistent(p, grid);
        const double ref = oracle::bisect_gap(grid, p.delta);
        CHECK(std::abs(sol.delta_tilde / ref - 1.0) <= 1e-10);
        CHECK(std::abs(renormalized_gap(sol.f, grid, p) / sol.delta_tilde - 1.0) <= 1e-10);
    }
    ModelParams c;
    c.dispersion = Dispersion::CosineHard;
    c.omega_c = 6.0;
    c.num_modes = 512;
    c.alpha = 0.07;
    const auto grid = build_grid(c);
    const auto sol = solve_self_consistent(c, grid);
    CHECK(std::abs(sol.delta_tilde / oracle::bisect_gap(grid, 1.0) - 1.0) <= 1e-10);
}

TEST_CASE("gap decreases with coupling") {
    double prev = 1.0;
    for (double alpha : {0.05, 0.1, 0.2, 0.3, 0.5}) {
        const auto p = linear(alpha);
        const double dt = solve_self_consistent(p, build_grid(p)).delta_tilde;
        CHECK(dt < prev);
        CHECK(dt > 0.0);
        prev = dt;
    }
}

TEST_CASE("large-cutoff power law") {
    // Self-consistent gap tends to Delta (c Delta/omega_c)^(alpha/(1-alpha)) with
    // c = e^(1+gamma); the slope matches the asymptotic formula.
    for (double alpha : {0.1, 0.3}) {
        CAPTURE(alpha);
        const double w1 = 1e4, w2 = 1e6;
        const auto p1 = linear(alpha, w1), p2 = linear(alpha, w2);
        const double d1 = solve_self_consistent(p1, build_grid(p1)).delta_tilde;
        const double d2 = solve_self_consistent(p2, build_grid(p2)).delta_tilde;
        const double slope = std::log(d2 / d1) / std::log(w1 / w2);
        CHECK(slope == doctest::Approx(alpha / (1.0 - alpha)).epsilon(0.02));
        const double prefactor = std::pow(d2, (1.0 - alpha) / alpha) * w2;
        CHECK(prefactor == doctest::Approx(std::exp(1.0 + std::numbers::egamma)).epsilon(0.02));
    }
}

TEST_CASE("grid refinement converges") {
    auto gap = [](int n) {
        auto p = linear(0.2);
        p.num_modes = n;
        return solve_self_consistent(p, build_grid(p)).delta_tilde;
    };
    const double a = gap(1024), b = gap(2048), c = gap(4096);
    CHECK(std::abs(c - b) <= std::abs(b - a) + 1e-14);
    CHECK(std::abs(c - b) / c < 1e-8);
}

TEST_CASE("uniform and log grids agree") {
    auto p = linear(0.1, 20.0);
    p.spacing = GridSpacing::Uniform;
    p.num_modes = 200000;
    const double u = solve_self_consistent(p, build_grid(p)).delta_tilde;
    p.spacing = GridSpacing::Logarithmic;
    p.num_modes = 4096;
    const double l = solve_self_consistent(p, build_grid(p)).delta_tilde;
    CHECK(u == doctest::Approx(l).epsilon(1e-4));
}

TEST_CASE("oscillating iteration falls back to bisection") {
    // The gap map is increasing, so only over-relaxation makes the iterates alternate.
    const auto p = linear(0.6, 1e4);
    const auto grid = build_grid(p);
    SolverOptions opt;
    opt.damping = 1.9;
    const auto sol = solve_self_consistent(p, grid, opt);
    CHECK(sol.used_bisection);
    CHECK(std::abs(sol.delta_tilde / oracle::bisect_gap(grid, 1.0) - 1.0) <= 1e-10);
    CHECK_FALSE(sol.warnings.empty());
}

TEST_CASE("errors") {
    const auto p = linear(0.2);
    const auto grid = build_grid(p);
    SolverOptions opt;
    opt.max_iter = 2;
    opt.damping = 0.1;
    CHECK_THROWS_AS(solve_self_consistent(p, grid, opt), ConvergenceError);
    opt.max_iter = 100;
    opt.damping = 2.0;
    CHECK_THROWS_AS(solve_self_consistent(p, grid, opt), ValidationError);
    CHECK_THROWS_AS(silbey_harris_displacement(0.0, grid), ValidationError);
    CHECK_THROWS_AS(asymptotic_gap(linear(1.0)), ValidationError);
    std::vector<double> short_f(3);
    CHECK_THROWS_AS(renormalized_gap(short_f, grid, p), ValidationError);
}

}
