#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "usc/error.hpp"
#include "usc/selfenergy.hpp"

using namespace usc;

namespace {

struct Setup {
    ModelParams p;
    ModeGrid grid;
    PolaronSolution sol;
};

Setup cosine(double alpha, int modes) {
    Setup s;
    s.p.dispersion = Dispersion::CosineHard;
    s.p.omega_c = 6.0;
    s.p.alpha = alpha;
    s.p.num_modes = modes;
    s.grid = build_grid(s.p);
    s.sol = solve_self_consistent(s.p, s.grid);
    return s;
}

double oracle_lamb_shift(const Setup& s, double omega) {
    const double dt = s.sol.delta_tilde;
    auto f2 = [&](double k) {
        const double f = coupling(k, s.p) / (dispersion(k, s.p) + dt);
        return f * f;
    };
    auto disp = [&](double k) { return dispersion(k, s.p); };
    const double pre = 4.0 * dt * dt / std::numbers::pi;
    const auto k0 = momentum_for_frequency(omega, s.p);
    if (!k0) return pre * oracle::gauss_legendre([&](double k) { return f2(k) / (omega - disp(k)); }, 0.0,
                                                 std::numbers::pi, 400);
    return pre * oracle::principal_value(f2, disp, 0.0, std::numbers::pi, *k0, omega);
}

}  // namespace

TEST_SUITE("selfenergy") {

TEST_CASE("closed form gives Gamma(Delta~) = pi alpha Delta~") {
    for (double alpha : {0.01, 0.1, 0.3, 0.5}) {
        for (double dt : {1e-3, 0.4, 1.0}) {
            const double gamma = sigma_ohmic_closed(dt, dt, alpha).decay_rate();
            CHECK(std::abs(gamma - std::numbers::pi * alpha * dt) <= 1e-12 * dt);
        }
    }
    CHECK_THROWS_AS(sigma_ohmic_closed(0.0, 1.0, 0.1), ValidationError);
}

TEST_CASE("grid principal value matches the folded-quadrature oracle") {
    const auto s = cosine(0.1, 4096);
    const double dt = s.sol.delta_tilde;
    for (double w : {0.05 * dt, 0.5 * dt, dt, 2.0 * dt, 3.0, 5.5, 5.99}) {
        CAPTURE(w);
        const double ref = oracle_lamb_shift(s, w);
        CHECK(lamb_shift_numeric(w, s.sol, s.grid) == doctest::Approx(ref).epsilon(2e-4).scale(1e-3));
    }
    // above the band the integral is regular
    CHECK(lamb_shift_numeric(7.0, s.sol, s.grid) == doctest::Approx(oracle_lamb_shift(s, 7.0)).epsilon(1e-6));
}

TEST_CASE("decay rate is twice the spectral weight at the shell") {
    const auto s = cosine(0.1, 512);
    const double dt = s.sol.delta_tilde;
    const double w = 1.3;
    const double k0 = *momentum_for_frequency(w, s.p);
    const double f = coupling(k0, s.p) / (w + dt);
    CHECK(decay_rate(w, s.sol, s.p).value == doctest::Approx(8.0 * dt * dt * f * f / group_velocity(k0, s.p)));
    CHECK(decay_rate(7.0, s.sol, s.p).value == 0.0);
    CHECK(decay_rate(6.0, s.sol, s.p).band_edge);
    CHECK_THROWS_AS(sigma_numeric(6.0, s.sol, s.grid), ValidationError);
    CHECK(sigma_numeric(w, s.sol, s.grid).decay_rate() == doctest::Approx(decay_rate(w, s.sol, s.p).value));
}

TEST_CASE("linear numeric self-energy approaches the closed form at large cutoff") {
    ModelParams p;
    p.alpha = 0.2;
    p.omega_c = 1e5;
    const auto grid = build_grid(p);
    const auto sol = solve_self_consistent(p, grid);
    const double dt = sol.delta_tilde;
    for (double x : {0.2, 1.0, 2.0}) {
        const auto num = sigma_numeric(x * dt, sol, grid);
        const auto ref = sigma_ohmic_closed(x * dt, dt, p.alpha);
        CHECK(num.lamb_shift() == doctest::Approx(ref.lamb_shift()).epsilon(1e-3));
        CHECK(num.decay_rate() == doctest::Approx(ref.decay_rate()).epsilon(1e-4));
    }
}

TEST_CASE("input checks") {
    const auto s = cosine(0.1, 64);
    CHECK_THROWS_AS(lamb_shift_numeric(0.0, s.sol, s.grid), ValidationError);
    CHECK_THROWS_AS(lamb_shift_numeric(-1.0, s.sol, s.grid), ValidationError);
}

}
