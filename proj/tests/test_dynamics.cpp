#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "usc/dynamics.hpp"
#include "usc/error.hpp"

using namespace usc;

namespace {

ModelParams cosine(double alpha, int modes) {
    ModelParams p;
    p.dispersion = Dispersion::CosineHard;
    p.omega_c = 6.0;
    p.alpha = alpha;
    p.num_modes = modes;
    return p;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("Hamiltonian structure") {
    const auto p = cosine(0.07, 64);
    const auto grid = build_grid(p);
    const auto sol = solve_self_consistent(p, grid);
    const auto h = build_hamiltonian_matrix(sol, grid, p);
    CHECK(h.rows() == 65);
    CHECK((h - h.transpose()).norm() == 0.0);
    CHECK(h(0, 0) == doctest::Approx(0.5 * sol.delta_tilde));
    const auto h0 = build_hamiltonian_matrix(sol, grid, p, {false});
    CHECK((h - h0).norm() > 0.0);
    CHECK((h - h0).col(0).norm() == 0.0);
}

TEST_CASE("propagator matches the RK4 oracle") {
    for (bool vloc : {true, false}) {
        CAPTURE(vloc);
        const auto p = cosine(0.07, 128);
        const auto grid = build_grid(p);
        const auto sol = solve_self_consistent(p, grid);
        const Propagator prop(build_hamiltonian_matrix(sol, grid, p, {vloc}));
        const auto start = SingleExcitationState::excited(grid.size());
        const auto exact = prop.evolve(start, 10.0);
        std::vector<std::complex<double>> psi0(grid.size() + 1);
        psi0[0] = 1.0;
        const auto ref = oracle::rk4_evolve(sol, grid, psi0, 10.0, 0.002, vloc);
        double err = std::abs(exact.amp_e - ref[0]);
        for (std::size_t i = 0; i < grid.size(); ++i) err = std::max(err, std::abs(exact.amp_photon[i] - ref[i + 1]));
        CHECK(err <= 1e-6);
    }
}

TEST_CASE("norm and energy are conserved") {
    const auto p = cosine(0.1, 256);
    const auto grid = build_grid(p);
    const auto sol = solve_self_consistent(p, grid);
    const auto h = build_hamiltonian_matrix(sol, grid, p);
    const Propagator prop(h);
    const auto psi0 = to_vector(SingleExcitationState::excited(grid.size()));
    const double e0 = (psi0.adjoint() * h.cast<std::complex<double>>() * psi0)(0).real();
    for (double t : {1.0, 17.0, 250.0}) {
        const auto psi = prop.evolve(psi0, t);
        CHECK(std::abs(psi.squaredNorm() - 1.0) <= 1e-12);
        const double e = (psi.adjoint() * h.cast<std::complex<double>>() * psi)(0).real();
        CHECK(e == doctest::Approx(e0).epsilon(1e-12));
    }
    const auto s = evolve(SingleExcitationState::excited(grid.size()), h, 3.0);
    CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uncoupled qubit does not decay") {
    const auto trace = emission_run(cosine(0.0, 64), 5.0, 11);
    for (double pe : trace.p_e) CHECK(pe == doctest::Approx(1.0));
}

TEST_CASE("weak-coupling emission rate") {
    const auto p = cosine(0.01, 512);
    const auto trace = emission_run(p, 150.0, 301);
    for (double n : trace.n_total) CHECK(std::abs(n - 1.0) <= 1e-10);
    const auto rate = fit_decay_rate(trace, 0.05, 0.9, 150.0);
    REQUIRE(rate);
    const double gamma_markov = std::numbers::pi * p.alpha * trace.delta_tilde;
    CHECK(*rate == doctest::Approx(gamma_markov).epsilon(0.1));
    CHECK(trace.warnings.empty());
}

TEST_CASE("decay fit on a synthetic exponential") {
    EmissionTrace t;
    t.t_recurrence = 1e9;
    for (int i = 0; i < 100; ++i) {
        t.times.push_back(0.1 * i);
        t.p_e.push_back(std::exp(-0.3 * 0.1 * i));
    }
    CHECK(fit_decay_rate(t).value() == doctest::Approx(0.3).epsilon(1e-12));
    t.p_e.assign(100, 1.0);
    CHECK_FALSE(fit_decay_rate(t).has_value());
}

TEST_CASE("recurrence warning and spectrum helpers") {
    const auto trace = emission_run(cosine(0.1, 32), 100.0, 5);
    CHECK_FALSE(trace.warnings.empty());
    CHECK(trace.t_recurrence > 0.0);
    CHECK(spectral_rms_width(trace) > 0.0);
    CHECK(spectral_peak(trace) > 0.0);
    CHECK_THROWS_AS(emission_run(cosine(0.1, 32), -1.0, 5), ValidationError);
    CHECK_THROWS_AS(emission_run(cosine(0.1, 32), 1.0, 1), ValidationError);
}

}
