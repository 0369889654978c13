#include "usc/selfenergy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "usc/error.hpp"
#include "usc/kernels.hpp"

namespace usc {
namespace {

bool at_band_edge(double omega, const ModelParams& params) {
    return params.dispersion == Dispersion::CosineHard &&
           std::abs(omega - params.omega_c) < kBandEdgeTolerance * params.omega_c;
}

// f(k)^2 off the grid, with the Silbey-Harris displacement of the solved gap.
double displacement_sq(double k, double delta_tilde, const ModelParams& params) {
    const double f = coupling(k, params) / (dispersion(k, params) + delta_tilde);
    return f * f;
}

}  // namespace

double lamb_shift_numeric(double omega, const PolaronSolution& sol, const ModeGrid& grid) {
    if (!(omega > 0.0)) throw ValidationError("lamb_shift_numeric: omega must be positive");
    if (sol.f.size() != grid.size()) throw ValidationError("lamb_shift_numeric: solution/grid mismatch");
    const ModelParams& params = grid.model;
    const double dt = sol.delta_tilde;

    std::vector<double> h(grid.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = sol.f[i] * sol.f[i];

    const auto k0 = momentum_for_frequency(omega, params);
    const bool pole_inside = k0 && *k0 > grid.k_lo && *k0 < grid.k_hi;

    double pv = 0.0;
    if (pole_inside) {
        if (at_band_edge(omega, params))
            throw ValidationError("lamb_shift_numeric: omega on the band edge");
        const double v0 = group_velocity(*k0, params);
        const double c0 = displacement_sq(*k0, dt, params) / v0;
        const double eps = 1e-10 * *k0;
        auto subtracted = [&](std::size_t i) {
            return h[i] / (omega - grid.frequencies[i]) - c0 / (*k0 - grid.momenta[i]);
        };

        const auto part = kernels::pv_subtracted_sum(grid.weight, grid.momenta, grid.frequencies, h, omega,
                                                     *k0, c0, eps);
        pv = part.sum;
        if (part.skipped >= 0) {
            // Removable singularity: take the mean of the neighbouring values.
            const auto i = static_cast<std::size_t>(part.skipped);
            double limit = 0.0;
            int count = 0;
            if (i > 0) limit += subtracted(i - 1), ++count;
            if (i + 1 < grid.size()) limit += subtracted(i + 1), ++count;
            if (count > 0) pv += grid.weight[i] * limit / count;
        }
        if (grid.origin_weight > 0.0) {
            const double h_lo = displacement_sq(grid.k_lo, dt, params);
            pv += grid.origin_weight *
                  (h_lo / (omega - dispersion(grid.k_lo, params)) - c0 / (*k0 - grid.k_lo));
        }
        pv += c0 * std::log((*k0 - grid.k_lo) / (grid.k_hi - *k0));
    } else {
        pv = kernels::pv_subtracted_sum(grid.weight, grid.momenta, grid.frequencies, h, omega, 0.0, 0.0, -1.0)
                 .sum;
        if (grid.origin_weight > 0.0) {
            pv += grid.origin_weight * displacement_sq(grid.k_lo, dt, params) /
                  (omega - dispersion(grid.k_lo, params));
        }
    }
    return 4.0 * dt * dt / std::numbers::pi * pv;
}

DecayRate decay_rate(double omega, const PolaronSolution& sol, const ModelParams& params) {
    if (omega < 0.0) throw ValidationError("decay_rate: omega must be >= 0");
    if (at_band_edge(omega, params)) return {std::numeric_limits<double>::infinity(), true};
    const auto k0 = momentum_for_frequency(omega, params);
    if (!k0 || omega == 0.0) return {0.0, false};
    const double dt = sol.delta_tilde;
    return {8.0 * dt * dt * displacement_sq(*k0, dt, params) / group_velocity(*k0, params), false};
}

SelfEnergyValue sigma_numeric(double omega, const PolaronSolution& sol, const ModeGrid& grid) {
    const auto gamma = decay_rate(omega, sol, grid.model);
    if (gamma.band_edge) throw ValidationError("sigma_numeric: omega on the band edge (van Hove divergence)");
    return SelfEnergyValue::from_parts(lamb_shift_numeric(omega, sol, grid), gamma.value);
}

SelfEnergyValue sigma_ohmic_closed(double omega, double delta_tilde, double alpha) {
    if (!(omega > 0.0)) throw ValidationError("sigma_ohmic_closed: omega must be positive");
    if (!(delta_tilde > 0.0)) throw ValidationError("sigma_ohmic_closed: delta_tilde must be positive");
    const double sum = omega + delta_tilde;
    const double pref = 2.0 * delta_tilde * delta_tilde * alpha / (sum * sum);
    const double re = omega * std::log(omega / delta_tilde) - omega - delta_tilde;
    return {{pref * re, -pref * std::numbers::pi * omega}};
}

}  // namespace usc
