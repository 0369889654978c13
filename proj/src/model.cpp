#include "usc/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "usc/error.hpp"

namespace usc {

double ModelParams::light_speed() const {
    if (c) return *c;
    return dispersion == Dispersion::CosineHard ? 0.5 * omega_c : 1.0;
}

double ModelParams::momentum_cutoff() const {
    if (dispersion == Dispersion::CosineHard) return std::numbers::pi;
    if (k_max) return *k_max;
    return 40.0 * omega_c / light_speed();
}

GridSpacing ModelParams::resolved_spacing() const {
    if (spacing != GridSpacing::Automatic) return spacing;
    return dispersion == Dispersion::CosineHard ? GridSpacing::Uniform : GridSpacing::Logarithmic;
}

void ModelParams::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw ValidationError("delta must be positive");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be >= 0");
    if (!(omega_c > 0.0) || !std::isfinite(omega_c)) throw ValidationError("omega_c must be positive");
    if (c && !(*c > 0.0)) throw ValidationError("propagation speed c must be positive");
    if (num_modes < 2) throw ValidationError("num_modes must be >= 2");
    if (dispersion == Dispersion::LinearExponential && k_max && !(*k_max > 0.0))
        throw ValidationError("k_max must be positive");
    if (resolved_spacing() == GridSpacing::Logarithmic) {
        if (!(log_k_min > 0.0)) throw ValidationError("log_k_min must be positive");
        if (log_k_min * delta / light_speed() >= momentum_cutoff())
            throw ValidationError("log_k_min must lie below the momentum cutoff");
    }
}

double dispersion(double k, const ModelParams& params) {
    if (params.dispersion == Dispersion::CosineHard) {
        // omega_c sqrt((1 - cos k)/2), written without the cancellation near k = 0.
        return params.omega_c * std::abs(std::sin(0.5 * k));
    }
    return params.light_speed() * std::abs(k);
}

double coupling(double k, const ModelParams& params) {
    const double w = dispersion(k, params);
    const double amp = std::sqrt(std::numbers::pi * params.alpha * params.light_speed() * w / 2.0);
    if (params.dispersion == Dispersion::LinearExponential) return amp * std::exp(-w / (2.0 * params.omega_c));
    return amp;
}

double spectral_density(double omega, const ModelParams& params) {
    if (omega < 0.0) throw ValidationError("spectral_density: omega must be >= 0");
    return std::numbers::pi * params.alpha * omega * std::exp(-omega / params.omega_c);
}

double group_velocity(double k, const ModelParams& params) {
    if (params.dispersion == Dispersion::CosineHard) return 0.5 * params.omega_c * std::abs(std::cos(0.5 * k));
    return params.light_speed();
}

std::optional<double> momentum_for_frequency(double omega, const ModelParams& params) {
    if (omega < 0.0) return std::nullopt;
    if (params.dispersion == Dispersion::CosineHard) {
        if (omega > params.omega_c) return std::nullopt;
        return 2.0 * std::asin(omega / params.omega_c);
    }
    return omega / params.light_speed();
}

ModeGrid build_grid(const ModelParams& params) {
    params.validate();
    const auto n = static_cast<std::size_t>(params.num_modes);
    const double k_hi = params.momentum_cutoff();

    ModeGrid grid;
    grid.model = params;
    grid.momenta.resize(n);
    grid.weight.resize(n);

    if (params.resolved_spacing() == GridSpacing::Uniform) {
        const double dk = k_hi / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            grid.momenta[i] = dk * static_cast<double>(i + 1);
            grid.weight[i] = dk;
        }
        grid.momenta.back() = k_hi;
        grid.weight.back() = 0.5 * dk;
        grid.k_lo = 0.0;
        grid.origin_weight = 0.5 * dk;
    } else {
        const double k_lo = params.log_k_min * params.delta / params.light_speed();
        const double du = std::log(k_hi / k_lo) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            const double k = k_lo * std::exp(du * static_cast<double>(i));
            grid.momenta[i] = k;
            grid.weight[i] = k * du;
        }
        grid.momenta.front() = k_lo;
        grid.momenta.back() = k_hi;
        grid.weight.front() = 0.5 * k_lo * du;
        grid.weight.back() = 0.5 * k_hi * du;
        grid.k_lo = k_lo;
        grid.origin_weight = 0.0;
    }
    grid.k_hi = k_hi;

    grid.frequencies.resize(n);
    grid.couplings.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid.frequencies[i] = dispersion(grid.momenta[i], params);
        grid.couplings[i] = coupling(grid.momenta[i], params);
    }
    return grid;
}

}  // namespace usc
