#pragma once

#include <complex>

#include "usc/model.hpp"
#include "usc/polaron.hpp"

namespace usc {

/// Sigma(omega) = delta_L(omega) - i Gamma(omega) / 2.
struct SelfEnergyValue {
    std::complex<double> value{};

    double lamb_shift() const { return value.real(); }
    double decay_rate() const { return -2.0 * value.imag(); }

    static SelfEnergyValue from_parts(double lamb_shift, double decay_rate) {
        return {{lamb_shift, -0.5 * decay_rate}};
    }
};

struct DecayRate {
    double value = 0.0;
    /// omega sits on the CosineHard band edge where the group velocity
    /// vanishes; `value` is +inf.
    bool band_edge = false;
};

/// Relative distance from omega_c inside which CosineHard reports a band edge.
inline constexpr double kBandEdgeTolerance = 1e-6;

/// Principal value 4 Delta~^2 (1/pi) P int_0^inf dk f_k^2 / (omega - omega_k),
/// evaluated on the grid with the pole subtracted analytically.
double lamb_shift_numeric(double omega, const PolaronSolution& sol, const ModeGrid& grid);

/// Gamma(omega) = 8 Delta~^2 f_{k0}^2 / |d omega/dk|_{k0}, i.e. -2 Im of the
/// same self-energy whose real part lamb_shift_numeric returns.
DecayRate decay_rate(double omega, const PolaronSolution& sol, const ModelParams& params);

/// Both parts on the grid. Throws ValidationError at a CosineHard band edge.
SelfEnergyValue sigma_numeric(double omega, const PolaronSolution& sol, const ModeGrid& grid);

/// Cutoff-free Ohmic self-energy
///   2 Delta~^2 alpha / (omega + Delta~)^2 [omega ln(omega/Delta~) - omega - Delta~ - i pi omega].
SelfEnergyValue sigma_ohmic_closed(double omega, double delta_tilde, double alpha);

}  // namespace usc
