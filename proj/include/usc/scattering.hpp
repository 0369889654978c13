#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "usc/model.hpp"
#include "usc/selfenergy.hpp"

namespace usc {

struct ScatteringAmplitudes {
    std::complex<double> s{1.0, 0.0};
    std::complex<double> r{};
    std::complex<double> t{1.0, 0.0};
    double reflectivity = 0.0;
    double transmissivity = 1.0;
};

enum class SigmaSource { ClosedOhmic, NumericGrid };

struct ScatteringConfig {
    /// Extra loss Gamma_phi >= 0, entered as Sigma -> Sigma - i Gamma_phi.
    double dephasing_rate = 0.0;
    /// Replace the full self-energy by the uniform rate Gamma(Delta~).
    bool use_markov = false;
    /// Unset: ClosedOhmic for LinearExponential, NumericGrid for CosineHard.
    std::optional<SigmaSource> sigma_source;
    /// Diagnostic: drop the Lamb shift before forming s.
    bool zero_lamb_shift = false;

    SigmaSource resolved_source(const ModelParams& params) const;
};

/// Chiral amplitude
///   s = [(w - D)D - (w + D)(Sigma* - i G_phi)] / [(w - D)D - (w + D)(Sigma - i G_phi)]
/// with D = Delta~ and `sigma` the lossless self-energy. Throws when both
/// numerator and denominator vanish (no coupling at w = D).
std::complex<double> phase_shift(double omega, double delta_tilde, const SelfEnergyValue& sigma,
                                 const ScatteringConfig& config);

ScatteringAmplitudes reflection_transmission(std::complex<double> s);

/// Markov-limit reflection with a frequency-independent rate and no Lamb shift.
std::complex<double> markov_reflection(double omega, double delta_tilde, double gamma);

SelfEnergyValue apply_dephasing(const SelfEnergyValue& sigma, double gamma_phi);

struct LineshapePoint {
    double omega = 0.0;
    ScatteringAmplitudes amp;
    double lamb_shift = 0.0;
    double decay_rate = 0.0;
};

/// Frequency scan of the reflection lineshape plus extracted features.
struct Lineshape {
    double delta_tilde = 0.0;
    std::vector<LineshapePoint> points;
    double omega_reson = 0.0;
    double peak_reflectivity = 0.0;
    std::optional<double> fwhm;
    std::optional<double> alpha_lower;  // fwhm / (pi omega_reson)
    std::optional<double> asymmetry;    // (right half-width - left half-width) / fwhm
    std::vector<std::string> diagnostics;

    std::vector<double> omegas() const;
    std::vector<double> reflectivities() const;
};

/// Resonance and half-height features of a sampled curve R(omega). Resonance
/// uses a three-point parabola around the sample maximum; crossings are
/// linearly interpolated.
struct PeakFeatures {
    double omega_reson = 0.0;
    double peak = 0.0;
    std::optional<double> left;
    std::optional<double> right;
};
PeakFeatures locate_peak(const std::vector<double>& omega, const std::vector<double>& value);

/// Amplitudes at one frequency from an already-solved gap.
LineshapePoint scatter_at(double omega, const PolaronSolution& sol, const ModeGrid& grid,
                          const ScatteringConfig& config);

Lineshape lineshape_from_solution(const PolaronSolution& sol, const ModeGrid& grid,
                                  const ScatteringConfig& config, double omega_min, double omega_max,
                                  int n_points);

/// Solves the polaron fixed point for `params`, then scans
/// [omega_min, omega_max] with n_points >= 16 samples.
Lineshape compute_lineshape(const ModelParams& params, const ScatteringConfig& config, double omega_min,
                            double omega_max, int n_points);

}  // namespace usc
