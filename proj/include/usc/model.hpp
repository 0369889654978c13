#pragma once

#include <optional>
#include <vector>

namespace usc {

enum class Dispersion {
    LinearExponential,  // omega = c|k|, g_k carries an exp(-omega/2 omega_c) cutoff
    CosineHard,         // lattice band omega_c |sin(k/2)|, no coupling cutoff
};

enum class GridSpacing {
    Automatic,    // Logarithmic for LinearExponential, Uniform for CosineHard
    Uniform,
    Logarithmic,  // trapezoid in ln k; resolves Delta~ << omega_c
};

/// Physical inputs of the waveguide spin-boson model. Frequencies share the
/// units of `delta`.
struct ModelParams {
    double delta = 1.0;
    double alpha = 0.0;
    double omega_c = 100.0;
    Dispersion dispersion = Dispersion::LinearExponential;
    /// Propagation speed. Unset: 1 for LinearExponential, omega_c/2 (the
    /// long-wavelength group velocity of the lattice band) for CosineHard.
    std::optional<double> c;
    /// Number of positive-momentum symmetric modes.
    int num_modes = 4096;
    /// LinearExponential only. Unset: omega(k_max) = 40 omega_c.
    std::optional<double> k_max;
    GridSpacing spacing = GridSpacing::Automatic;
    /// Smallest momentum of a logarithmic grid, in units of delta / c.
    double log_k_min = 1e-12;

    double light_speed() const;
    double momentum_cutoff() const;
    GridSpacing resolved_spacing() const;

    /// Throws ValidationError on any violated invariant.
    void validate() const;
};

/// Discretized positive-momentum modes with trapezoid quadrature weights.
///
/// `weight` integrates functions over [k_lo, k_hi]. A uniform grid omits
/// the node at k = 0; its trapezoid weight is kept in `origin_weight` so
/// integrands that do not vanish at the origin can add it back.
struct ModeGrid {
    ModelParams model;
    std::vector<double> momenta;
    std::vector<double> frequencies;
    std::vector<double> couplings;
    std::vector<double> weight;
    double k_lo = 0.0;
    double k_hi = 0.0;
    double origin_weight = 0.0;

    std::size_t size() const { return momenta.size(); }
};

double dispersion(double k, const ModelParams& params);
double coupling(double k, const ModelParams& params);

/// J(omega) = pi alpha omega exp(-omega/omega_c). Rejects omega < 0.
double spectral_density(double omega, const ModelParams& params);

/// |d omega / dk| at momentum k >= 0.
double group_velocity(double k, const ModelParams& params);

/// Positive momentum with dispersion(k) == omega, or nullopt when omega lies
/// outside the band (above omega_c for CosineHard).
std::optional<double> momentum_for_frequency(double omega, const ModelParams& params);

ModeGrid build_grid(const ModelParams& params);

}  // namespace usc
