#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "usc/model.hpp"
#include "usc/polaron.hpp"

namespace usc {

/// One excitation: the excited qubit with photon vacuum, or the ground-state
/// qubit with one photon in symmetric mode k_i.
struct SingleExcitationState {
    std::complex<double> amp_e{};
    std::vector<std::complex<double>> amp_photon;

    static SingleExcitationState excited(std::size_t num_modes);
    double norm_sq() const;
};

struct HamiltonianOptions {
    /// Diagnostic switch: false drops the rank-one photon potential.
    bool include_v_local = true;
};

/// Single-excitation polaron Hamiltonian, basis {|e,0>, |g,k_1>, ..., |g,k_M>}:
///   <e|H|e>      = +Delta~/2
///   <k|H|k'>     = (-Delta~/2 + omega_k) delta_kk' + 4 Delta~ f_k f_k' / L
///   <e|H|k>      = 2 sqrt(2) Delta~ f_k / sqrt(L)
/// The per-mode 1/L is the quadrature factor weight_k / 2pi, i.e. L = 2M on a
/// uniform grid of M positive momenta, with the unpaired k = pi node halved.
/// Real symmetric, hence Hermitian.
Eigen::MatrixXd build_hamiltonian_matrix(const PolaronSolution& sol, const ModeGrid& grid,
                                         const ModelParams& params, const HamiltonianOptions& options = {});

/// Exact propagator from a full eigendecomposition; evolve() is exact for any t.
class Propagator {
public:
    explicit Propagator(const Eigen::MatrixXd& hamiltonian);

    SingleExcitationState evolve(const SingleExcitationState& state, double t) const;
    Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi, double t) const;

    const Eigen::VectorXd& energies() const { return energies_; }

private:
    Eigen::VectorXd energies_;
    Eigen::MatrixXd vectors_;
};

SingleExcitationState evolve(const SingleExcitationState& state, const Eigen::MatrixXd& hamiltonian, double t);

Eigen::VectorXcd to_vector(const SingleExcitationState& state);
SingleExcitationState from_vector(const Eigen::VectorXcd& psi);

struct EmissionTrace {
    double delta_tilde = 0.0;
    std::vector<double> times;
    std::vector<double> p_e;
    std::vector<double> n_total;
    std::vector<double> spectrum_omega;  // grid frequencies
    std::vector<double> spectrum;        // |amplitude|^2 per mode at the final time
    double t_recurrence = 0.0;           // 2 pi / (grid frequency spacing at Delta~)
    std::vector<std::string> warnings;
};

struct EmissionOptions {
    HamiltonianOptions hamiltonian;
    SolverOptions solver;
};

/// Spontaneous emission from |e,0> sampled at n_samples >= 2 times on [0, t_max].
EmissionTrace emission_run(const ModelParams& params, double t_max, int n_samples,
                           const EmissionOptions& options = {});

/// 2 pi over the grid frequency spacing next to `omega`.
double recurrence_time(const ModeGrid& grid, double omega);

/// Exponential rate from a least-squares line through ln p_e over samples with
/// p_lo <= p_e <= p_hi and t < t_limit (default t_recurrence / 2). Needs at
/// least three samples.
std::optional<double> fit_decay_rate(const EmissionTrace& trace, double p_lo = 0.1, double p_hi = 0.8,
                                     std::optional<double> t_limit = std::nullopt);

/// RMS frequency spread of the final emitted spectrum.
double spectral_rms_width(const EmissionTrace& trace);

/// Frequency of the most populated mode in the final spectrum.
double spectral_peak(const EmissionTrace& trace);

}  // namespace usc
