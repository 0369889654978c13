#include "usc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "usc/error.hpp"

namespace usc {

SingleExcitationState SingleExcitationState::excited(std::size_t num_modes) {
    SingleExcitationState s;
    s.amp_e = 1.0;
    s.amp_photon.assign(num_modes, {});
    return s;
}

double SingleExcitationState::norm_sq() const {
    double acc = std::norm(amp_e);
    for (const auto& a : amp_photon) acc += std::norm(a);
    return acc;
}

Eigen::MatrixXd build_hamiltonian_matrix(const PolaronSolution& sol, const ModeGrid& grid,
                                         const ModelParams& params, const HamiltonianOptions& options) {
    const auto m = static_cast<Eigen::Index>(grid.size());
    if (sol.f.size() != grid.size()) throw ValidationError("build_hamiltonian_matrix: solution/grid mismatch");
    (void)params;  // grid.model carries the same parameters

    const double dt = sol.delta_tilde;
    // Scaled displacements f_k / sqrt(L).
    Eigen::VectorXd u(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        u(i) = sol.f[ii] * std::sqrt(grid.weight[ii] / (2.0 * std::numbers::pi));
    }

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + 1, m + 1);
    h(0, 0) = 0.5 * dt;
    for (Eigen::Index i = 0; i < m; ++i) {
        h(i + 1, i + 1) = -0.5 * dt + grid.frequencies[static_cast<std::size_t>(i)];
        h(0, i + 1) = h(i + 1, 0) = 2.0 * std::numbers::sqrt2 * dt * u(i);
    }
    if (options.include_v_local) {
        for (Eigen::Index j = 0; j < m; ++j) {
            for (Eigen::Index i = j; i < m; ++i) {
                const double v = 4.0 * dt * u(i) * u(j);
                h(i + 1, j + 1) += v;
                if (i != j) h(j + 1, i + 1) += v;
            }
        }
    }
    return h;
}

Propagator::Propagator(const Eigen::MatrixXd& hamiltonian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hamiltonian);
    if (eig.info() != Eigen::Success) throw ConvergenceError("dynamics: eigendecomposition failed", 1.0);
    energies_ = eig.eigenvalues();
    vectors_ = eig.eigenvectors();
}

Eigen::VectorXcd Propagator::evolve(const Eigen::VectorXcd& psi, double t) const {
    Eigen::VectorXcd c = vectors_.transpose().cast<std::complex<double>>() * psi;
    for (Eigen::Index n = 0; n < c.size(); ++n) c(n) *= std::polar(1.0, -energies_(n) * t);
    return vectors_.cast<std::complex<double>>() * c;
}

SingleExcitationState Propagator::evolve(const SingleExcitationState& state, double t) const {
    return from_vector(evolve(to_vector(state), t));
}

SingleExcitationState evolve(const SingleExcitationState& state, const Eigen::MatrixXd& hamiltonian, double t) {
    return Propagator(hamiltonian).evolve(state, t);
}

Eigen::VectorXcd to_vector(const SingleExcitationState& state) {
    Eigen::VectorXcd psi(static_cast<Eigen::Index>(state.amp_photon.size() + 1));
    psi(0) = state.amp_e;
    for (std::size_t i = 0; i < state.amp_photon.size(); ++i) psi(static_cast<Eigen::Index>(i + 1)) = state.amp_photon[i];
    return psi;
}

SingleExcitationState from_vector(const Eigen::VectorXcd& psi) {
    SingleExcitationState s;
    s.amp_e = psi(0);
    s.amp_photon.assign(psi.data() + 1, psi.data() + psi.size());
    return s;
}

double recurrence_time(const ModeGrid& grid, double omega) {
    const auto& w = grid.frequencies;
    auto it = std::lower_bound(w.begin(), w.end(), omega);
    std::size_t i = static_cast<std::size_t>(std::distance(w.begin(), it));
    if (i == 0) i = 1;
    if (i >= w.size()) i = w.size() - 1;
    const double spacing = w[i] - w[i - 1];
    return spacing > 0.0 ? 2.0 * std::numbers::pi / spacing : std::numeric_limits<double>::infinity();
}

EmissionTrace emission_run(const ModelParams& params, double t_max, int n_samples, const EmissionOptions& options) {
    if (!(t_max > 0.0)) throw ValidationError("emission_run: t_max must be positive");
    if (n_samples < 2) throw ValidationError("emission_run: need at least 2 samples");

    const ModeGrid grid = build_grid(params);
    const PolaronSolution sol = solve_self_consistent(params, grid, options.solver);
    const Propagator prop(build_hamiltonian_matrix(sol, grid, params, options.hamiltonian));

    EmissionTrace trace;
    trace.delta_tilde = sol.delta_tilde;
    trace.warnings = sol.warnings;
    trace.t_recurrence = recurrence_time(grid, sol.delta_tilde);
    if (t_max > 0.5 * trace.t_recurrence) {
        std::ostringstream msg;
        msg << "t_max = " << t_max << " exceeds half the finite-grid recurrence time (t_rec ~ "
            << trace.t_recurrence << "); increase num_modes for a clean emission window";
        trace.warnings.push_back(msg.str());
    }

    const auto psi0 = to_vector(SingleExcitationState::excited(grid.size()));
    Eigen::VectorXcd psi = psi0;
    const double dt_sample = t_max / static_cast<double>(n_samples - 1);
    for (int i = 0; i < n_samples; ++i) {
        const double t = i + 1 == n_samples ? t_max : dt_sample * i;
        psi = prop.evolve(psi0, t);
        trace.times.push_back(t);
        trace.p_e.push_back(std::norm(psi(0)));
        trace.n_total.push_back(psi.squaredNorm());
    }
    trace.spectrum_omega = grid.frequencies;
    trace.spectrum.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) trace.spectrum[k] = std::norm(psi(static_cast<Eigen::Index>(k + 1)));
    return trace;
}

std::optional<double> fit_decay_rate(const EmissionTrace& trace, double p_lo, double p_hi,
                                     std::optional<double> t_limit) {
    const double limit = t_limit.value_or(0.5 * trace.t_recurrence);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double p = trace.p_e[i];
        const double t = trace.times[i];
        if (p < p_lo || p > p_hi || t >= limit) continue;
        const double y = std::log(p);
        sx += t, sy += y, sxx += t * t, sxy += t * y;
        ++n;
    }
    if (n < 3) return std::nullopt;
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return std::nullopt;
    return -(n * sxy - sx * sy) / den;
}

double spectral_rms_width(const EmissionTrace& trace) {
    double total = 0, mean = 0;
    for (std::size_t k = 0; k < trace.spectrum.size(); ++k) {
        total += trace.spectrum[k];
        mean += trace.spectrum[k] * trace.spectrum_omega[k];
    }
    if (total <= 0.0) return 0.0;
    mean /= total;
    double var = 0;
    for (std::size_t k = 0; k < trace.spectrum.size(); ++k) {
        const double d = trace.spectrum_omega[k] - mean;
        var += trace.spectrum[k] * d * d;
    }
    return std::sqrt(var / total);
}

double spectral_peak(const EmissionTrace& trace) {
    const auto it = std::max_element(trace.spectrum.begin(), trace.spectrum.end());
    return trace.spectrum_omega[static_cast<std::size_t>(std::distance(trace.spectrum.begin(), it))];
}

}  // namespace usc
