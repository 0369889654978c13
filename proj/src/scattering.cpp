#include "usc/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "usc/error.hpp"

namespace usc {

SigmaSource ScatteringConfig::resolved_source(const ModelParams& params) const {
    if (sigma_source) return *sigma_source;
    return params.dispersion == Dispersion::LinearExponential ? SigmaSource::ClosedOhmic
                                                              : SigmaSource::NumericGrid;
}

std::complex<double> phase_shift(double omega, double delta_tilde, const SelfEnergyValue& sigma,
                                 const ScatteringConfig& config) {
    if (config.dephasing_rate < 0.0) throw ValidationError("phase_shift: dephasing rate must be >= 0");
    const std::complex<double> loss{0.0, -config.dephasing_rate};
    const double bare = (omega - delta_tilde) * delta_tilde;
    const double weight = omega + delta_tilde;
    const std::complex<double> num = bare - weight * (std::conj(sigma.value) + loss);
    const std::complex<double> den = bare - weight * (sigma.value + loss);
    if (std::abs(den) == 0.0) {
        throw ValidationError("phase_shift: no coupling (Gamma = Gamma_phi = 0 and omega = Delta~ with no Lamb shift)");
    }
    return num / den;
}

ScatteringAmplitudes reflection_transmission(std::complex<double> s) {
    ScatteringAmplitudes a;
    a.s = s;
    a.r = 0.5 * (s - 1.0);
    a.t = 0.5 * (s + 1.0);
    a.reflectivity = std::norm(a.r);
    a.transmissivity = std::norm(a.t);
    return a;
}

std::complex<double> markov_reflection(double omega, double delta_tilde, double gamma) {
    const std::complex<double> loss{0.0, (omega + delta_tilde) * 0.5 * gamma};
    return -loss / ((omega - delta_tilde) * delta_tilde + loss);
}

SelfEnergyValue apply_dephasing(const SelfEnergyValue& sigma, double gamma_phi) {
    if (gamma_phi < 0.0) throw ValidationError("apply_dephasing: gamma_phi must be >= 0");
    return {sigma.value - std::complex<double>{0.0, gamma_phi}};
}

std::vector<double> Lineshape::omegas() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.omega);
    return out;
}

std::vector<double> Lineshape::reflectivities() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.amp.reflectivity);
    return out;
}

PeakFeatures locate_peak(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) throw ValidationError("locate_peak: need >= 3 samples");
    const auto n = x.size();
    const auto i = static_cast<std::size_t>(std::distance(y.begin(), std::max_element(y.begin(), y.end())));

    PeakFeatures out;
    out.omega_reson = x[i];
    out.peak = y[i];
    if (i > 0 && i + 1 < n) {
        const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
        const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
        const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
        const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
        if (den != 0.0) {
            const double xv = std::clamp(x1 - 0.5 * num / den, x0, x2);
            // Lagrange parabola through the three samples, evaluated at the vertex.
            const double l0 = (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2));
            const double l1 = (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2));
            const double l2 = (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1));
            out.omega_reson = xv;
            out.peak = std::max(y1, l0 * y0 + l1 * y1 + l2 * y2);
        }
    }

    const double half = 0.5 * out.peak;
    for (std::size_t j = i; j-- > 0;) {
        if (y[j] < half) {
            out.left = x[j] + (half - y[j]) * (x[j + 1] - x[j]) / (y[j + 1] - y[j]);
            break;
        }
    }
    for (std::size_t j = i + 1; j < n; ++j) {
        if (y[j] < half) {
            out.right = x[j - 1] + (half - y[j - 1]) * (x[j] - x[j - 1]) / (y[j] - y[j - 1]);
            break;
        }
    }
    return out;
}

LineshapePoint scatter_at(double omega, const PolaronSolution& sol, const ModeGrid& grid,
                          const ScatteringConfig& config) {
    const double dt = sol.delta_tilde;
    const bool closed = config.resolved_source(grid.model) == SigmaSource::ClosedOhmic;

    SelfEnergyValue sigma;
    if (config.use_markov) {
        const double gamma = closed ? sigma_ohmic_closed(dt, dt, grid.model.alpha).decay_rate()
                                    : decay_rate(dt, sol, grid.model).value;
        sigma = SelfEnergyValue::from_parts(0.0, gamma);
    } else {
        sigma = closed ? sigma_ohmic_closed(omega, dt, grid.model.alpha) : sigma_numeric(omega, sol, grid);
    }
    if (config.zero_lamb_shift) sigma = SelfEnergyValue::from_parts(0.0, sigma.decay_rate());

    LineshapePoint p;
    p.omega = omega;
    p.amp = reflection_transmission(phase_shift(omega, dt, sigma, config));
    p.lamb_shift = sigma.lamb_shift();
    p.decay_rate = sigma.decay_rate();
    return p;
}

Lineshape lineshape_from_solution(const PolaronSolution& sol, const ModeGrid& grid,
                                  const ScatteringConfig& config, double omega_min, double omega_max,
                                  int n_points) {
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
        throw ValidationError("lineshape: need 0 < omega_min < omega_max");
    if (n_points < 16) throw ValidationError("lineshape: need at least 16 points");

    Lineshape ls;
    ls.delta_tilde = sol.delta_tilde;
    ls.diagnostics = sol.warnings;
    ls.points.reserve(static_cast<std::size_t>(n_points));
    const double step = (omega_max - omega_min) / static_cast<double>(n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        const double omega = i + 1 == n_points ? omega_max : omega_min + step * i;
        ls.points.push_back(scatter_at(omega, sol, grid, config));
    }

    const auto peak = locate_peak(ls.omegas(), ls.reflectivities());
    ls.omega_reson = peak.omega_reson;
    ls.peak_reflectivity = peak.peak;
    if (peak.left && peak.right) {
        const double width = *peak.right - *peak.left;
        ls.fwhm = width;
        ls.alpha_lower = width / (std::numbers::pi * peak.omega_reson);
        ls.asymmetry = ((*peak.right - peak.omega_reson) - (peak.omega_reson - *peak.left)) / width;
    } else {
        std::ostringstream msg;
        msg << "no half-height crossing on the " << (peak.left ? "high" : "low")
            << "-frequency side of the resonance inside [" << omega_min << ", " << omega_max
            << "]; widen scan";
        ls.diagnostics.push_back(msg.str());
    }
    return ls;
}

Lineshape compute_lineshape(const ModelParams& params, const ScatteringConfig& config, double omega_min,
                            double omega_max, int n_points) {
    const ModeGrid grid = build_grid(params);
    const PolaronSolution sol = solve_self_consistent(params, grid);
    return lineshape_from_solution(sol, grid, config, omega_min, omega_max, n_points);
}

}  // namespace usc
