#include "usc/toulouse.hpp"

#include <cmath>
#include <numbers>

#include "usc/error.hpp"
#include "usc/model.hpp"
#include "usc/polaron.hpp"
#include "usc/scattering.hpp"
#include "usc/selfenergy.hpp"

namespace usc {

double w_param(const ToulouseInput& input) {
    if (!(input.k > 0.0)) throw ValidationError("w_param: k must be positive");
    if (!(input.omega_c > 0.0)) throw ValidationError("w_param: omega_c must be positive");
    return std::numbers::pi * input.delta * input.delta / (4.0 * input.omega_c * input.k);
}

namespace {

// s - 1, formed without adding the 1 so small deviations keep their digits.
std::complex<double> s_minus_one(double w) {
    using namespace std::complex_literals;
    const std::complex<double> pref = 2.0i * w / (1.0 + 2.0i * w);
    const double angle = std::atan(1.0 / (2.0 * w)) + std::atan(w / (1.0 + 2.0 * w * w));
    // ln(w^2 / (1 + w^2)) without cancellation at either end.
    const double log_term = w > 1.0 ? -std::log1p(1.0 / (w * w)) : 2.0 * std::log(w) - std::log1p(w * w);
    return pref * (2.0i * angle + log_term);
}

}  // namespace

std::complex<double> s_toulouse(double w) {
    if (!(w > 0.0)) throw ValidationError("s_toulouse: w must be positive");
    return 1.0 + s_minus_one(w);
}

double inelastic_probability(double w) {
    if (!(w > 0.0)) throw ValidationError("inelastic_probability: w must be positive");
    if (w < 8.0) {
        const auto d = s_minus_one(w);
        return -d.real() - 0.5 * std::norm(d);
    }
    // (1 - |s|^2)/2 in powers of x = 1/w; the direct form cancels to nothing here.
    static constexpr double c[] = {1.0 / 90.0,          -1.0 / 63.0,           53.0 / 3150.0,
                                   -1691.0 / 103950.0,  576551.0 / 37837800.0, -133691.0 / 9459450.0,
                                   12631183.0 / 964863900.0, -55685107.0 / 4583103525.0};
    const double x2 = 1.0 / (w * w);
    double acc = 0.0;
    for (int i = 7; i >= 0; --i) acc = acc * x2 + c[i];
    return acc * x2 * x2 * x2;
}

double elastic_probability(std::complex<double> s) { return 0.5 * (1.0 + std::norm(s)); }

std::vector<double> unwrap_phase(std::span<const double> phase) {
    std::vector<double> out(phase.begin(), phase.end());
    double shift = 0.0;
    for (std::size_t i = 1; i < out.size(); ++i) {
        const double jump = phase[i] - phase[i - 1];
        if (jump > std::numbers::pi) shift -= 2.0 * std::numbers::pi;
        else if (jump < -std::numbers::pi) shift += 2.0 * std::numbers::pi;
        out[i] = phase[i] + shift;
    }
    return out;
}

ToulouseComparison compare_with_polaron_rwa(double delta, double omega_c, std::span<const double> scan,
                                            GapModel gap) {
    ModelParams params;
    params.delta = delta;
    params.alpha = 0.5;
    params.omega_c = omega_c;
    params.dispersion = Dispersion::LinearExponential;
    params.validate();

    ToulouseComparison out;
    if (gap == GapModel::Asymptotic) {
        out.delta_tilde = asymptotic_gap(params);
    } else {
        params.spacing = GridSpacing::Logarithmic;
        params.num_modes = 2048;
        const auto grid = build_grid(params);
        out.delta_tilde = solve_self_consistent(params, grid).delta_tilde;
    }

    std::vector<double> ar, at, ar_rwa, at_rwa;
    out.points.reserve(scan.size());
    for (const double omega : scan) {
        if (!(omega > 0.0) || !(omega < omega_c))
            throw ValidationError("compare_with_polaron_rwa: scan must lie in (0, omega_c)");
        ToulousePoint p;
        p.omega = omega;
        p.s_exact = s_toulouse(w_param({delta, omega_c, omega}));
        const auto exact = reflection_transmission(p.s_exact);
        p.R_exact = exact.reflectivity;
        p.T_exact = exact.transmissivity;
        p.P1_exact = elastic_probability(p.s_exact);

        p.s_rwa = phase_shift(omega, out.delta_tilde, sigma_ohmic_closed(omega, out.delta_tilde, 0.5), {});
        const auto rwa = reflection_transmission(p.s_rwa);
        p.R_rwa = rwa.reflectivity;
        p.T_rwa = rwa.transmissivity;

        ar.push_back(std::arg(exact.r));
        at.push_back(std::arg(exact.t));
        ar_rwa.push_back(std::arg(rwa.r));
        at_rwa.push_back(std::arg(rwa.t));
        out.points.push_back(p);
    }
    ar = unwrap_phase(ar);
    at = unwrap_phase(at);
    ar_rwa = unwrap_phase(ar_rwa);
    at_rwa = unwrap_phase(at_rwa);
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        out.points[i].arg_r_exact = ar[i];
        out.points[i].arg_t_exact = at[i];
        out.points[i].arg_r_rwa = ar_rwa[i];
        out.points[i].arg_t_rwa = at_rwa[i];
    }
    return out;
}

}  // namespace usc
