#pragma once

#include <complex>
#include <span>
#include <vector>

namespace usc {

/// Exact elastic scattering at alpha = 1/2 (linear dispersion, c = 1 so omega = k).
struct ToulouseInput {
    double delta = 1.0;
    double omega_c = 1e8;
    double k = 1.0;
};

/// w = pi Delta^2 / (4 omega_c k). Rejects k <= 0.
double w_param(const ToulouseInput& input);

/// Elastic chiral amplitude
///   s = 1 + 2iw/(1 + 2iw) [2i(arccot 2w + arctan(w/(1 + 2w^2))) + ln(w^2/(1 + w^2))]
/// with arccot x = arctan(1/x). |s| <= 1; the deficit is inelastic output.
std::complex<double> s_toulouse(double w);

/// P1 = R + T = (1 + |s|^2) / 2.
double elastic_probability(std::complex<double> s);

/// 1 - P1 = (1 - |s(w)|^2) / 2 without cancellation. Falls as 1/(90 w^6) at
/// large w, far below the resolution of P1 itself.
double inelastic_probability(double w);

enum class GapModel {
    Asymptotic,      // Delta (e Delta / omega_c)^(alpha/(1-alpha)) = e Delta^2 / omega_c at alpha = 1/2
    SelfConsistent,  // Silbey-Harris fixed point on a logarithmic grid
};

struct ToulousePoint {
    double omega = 0.0;
    std::complex<double> s_exact;
    std::complex<double> s_rwa;
    double R_exact = 0.0, T_exact = 0.0;
    double arg_r_exact = 0.0, arg_t_exact = 0.0;  // unwrapped along the scan
    double R_rwa = 0.0, T_rwa = 0.0;
    double arg_r_rwa = 0.0, arg_t_rwa = 0.0;
    double P1_exact = 1.0;
};

struct ToulouseComparison {
    double delta_tilde = 0.0;  // gap used for the polaron-RWA curve
    std::vector<ToulousePoint> points;
};

/// Exact and polaron-RWA (closed Ohmic self-energy at alpha = 1/2) amplitudes
/// on the same frequency scan. Scan frequencies must lie in (0, omega_c).
ToulouseComparison compare_with_polaron_rwa(double delta, double omega_c, std::span<const double> scan,
                                            GapModel gap = GapModel::Asymptotic);

/// Removes 2 pi jumps between consecutive samples.
std::vector<double> unwrap_phase(std::span<const double> phase);

}  // namespace usc
