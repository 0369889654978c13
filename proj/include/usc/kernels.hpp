#pragma once

// Grid reductions behind the polaron and self-energy modules. Every kernel
// has a scalar reference implementation and, on x86-64, an AVX2/FMA variant
// picked at runtime from CPUID. Both variants agree to rounding; the
// kernel tests check this.

#include <cstddef>
#include <span>
#include <string_view>

namespace usc::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b);
bool backend_available(Backend b);
Backend active_backend();
/// Forces a backend (tests, benchmarking). Throws if it is unavailable here.
void set_backend(Backend b);

/// f_i = g_i / (omega_i + x)
void displacements(std::span<const double> g, std::span<const double> omega, double x,
                   std::span<double> f);

/// sum_i w_i (g_i / (omega_i + x))^2
double weighted_square_sum(std::span<const double> w, std::span<const double> g,
                           std::span<const double> omega, double x);

/// Principal-value sum with the pole subtracted:
///   sum_i w_i [ h_i / (omega0 - omega_i) - c0 / (k0 - k_i) ]
/// Nodes with |k_i - k0| <= eps are left out and reported in `skipped`
/// (at most one; a later hit overwrites an earlier one) so the caller can
/// insert the removable-singularity limit.
struct PvSum {
    double sum = 0.0;
    std::ptrdiff_t skipped = -1;
};
PvSum pv_subtracted_sum(std::span<const double> w, std::span<const double> k,
                        std::span<const double> omega, std::span<const double> h,
                        double omega0, double k0, double c0, double eps);

// Direct entry points, exposed for the equivalence tests.
namespace scalar {
void displacements(std::span<const double> g, std::span<const double> omega, double x,
                   std::span<double> f);
double weighted_square_sum(std::span<const double> w, std::span<const double> g,
                           std::span<const double> omega, double x);
PvSum pv_subtracted_sum(std::span<const double> w, std::span<const double> k,
                        std::span<const double> omega, std::span<const double> h,
                        double omega0, double k0, double c0, double eps);
}  // namespace scalar

namespace avx2 {
void displacements(std::span<const double> g, std::span<const double> omega, double x,
                   std::span<double> f);
double weighted_square_sum(std::span<const double> w, std::span<const double> g,
                           std::span<const double> omega, double x);
PvSum pv_subtracted_sum(std::span<const double> w, std::span<const double> k,
                        std::span<const double> omega, std::span<const double> h,
                        double omega0, double k0, double c0, double eps);
}  // namespace avx2

}  // namespace usc::kernels
