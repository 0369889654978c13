#include <atomic>
#include <stdexcept>

#include "usc/kernels.hpp"

namespace usc::kernels {
namespace {

bool cpu_has_avx2_fma() {
#if defined(USC_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect() { return cpu_has_avx2_fma() ? Backend::Avx2 : Backend::Scalar; }

std::atomic<Backend>& current() {
    static std::atomic<Backend> backend{detect()};
    return backend;
}

}  // namespace

#if !defined(USC_HAVE_AVX2_KERNELS)
// Without the AVX2 translation unit the avx2 entry points forward to the
// scalar reference so the symbols always exist.
namespace avx2 {
void displacements(std::span<const double> g, std::span<const double> omega, double x,
                   std::span<double> f) {
    scalar::displacements(g, omega, x, f);
}
double weighted_square_sum(std::span<const double> w, std::span<const double> g,
                           std::span<const double> omega, double x) {
    return scalar::weighted_square_sum(w, g, omega, x);
}
PvSum pv_subtracted_sum(std::span<const double> w, std::span<const double> k,
                        std::span<const double> omega, std::span<const double> h,
                        double omega0, double k0, double c0, double eps) {
    return scalar::pv_subtracted_sum(w, k, omega, h, omega0, k0, c0, eps);
}
}  // namespace avx2
#endif

std::string_view backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) { return b == Backend::Scalar || cpu_has_avx2_fma(); }

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (!backend_available(b)) throw std::runtime_error("kernel backend not available on this CPU/build");
    current().store(b, std::memory_order_relaxed);
}

void displacements(std::span<const double> g, std::span<const double> omega, double x,
                   std::span<double> f) {
    if (active_backend() == Backend::Avx2) return avx2::displacements(g, omega, x, f);
    scalar::displacements(g, omega, x, f);
}

double weighted_square_sum(std::span<const double> w, std::span<const double> g,
                           std::span<const double> omega, double x) {
    if (active_backend() == Backend::Avx2) return avx2::weighted_square_sum(w, g, omega, x);
    return scalar::weighted_square_sum(w, g, omega, x);
}

PvSum pv_subtracted_sum(std::span<const double> w, std::span<const double> k,
                        std::span<const double> omega, std::span<const double> h,
                        double omega0, double k0, double c0, double eps) {
    if (active_backend() == Backend::Avx2) return avx2::pv_subtracted_sum(w, k, omega, h, omega0, k0, c0, eps);
    return scalar::pv_subtracted_sum(w, k, omega, h, omega0, k0, c0, eps);
}

}  // namespace usc::kernels
