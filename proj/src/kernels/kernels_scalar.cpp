#include <cmath>

#include "usc/kernels.hpp"

namespace usc::kernels::scalar {

void displacements(std::span<const double> g, std::span<const double> omega, double x,
                   std::span<double> f) {
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = g[i] / (omega[i] + x);
}

double weighted_square_sum(std::span<const double> w, std::span<const double> g,
                           std::span<const double> omega, double x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double f = g[i] / (omega[i] + x);
        acc += w[i] * f * f;
    }
    return acc;
}

PvSum pv_subtracted_sum(std::span<const double> w, std::span<const double> k,
                        std::span<const double> omega, std::span<const double> h,
                        double omega0, double k0, double c0, double eps) {
    PvSum out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = k0 - k[i];
        if (std::abs(d) <= eps) {
            out.skipped = static_cast<std::ptrdiff_t>(i);
            continue;
        }
        out.sum += w[i] * (h[i] / (omega0 - omega[i]) - c0 / d);
    }
    return out;
}

}  // namespace usc::kernels::scalar
