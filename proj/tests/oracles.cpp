#include "oracles.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace oracle {

double bisect_gap(const usc::ModeGrid& grid, double delta) {
    auto residual = [&](double x) {
        long double acc = 0.0L;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const long double f = grid.couplings[i] / (static_cast<long double>(grid.frequencies[i]) + x);
            acc += grid.weight[i] * f * f;
        }
        return static_cast<long double>(x) - delta * std::exp(-2.0L * acc / std::numbers::pi_v<long double>);
    };
    double lo = 0.0, hi = delta;
    for (int it = 0; it < 2000; ++it) {
        const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
        if (mid <= lo || mid >= hi) break;
        if (residual(mid) < 0.0L) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {
constexpr std::array<double, 4> kGlX = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                        0.9602898564975363};
constexpr std::array<double, 4> kGlW = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                        0.1012285362903763};

double gl_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t j = 0; j < kGlX.size(); ++j) acc += kGlW[j] * (f(mid - half * kGlX[j]) + f(mid + half * kGlX[j]));
    return half * acc;
}
}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels, bool graded) {
    if (b <= a) return 0.0;
    double acc = 0.0;
    if (!graded) {
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) acc += gl_panel(f, a + p * h, a + (p + 1) * h);
        return acc;
    }
    // Breakpoints a + (b - a) * (r^p - 1)/(r^panels - 1): fine near a.
    const double r = std::pow(1e6, 1.0 / panels);
    const double denom = std::pow(r, panels) - 1.0;
    double prev = a;
    for (int p = 1; p <= panels; ++p) {
        const double next = p == panels ? b : a + (b - a) * (std::pow(r, p) - 1.0) / denom;
        acc += gl_panel(f, prev, next);
        prev = next;
    }
    return acc;
}

double principal_value(const std::function<double(double)>& num, const std::function<double(double)>& disp,
                       double a, double b, double k0, double omega0, int panels) {
    const double d = std::min(k0 - a, b - k0);
    auto term = [&](double k) { return num(k) / (omega0 - disp(k)); };
    auto folded = [&](double u) { return term(k0 + u) + term(k0 - u); };
    double acc = gauss_legendre(folded, 0.0, d, panels);
    if (k0 - d > a) acc += gauss_legendre([&](double u) { return term(k0 - d - u); }, 0.0, k0 - d - a, panels, true);
    if (k0 + d < b) acc += gauss_legendre([&](double u) { return term(k0 + d + u); }, 0.0, b - k0 - d, panels, true);
    return acc;
}

std::vector<std::complex<double>> rk4_evolve(const usc::PolaronSolution& sol, const usc::ModeGrid& grid,
                                             const std::vector<std::complex<double>>& psi0, double t, double dt,
                                             bool include_v_local) {
    using cd = std::complex<double>;
    const std::size_t m = grid.size();
    const double D = sol.delta_tilde;
    std::vector<double> u(m), diag(m);
    for (std::size_t i = 0; i < m; ++i) {
        u[i] = sol.f[i] * std::sqrt(grid.weight[i] / (2.0 * std::numbers::pi));
        diag[i] = grid.frequencies[i] - 0.5 * D;
    }
    const double gfac = 2.0 * std::sqrt(2.0) * D;
    const double vfac = include_v_local ? 4.0 * D : 0.0;

    // returns -i H psi
    auto rhs = [&](const std::vector<cd>& psi, std::vector<cd>& out) {
        cd proj = 0.0;
        for (std::size_t i = 0; i < m; ++i) proj += u[i] * psi[i + 1];
        out[0] = cd(0, -1) * (0.5 * D * psi[0] + gfac * proj);
        for (std::size_t i = 0; i < m; ++i)
            out[i + 1] = cd(0, -1) * (diag[i] * psi[i + 1] + gfac * u[i] * psi[0] + vfac * u[i] * proj);
    };

    std::vector<cd> psi = psi0, k1(m + 1), k2(m + 1), k3(m + 1), k4(m + 1), tmp(m + 1);
    const int steps = static_cast<int>(std::ceil(t / dt));
    const double h = t / steps;
    for (int s = 0; s < steps; ++s) {
        rhs(psi, k1);
        for (std::size_t i = 0; i <= m; ++i) tmp[i] = psi[i] + 0.5 * h * k1[i];
        rhs(tmp, k2);
        for (std::size_t i = 0; i <= m; ++i) tmp[i] = psi[i] + 0.5 * h * k2[i];
        rhs(tmp, k3);
        for (std::size_t i = 0; i <= m; ++i) tmp[i] = psi[i] + h * k3[i];
        rhs(tmp, k4);
        for (std::size_t i = 0; i <= m; ++i) psi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return psi;
}

}  // namespace oracle
