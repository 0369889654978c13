#include "usc/polaron.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "usc/error.hpp"
#include "usc/kernels.hpp"

namespace usc {
namespace {

// Continuum measure of the symmetric-mode sum: (1/L) sum_k -> (1/pi) int_0^inf dk.
constexpr double kMeasure = 1.0 / std::numbers::pi;

double bisect_gap(const ModeGrid& grid, const ModelParams& params, double rel_tol, int& evaluations) {
    double lo = 1e-12 * params.delta;
    double hi = params.delta;
    auto residual = [&](double x) {
        ++evaluations;
        return x - gap_map(x, grid, params);
    };
    if (residual(lo) >= 0.0) {
        throw ConvergenceError("polaron: no fixed point above 1e-12 delta (localized regime?)", 1.0);
    }
    // The residual is increasing in x; bisect geometrically since the root can sit
    // many decades below delta.
    while ((hi - lo) > rel_tol * lo) {
        const double mid = std::sqrt(lo * hi);
        const double m = (mid > lo && mid < hi) ? mid : 0.5 * (lo + hi);
        if (residual(m) < 0.0) lo = m;
        else hi = m;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double renormalized_gap(std::span<const double> f, const ModeGrid& grid, const ModelParams& params) {
    if (f.size() != grid.size()) throw ValidationError("renormalized_gap: displacement length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += grid.weight[i] * f[i] * f[i];
    return params.delta * std::exp(-2.0 * kMeasure * acc);
}

std::vector<double> silbey_harris_displacement(double delta_tilde, const ModeGrid& grid) {
    if (!(delta_tilde > 0.0)) throw ValidationError("silbey_harris_displacement: delta_tilde must be positive");
    std::vector<double> f(grid.size());
    kernels::displacements(grid.couplings, grid.frequencies, delta_tilde, f);
    return f;
}

double gap_map(double x, const ModeGrid& grid, const ModelParams& params) {
    const double sum = kernels::weighted_square_sum(grid.weight, grid.couplings, grid.frequencies, x);
    return params.delta * std::exp(-2.0 * kMeasure * sum);
}

PolaronSolution solve_self_consistent(const ModelParams& params, const ModeGrid& grid,
                                      const SolverOptions& options) {
    params.validate();
    if (!(options.tol > 0.0)) throw ValidationError("solve_self_consistent: tol must be positive");
    if (options.max_iter < 1) throw ValidationError("solve_self_consistent: max_iter must be >= 1");
    if (!(options.damping > 0.0 && options.damping < 2.0))
        throw ValidationError("solve_self_consistent: damping must lie in (0, 2)");

    PolaronSolution sol;
    if (params.alpha > kValidatedAlpha) {
        std::ostringstream msg;
        msg << "alpha = " << params.alpha << " is above " << kValidatedAlpha
            << "; single-excitation polaron results are qualitative only";
        sol.warnings.push_back(msg.str());
    }

    const double eta = options.damping;
    double x = params.delta;
    double prev_step = 0.0;
    double prev_delta = 0.0;
    int sign_flips = 0;
    bool converged = false;
    bool left_domain = false;

    for (int n = 1; n <= options.max_iter; ++n) {
        const double next = (1.0 - eta) * x + eta * gap_map(x, grid, params);
        if (!(next > 0.0) || !std::isfinite(next)) {
            left_domain = true;  // over-relaxed past zero
            break;
        }
        const double delta = next - x;
        const double step = std::abs(delta) / x;
        sol.iterations = n;
        sol.residual = step;
        x = next;

        if (step == 0.0) {
            converged = true;
            break;
        }
        if (prev_delta != 0.0 && (delta > 0.0) != (prev_delta > 0.0)) ++sign_flips;
        if (sign_flips >= 4) break;  // oscillating: hand over to bisection

        // Stop on the a-posteriori error estimate step * rho / (1 - rho), not
        // just the step, so the returned gap is within tol of the fixed point.
        const double rho = prev_step > 0.0 ? step / prev_step : 0.0;
        if (rho < 1.0 && step <= options.tol * (1.0 - rho)) {
            converged = true;
            break;
        }
        prev_step = step;
        prev_delta = delta;
    }

    if (!converged) {
        if (sign_flips < 4 && !left_domain) {
            throw ConvergenceError("polaron: fixed point not reached after max_iter steps (alpha too close "
                                   "to the localization transition?)",
                                   sol.residual);
        }
        int evals = 0;
        x = bisect_gap(grid, params, 1e-2 * options.tol, evals);
        sol.iterations += evals;
        sol.used_bisection = true;
        sol.residual = std::abs(gap_map(x, grid, params) - x) / x;
    }

    sol.delta_tilde = x;
    sol.f = silbey_harris_displacement(x, grid);
    sol.g_eff.resize(sol.f.size());
    for (std::size_t i = 0; i < sol.f.size(); ++i) sol.g_eff[i] = x * sol.f[i];
    return sol;
}

double asymptotic_gap(const ModelParams& params) {
    if (!(params.alpha >= 0.0) || params.alpha >= 1.0)
        throw ValidationError("asymptotic_gap: requires 0 <= alpha < 1");
    if (params.alpha == 0.0) return params.delta;
    const double exponent = params.alpha / (1.0 - params.alpha);
    return params.delta * std::pow(std::numbers::e * params.delta / params.omega_c, exponent);
}

}  // namespace usc
