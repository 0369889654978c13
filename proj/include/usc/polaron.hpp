#pragma once

#include <span>
#include <string>
#include <vector>

#include "usc/model.hpp"

namespace usc {

/// Silbey-Harris fixed point: renormalized gap and the mode displacements.
struct PolaronSolution {
    double delta_tilde = 0.0;
    std::vector<double> f;
    std::vector<double> g_eff;  // Delta~ * f_k
    int iterations = 0;
    double residual = 0.0;      // |x_{n+1} - x_n| / x_n at exit
    bool used_bisection = false;
    std::vector<std::string> warnings;
};

struct SolverOptions {
    double tol = 1e-10;
    int max_iter = 10000;
    /// x <- (1 - damping) x + damping F(x); values above 1 over-relax.
    double damping = 0.5;
};

/// Couplings above this are outside the range where the single-excitation
/// polaron picture has been validated; solving still proceeds.
inline constexpr double kValidatedAlpha = 0.3;

/// Delta exp(-2 <f^2>) with <h> = (1/pi) int_0^inf h(k) dk on the grid.
double renormalized_gap(std::span<const double> f, const ModeGrid& grid, const ModelParams& params);

/// f_k = g_k / (omega_k + Delta~). Rejects delta_tilde <= 0.
std::vector<double> silbey_harris_displacement(double delta_tilde, const ModeGrid& grid);

/// The map x -> Delta exp(-2 <(g/(omega + x))^2>) whose fixed point is Delta~.
double gap_map(double x, const ModeGrid& grid, const ModelParams& params);

PolaronSolution solve_self_consistent(const ModelParams& params, const ModeGrid& grid,
                                      const SolverOptions& options = {});

/// Large-cutoff estimate Delta (e Delta / omega_c)^(alpha / (1 - alpha)).
double asymptotic_gap(const ModelParams& params);

}  // namespace usc
