#pragma once

// Periodic solutions of the linear problem  y'' + c y' + b(t) y = f(t)  on [0, T].

#include "perioscope/ivp.hpp"
#include "perioscope/simd/kernels.hpp"

#include <functional>

namespace perioscope::linper {

/// Scaled determinant below which a periodic solve is declared resonant or singular.
inline constexpr double kSingularThreshold = 1e-10;

struct LinearPeriodicProblem {
    std::function<double(double)> coeff;   // b(t)
    double damping = 0.0;                  // c
    std::function<double(double)> forcing; // f(t)
    double period = 1.0;                   // T
    std::size_t steps = 2048;              // N, rounded up to even
};

struct PeriodicSolveResult {
    ivp::DenseTrajectory y; // components: y, y'
    double periodicity_residual = 0.0;
    double scaled_determinant = 0.0;
};

struct ZeroAverageResult {
    double mu = 0.0;
    ivp::DenseTrajectory y; // components: y, y'
    double periodicity_residual = 0.0;
    double mean_residual = 0.0;
    double scaled_determinant = 0.0;
};

/// The unique T-periodic y with L[y] = f. Throws ResonanceError when the homogeneous
/// problem has a periodic solution.
[[nodiscard]] PeriodicSolveResult solve_periodic(const LinearPeriodicProblem& prob,
                                                 simd::Isa isa = simd::best_isa());

/// The constant mu and the T-periodic, zero-average y with L[y] = mu + f, from one
/// 3x3 system in (c1, c2, mu). Throws SingularSystemError.
[[nodiscard]] ZeroAverageResult solve_zero_average(const LinearPeriodicProblem& prob,
                                                   simd::Isa isa = simd::best_isa());

/// Same problem through y = L^{-1}[f] + mu L^{-1}[1]. Only valid when L is nonresonant;
/// kept as a cross-check of solve_zero_average.
[[nodiscard]] ZeroAverageResult solve_zero_average_two_stage(const LinearPeriodicProblem& prob,
                                                             simd::Isa isa = simd::best_isa());

} // namespace perioscope::linper
