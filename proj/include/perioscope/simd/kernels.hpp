#pragma once

// Four-lane batched kernels behind the linear periodic solver.
//
// Every kernel has a scalar reference and (on x86-64) an AVX2 variant. Lanes never
// interact and each lane performs the same operations in the same order in both
// variants, and the build disables FP contraction, so the variants agree bit for bit.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace perioscope::simd {

inline constexpr std::size_t kLanes = 4;

enum class Isa { scalar, avx2 };

[[nodiscard]] const char* isa_name(Isa isa) noexcept;

/// True when the variant was compiled in and the running CPU supports it.
[[nodiscard]] bool isa_available(Isa isa) noexcept;

/// Widest available variant, probed once per process.
[[nodiscard]] Isa best_isa() noexcept;

/// Four solutions of y'' + c y' + b(t) y = scale[l] * f(t) + offset[l] advanced together
/// by classical RK4. b and f are tabulated on the half-step grid t_k = k*h/2, k = 0..2N,
/// which is exactly where RK4 evaluates them.
struct LinearBatchInput {
    double damping = 0.0;
    double period = 1.0;
    std::size_t steps = 0;
    std::span<const double> coeff;
    std::span<const double> forcing;
    std::array<double, kLanes> forcing_scale{};
    std::array<double, kLanes> forcing_offset{};
    std::array<double, kLanes> value0{};
    std::array<double, kLanes> slope0{};
};

/// Lane-interleaved results: element [i * kLanes + l] is lane l at grid time t_i.
struct LinearBatchOutput {
    std::vector<double> value;
    std::vector<double> slope;
    std::vector<double> accel;
};

void integrate_linear_batch(const LinearBatchInput& in, LinearBatchOutput& out, Isa isa);

/// out[i] = ((w0*x[i,0] + w1*x[i,1]) + w2*x[i,2]) + w3*x[i,3] for lane-interleaved x.
void combine_lanes(std::span<const double> interleaved, const std::array<double, kLanes>& weights,
                   std::span<double> out, Isa isa);

/// Per-lane composite Simpson mean, identical in rounding to ivp::simpson_mean.
[[nodiscard]] std::array<double, kLanes> simpson_lane_means(std::span<const double> interleaved,
                                                            Isa isa);

} // namespace perioscope::simd
