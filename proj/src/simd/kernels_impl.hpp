#pragma once

#include "perioscope/simd/kernels.hpp"

namespace perioscope::simd::detail {

void integrate_linear_batch_scalar(const LinearBatchInput& in, LinearBatchOutput& out);
void combine_lanes_scalar(std::span<const double> x, const std::array<double, kLanes>& w,
                          std::span<double> out);
std::array<double, kLanes> simpson_lane_means_scalar(std::span<const double> x);

#if defined(PERIOSCOPE_HAVE_AVX2)
void integrate_linear_batch_avx2(const LinearBatchInput& in, LinearBatchOutput& out);
void combine_lanes_avx2(std::span<const double> x, const std::array<double, kLanes>& w,
                        std::span<double> out);
std::array<double, kLanes> simpson_lane_means_avx2(std::span<const double> x);
#endif

} // namespace perioscope::simd::detail
