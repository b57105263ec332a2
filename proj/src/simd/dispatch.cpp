#include "kernels_impl.hpp"

#include <stdexcept>

namespace perioscope::simd {

namespace {

void check_batch(const LinearBatchInput& in)
{
    if (in.steps < 2 || in.steps % 2 != 0) {
        throw std::invalid_argument("linear batch needs an even step count");
    }
    if (in.coeff.size() != 2 * in.steps + 1 || in.forcing.size() != 2 * in.steps + 1) {
        throw std::invalid_argument("linear batch tables must hold 2N+1 half-step samples");
    }
}

} // namespace

const char* isa_name(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(PERIOSCOPE_HAVE_AVX2)
        return __builtin_cpu_supports("avx2") != 0;
#else
        return false;
#endif
    }
    return false;
}

Isa best_isa() noexcept
{
    static const Isa probed = isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    return probed;
}

void integrate_linear_batch(const LinearBatchInput& in, LinearBatchOutput& out, Isa isa)
{
    check_batch(in);
    const std::size_t size = (in.steps + 1) * kLanes;
    out.value.resize(size);
    out.slope.resize(size);
    out.accel.resize(size);
#if defined(PERIOSCOPE_HAVE_AVX2)
    if (isa == Isa::avx2 && isa_available(Isa::avx2)) {
        detail::integrate_linear_batch_avx2(in, out);
        return;
    }
#endif
    (void)isa;
    detail::integrate_linear_batch_scalar(in, out);
}

void combine_lanes(std::span<const double> interleaved, const std::array<double, kLanes>& weights,
                   std::span<double> out, Isa isa)
{
    if (interleaved.size() != out.size() * kLanes) {
        throw std::invalid_argument("combine_lanes: size mismatch");
    }
#if defined(PERIOSCOPE_HAVE_AVX2)
    if (isa == Isa::avx2 && isa_available(Isa::avx2)) {
        detail::combine_lanes_avx2(interleaved, weights, out);
        return;
    }
#endif
    (void)isa;
    detail::combine_lanes_scalar(interleaved, weights, out);
}

std::array<double, kLanes> simpson_lane_means(std::span<const double> interleaved, Isa isa)
{
    const std::size_t points = interleaved.size() / kLanes;
    if (interleaved.size() % kLanes != 0 || points < 3 || (points - 1) % 2 != 0) {
        throw std::invalid_argument("simpson_lane_means needs an even number of intervals");
    }
#if defined(PERIOSCOPE_HAVE_AVX2)
    if (isa == Isa::avx2 && isa_available(Isa::avx2)) {
        return detail::simpson_lane_means_avx2(interleaved);
    }
#endif
    (void)isa;
    return detail::simpson_lane_means_scalar(interleaved);
}

} // namespace perioscope::simd
