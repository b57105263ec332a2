#include "kernels_impl.hpp"

#include <immintrin.h>

namespace perioscope::simd::detail {

void integrate_linear_batch_avx2(const LinearBatchInput& in, LinearBatchOutput& out)
{
    const std::size_t n = in.steps;
    const double h_s = in.period / static_cast<double>(n);
    const __m256d c = _mm256_set1_pd(in.damping);
    const __m256d h = _mm256_set1_pd(h_s);
    const __m256d hh = _mm256_set1_pd(0.5 * h_s);
    const __m256d h6 = _mm256_set1_pd(h_s / 6.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d scale = _mm256_loadu_pd(in.forcing_scale.data());
    const __m256d offset = _mm256_loadu_pd(in.forcing_offset.data());
    const double* b = in.coeff.data();
    const double* f = in.forcing.data();

    // ((scale*f + offset) - c*v) - b*y, matching the scalar evaluation order
    auto accel = [&](std::size_t k, __m256d y, __m256d v) {
        const __m256d load = _mm256_add_pd(_mm256_mul_pd(scale, _mm256_set1_pd(f[k])), offset);
        const __m256d damped = _mm256_sub_pd(load, _mm256_mul_pd(c, v));
        return _mm256_sub_pd(damped, _mm256_mul_pd(_mm256_set1_pd(b[k]), y));
    };
    // ((k1 + 2*k2) + 2*k3) + k4
    auto rk_sum = [&](__m256d k1, __m256d k2, __m256d k3, __m256d k4) {
        __m256d s = _mm256_add_pd(k1, _mm256_mul_pd(two, k2));
        s = _mm256_add_pd(s, _mm256_mul_pd(two, k3));
        return _mm256_add_pd(s, k4);
    };

    double* value = out.value.data();
    double* slope = out.slope.data();
    double* acc = out.accel.data();

    __m256d y = _mm256_loadu_pd(in.value0.data());
    __m256d v = _mm256_loadu_pd(in.slope0.data());
    __m256d a = accel(0, y, v);
    _mm256_storeu_pd(value, y);
    _mm256_storeu_pd(slope, v);
    _mm256_storeu_pd(acc, a);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t mid = 2 * i + 1;
        const std::size_t end = 2 * i + 2;
        const __m256d k1y = v;
        const __m256d k1v = a;

        const __m256d y2 = _mm256_add_pd(y, _mm256_mul_pd(hh, k1y));
        const __m256d v2 = _mm256_add_pd(v, _mm256_mul_pd(hh, k1v));
        const __m256d k2y = v2;
        const __m256d k2v = accel(mid, y2, v2);

        const __m256d y3 = _mm256_add_pd(y, _mm256_mul_pd(hh, k2y));
        const __m256d v3 = _mm256_add_pd(v, _mm256_mul_pd(hh, k2v));
        const __m256d k3y = v3;
        const __m256d k3v = accel(mid, y3, v3);

        const __m256d y4 = _mm256_add_pd(y, _mm256_mul_pd(h, k3y));
        const __m256d v4 = _mm256_add_pd(v, _mm256_mul_pd(h, k3v));
        const __m256d k4y = v4;
        const __m256d k4v = accel(end, y4, v4);

        y = _mm256_add_pd(y, _mm256_mul_pd(h6, rk_sum(k1y, k2y, k3y, k4y)));
        v = _mm256_add_pd(v, _mm256_mul_pd(h6, rk_sum(k1v, k2v, k3v, k4v)));
        a = accel(end, y, v);
        _mm256_storeu_pd(value + (i + 1) * kLanes, y);
        _mm256_storeu_pd(slope + (i + 1) * kLanes, v);
        _mm256_storeu_pd(acc + (i + 1) * kLanes, a);
    }
}

void combine_lanes_avx2(std::span<const double> x, const std::array<double, kLanes>& w,
                        std::span<double> out)
{
    const __m256d w0 = _mm256_set1_pd(w[0]);
    const __m256d w1 = _mm256_set1_pd(w[1]);
    const __m256d w2 = _mm256_set1_pd(w[2]);
    const __m256d w3 = _mm256_set1_pd(w[3]);
    const std::size_t count = out.size();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const double* p = x.data() + i * kLanes;
        const __m256d r0 = _mm256_loadu_pd(p);
        const __m256d r1 = _mm256_loadu_pd(p + 4);
        const __m256d r2 = _mm256_loadu_pd(p + 8);
        const __m256d r3 = _mm256_loadu_pd(p + 12);
        // 4x4 transpose: column l holds lane l of points i..i+3
        const __m256d t0 = _mm256_unpacklo_pd(r0, r1);
        const __m256d t1 = _mm256_unpackhi_pd(r0, r1);
        const __m256d t2 = _mm256_unpacklo_pd(r2, r3);
        const __m256d t3 = _mm256_unpackhi_pd(r2, r3);
        const __m256d c0 = _mm256_permute2f128_pd(t0, t2, 0x20);
        const __m256d c1 = _mm256_permute2f128_pd(t1, t3, 0x20);
        const __m256d c2 = _mm256_permute2f128_pd(t0, t2, 0x31);
        const __m256d c3 = _mm256_permute2f128_pd(t1, t3, 0x31);
        __m256d s = _mm256_add_pd(_mm256_mul_pd(w0, c0), _mm256_mul_pd(w1, c1));
        s = _mm256_add_pd(s, _mm256_mul_pd(w2, c2));
        s = _mm256_add_pd(s, _mm256_mul_pd(w3, c3));
        _mm256_storeu_pd(out.data() + i, s);
    }
    if (i < count) {
        combine_lanes_scalar(x.subspan(i * kLanes), w, out.subspan(i));
    }
}

std::array<double, kLanes> simpson_lane_means_avx2(std::span<const double> x)
{
    const std::size_t n = x.size() / kLanes - 1;
    __m256d odd = _mm256_setzero_pd();
    __m256d even = _mm256_setzero_pd();
    for (std::size_t i = 1; i < n; i += 2) {
        odd = _mm256_add_pd(odd, _mm256_loadu_pd(x.data() + i * kLanes));
    }
    for (std::size_t i = 2; i < n; i += 2) {
        even = _mm256_add_pd(even, _mm256_loadu_pd(x.data() + i * kLanes));
    }
    __m256d sum = _mm256_add_pd(_mm256_loadu_pd(x.data()), _mm256_loadu_pd(x.data() + n * kLanes));
    sum = _mm256_add_pd(sum, _mm256_mul_pd(_mm256_set1_pd(4.0), odd));
    sum = _mm256_add_pd(sum, _mm256_mul_pd(_mm256_set1_pd(2.0), even));
    sum = _mm256_div_pd(sum, _mm256_set1_pd(3.0 * static_cast<double>(n)));
    std::array<double, kLanes> result{};
    _mm256_storeu_pd(result.data(), sum);
    return result;
}

} // namespace perioscope::simd::detail
