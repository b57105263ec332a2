#include "kernels_impl.hpp"

namespace perioscope::simd::detail {

void integrate_linear_batch_scalar(const LinearBatchInput& in, LinearBatchOutput& out)
{
    const std::size_t n = in.steps;
    const double c = in.damping;
    const double h = in.period / static_cast<double>(n);
    const double hh = 0.5 * h;
    const double h6 = h / 6.0;
    const double* b = in.coeff.data();
    const double* f = in.forcing.data();

    auto accel = [&](std::size_t l, std::size_t k, double y, double v) {
        return in.forcing_scale[l] * f[k] + in.forcing_offset[l] - c * v - b[k] * y;
    };

    double* value = out.value.data();
    double* slope = out.slope.data();
    double* acc = out.accel.data();
    for (std::size_t l = 0; l < kLanes; ++l) {
        value[l] = in.value0[l];
        slope[l] = in.slope0[l];
        acc[l] = accel(l, 0, in.value0[l], in.slope0[l]);
    }

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t mid = 2 * i + 1;
        const std::size_t end = 2 * i + 2;
        for (std::size_t l = 0; l < kLanes; ++l) {
            const double y = value[i * kLanes + l];
            const double v = slope[i * kLanes + l];
            const double k1y = v;
            const double k1v = acc[i * kLanes + l];

            const double y2 = y + hh * k1y;
            const double v2 = v + hh * k1v;
            const double k2y = v2;
            const double k2v = accel(l, mid, y2, v2);

            const double y3 = y + hh * k2y;
            const double v3 = v + hh * k2v;
            const double k3y = v3;
            const double k3v = accel(l, mid, y3, v3);

            const double y4 = y + h * k3y;
            const double v4 = v + h * k3v;
            const double k4y = v4;
            const double k4v = accel(l, end, y4, v4);

            const double yn = y + h6 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            const double vn = v + h6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            value[(i + 1) * kLanes + l] = yn;
            slope[(i + 1) * kLanes + l] = vn;
            acc[(i + 1) * kLanes + l] = accel(l, end, yn, vn);
        }
    }
}

void combine_lanes_scalar(std::span<const double> x, const std::array<double, kLanes>& w,
                          std::span<double> out)
{
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double* row = x.data() + i * kLanes;
        out[i] = w[0] * row[0] + w[1] * row[1] + w[2] * row[2] + w[3] * row[3];
    }
}

std::array<double, kLanes> simpson_lane_means_scalar(std::span<const double> x)
{
    const std::size_t n = x.size() / kLanes - 1;
    std::array<double, kLanes> result{};
    for (std::size_t l = 0; l < kLanes; ++l) {
        double odd = 0.0;
        double even = 0.0;
        for (std::size_t i = 1; i < n; i += 2) odd += x[i * kLanes + l];
        for (std::size_t i = 2; i < n; i += 2) even += x[i * kLanes + l];
        const double sum = x[l] + x[n * kLanes + l] + 4.0 * odd + 2.0 * even;
        result[l] = sum / (3.0 * static_cast<double>(n));
    }
    return result;
}

} // namespace perioscope::simd::detail
