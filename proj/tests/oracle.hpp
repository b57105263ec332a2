#pragma once
// Independent shooting solver for u'' + c u' + g(t, u) = mu + e(t) with prescribed mean.
// Its own integrator, its own quadrature (the mean is carried as a third state), and a
// finite-difference Newton on (u(0), u'(0), mu). Shares nothing with the library.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace perioscope::testing {

struct ShootingProblem {
    std::function<double(double, double)> g; // g(t, u)
    std::function<double(double)> e;
    double c = 0.0;
    double period = 1.0;
};

struct ShootingSolution {
    double u0 = 0.0;
    double du0 = 0.0;
    double mu = 0.0;
    double residual = 0.0;
};

inline std::array<double, 3> shooting_defect(const ShootingProblem& p, double xi,
                                             const std::array<double, 3>& x, int steps)
{
    const double h = p.period / steps;
    const double mu = x[2];
    auto f = [&](double t, const std::array<double, 3>& y) {
        return std::array<double, 3>{y[1], mu + p.e(t) - p.c * y[1] - p.g(t, y[0]), y[0]};
    };
    std::array<double, 3> y{x[0], x[1], 0.0};
    for (int i = 0; i < steps; ++i) {
        const double t = i * h;
        auto add = [](const std::array<double, 3>& a, const std::array<double, 3>& b, double s) {
            return std::array<double, 3>{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
        };
        const auto k1 = f(t, y);
        const auto k2 = f(t + h / 2, add(y, k1, h / 2));
        const auto k3 = f(t + h / 2, add(y, k2, h / 2));
        const auto k4 = f(t + h, add(y, k3, h));
        for (int j = 0; j < 3; ++j) {
            y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        }
    }
    return {y[0] - x[0], y[1] - x[1], y[2] / p.period - xi};
}

inline ShootingSolution shoot(const ShootingProblem& p, double xi, std::array<double, 3> x,
                              int steps = 6000)
{
    auto norm = [](const std::array<double, 3>& v) {
        return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    };
    auto F = shooting_defect(p, xi, x, steps);
    for (int it = 0; it < 60 && norm(F) > 1e-13; ++it) {
        double J[3][3];
        for (int k = 0; k < 3; ++k) {
            auto xp = x;
            const double d = 1e-7 * std::max(1.0, std::abs(x[k]));
            xp[k] += d;
            const auto Fp = shooting_defect(p, xi, xp, steps);
            for (int r = 0; r < 3; ++r) {
                J[r][k] = (Fp[r] - F[r]) / d;
            }
        }
        // Cramer's rule
        auto det3 = [](double m[3][3]) {
            return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        };
        const double D = det3(J);
        std::array<double, 3> dx{};
        for (int k = 0; k < 3; ++k) {
            double M[3][3];
            for (int r = 0; r < 3; ++r) {
                for (int q = 0; q < 3; ++q) {
                    M[r][q] = q == k ? -F[r] : J[r][q];
                }
            }
            dx[k] = det3(M) / D;
        }
        double lambda = 1.0;
        for (;;) {
            std::array<double, 3> trial{x[0] + lambda * dx[0], x[1] + lambda * dx[1],
                                        x[2] + lambda * dx[2]};
            try {
                const auto Ft = shooting_defect(p, xi, trial, steps);
                if (std::isfinite(norm(Ft)) && norm(Ft) < norm(F)) {
                    x = trial;
                    F = Ft;
                    break;
                }
            } catch (const std::exception&) {
            }
            lambda *= 0.5;
            if (lambda < 1e-6) {
                if (norm(F) < 1e-10) {
                    return {x[0], x[1], x[2], norm(F)}; // at roundoff level
                }
                throw std::runtime_error("shooting oracle stalled");
            }
        }
    }
    return {x[0], x[1], x[2], norm(F)};
}

} // namespace perioscope::testing
