#pragma once

// Test-only oracles, kept independent of the library's Gauss-Legendre
// integration path: composite Simpson rules and closed forms.

#include "pstein/control_measure.hpp"
#include "pstein/kernel.hpp"
#include "pstein/point_process.hpp"

#include <cmath>
#include <cstring>
#include <functional>
#include <vector>

namespace oracle {

inline double simpson_1d(const std::function<double(double)>& f, double a, double b,
                         int n = 4000) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; i += 2) sum += 4.0 * f(a + i * h);
    for (int i = 2; i < n; i += 2) sum += 2.0 * f(a + i * h);
    return h / 3.0 * sum;
}

inline double simpson_2d(const std::function<double(double, double)>& f, double ax, double bx,
                         double ay, double by, int n = 600) {
    return simpson_1d(
        [&](double x) {
            return simpson_1d([&](double y) { return f(x, y); }, ay, by, n);
        },
        ax, bx, n);
}

// Pathwise I_2(f) by inclusion-exclusion with Simpson marginals, for 1-d
// uniform control on [0,1] with intensity n.
inline double multiple_integral_q2_uniform(const pstein::Kernel& f,
                                           const pstein::PointConfiguration& cfg,
                                           double intensity, int n_simpson = 2000) {
    const std::size_t n = cfg.size();
    double pairs = 0.0;
    double buf[2];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            buf[0] = cfg.point(i)[0];
            buf[1] = cfg.point(j)[0];
            pairs += f.eval(buf);
        }
    }
    double marg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = cfg.point(i)[0];
        marg += intensity * simpson_1d(
                                [&](double y) {
                                    double b[2] = {z, y};
                                    return f.eval(b);
                                },
                                0.0, 1.0, n_simpson);
    }
    const double total = intensity * intensity *
                         simpson_2d(
                             [&](double x, double y) {
                                 double b[2] = {x, y};
                                 return f.eval(b);
                             },
                             0.0, 1.0, 0.0, 1.0, 400);
    return 2.0 * pairs - 2.0 * marg + total;
}

// Brute-force order-2 U-statistic derivative: D_z U = 2 sum_y h(z, y).
inline double ustat2_add_one_cost(const pstein::Kernel& h, const pstein::PointConfiguration& cfg,
                                  const double* z) {
    const int d = h.dim;
    std::vector<double> buf(2 * static_cast<std::size_t>(d));
    std::memcpy(buf.data(), z, sizeof(double) * static_cast<std::size_t>(d));
    double s = 0.0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        std::memcpy(buf.data() + d, cfg.point(i), sizeof(double) * static_cast<std::size_t>(d));
        s += h.eval(buf.data());
    }
    return 2.0 * s;
}

// Acklam's rational approximation of the standard normal quantile, refined by
// one Halley step; plenty for constructing near-perfect samples.
inline double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double pl = 0.02425;
    double x;
    if (p < pl) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - pl) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

} // namespace oracle
