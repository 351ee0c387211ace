#include "pstein/rng.hpp"

#include "pstein/errors.hpp"

#include <cmath>

namespace pstein {

double standard_normal(std::mt19937_64& g) {
    for (;;) {
        const double u = 2.0 * uniform01(g) - 1.0;
        const double v = 2.0 * uniform01(g) - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

namespace {

long poisson_inversion(double mean, std::mt19937_64& g) {
    const double p0 = std::exp(-mean);
    double u = uniform01(g);
    long k = 0;
    double p = p0;
    double cum = p0;
    while (u > cum) {
        ++k;
        p *= mean / static_cast<double>(k);
        cum += p;
        if (k > 2000) break; // mean <= 30, unreachable in practice
    }
    return k;
}

// Hoermann's PTRD (transformed rejection with decomposition), valid for
// mean >= 10; we switch to it above 30.
long poisson_ptrd(double mu, std::mt19937_64& g) {
    const double smu = std::sqrt(mu);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        double u = uniform01(g) - 0.5;
        double v = uniform01(g);
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + mu + 0.43);
        if (us >= 0.07 && v <= v_r) {
            return static_cast<long>(kf);
        }
        if (kf < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        const double k = kf;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = k * std::log(mu) - mu - std::lgamma(k + 1.0);
        if (lhs <= rhs) {
            return static_cast<long>(kf);
        }
    }
}

} // namespace

long poisson_count(double mean, std::mt19937_64& g) {
    if (!(mean > 0.0) || !std::isfinite(mean)) {
        throw DomainError("poisson_count: mean must be positive and finite");
    }
    if (mean <= 30.0) {
        return poisson_inversion(mean, g);
    }
    return poisson_ptrd(mean, g);
}

} // namespace pstein
