#include "doctest.h"

#include "pstein/rng.hpp"
#include "pstein/stein.hpp"

#include <cmath>

using namespace pstein;

namespace {
const double kSqrt2PiOver4 = 0.62665706865775012560; // sqrt(2*pi)/4
}

TEST_CASE("stein_solution: maximum value at x = w = 0") {
    CHECK(stein_solution({0.0}, 0.0) == doctest::Approx(kSqrt2PiOver4).epsilon(1e-12));
}

TEST_CASE("stein_solution: vanishes in the far left tail") {
    // Decay is (1 - Phi(x))/|w|: about 0.05 at w = -10, below 1e-3 by w = -1000.
    const double f10 = stein_solution({0.0}, -10.0);
    const double f100 = stein_solution({0.0}, -100.0);
    const double f1000 = stein_solution({0.0}, -1000.0);
    CHECK(f10 == doctest::Approx(0.5 / 10.0).epsilon(0.02));
    CHECK(f10 > f100);
    CHECK(f100 > f1000);
    CHECK(f1000 < 1e-3);
    CHECK(f1000 > 0.0);
}

TEST_CASE("stein_solution: continuity at the kink") {
    for (double x : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
        const double eps = 2.5e-11;
        const double left = stein_solution({x}, x - eps);
        const double right = stein_solution({x}, x + eps);
        CHECK(std::fabs(left - right) < 1e-10);
    }
}

TEST_CASE("stein_solution: seam between direct and continued-fraction branches") {
    // Both formulas evaluated at the handover point must agree to 1e-12.
    const double t = 7.0;
    const double direct =
        std::exp(0.5 * t * t + 0.91893853320467274178) * 0.5 * std::erfc(t / std::sqrt(2.0));
    const double cf = scaled_mills(std::nextafter(t, 8.0));
    CHECK(cf == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("stein_residual: defining equation holds") {
    CHECK(std::fabs(stein_residual({0.0}, 1.0)) < 1e-9);
    // One-sided convention at w = x.
    const SteinFunction s{2.0};
    const double f = stein_solution(s, 2.0);
    const double convention = 1.0 - normal_cdf(2.0) + 2.0 * f;
    CHECK(stein_derivative(s, 2.0) == doctest::Approx(convention).epsilon(1e-12));
    CHECK(std::fabs(stein_residual(s, 2.0)) < 1e-9);
}

TEST_CASE("stein_residual: grid maximum") {
    double worst = 0.0;
    for (double x : {-2.0, 0.0, 2.0}) {
        for (double w = -8.0; w <= 8.0; w += 1e-3) {
            worst = std::max(worst, std::fabs(stein_residual({x}, w)));
        }
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("stein inequalities on a dense grid") {
    for (double x : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
        for (double w = -8.0; w <= 8.0; w += 1e-2) {
            const double f = stein_solution({x}, w);
            CHECK(f > 0.0);
            CHECK(f <= kSqrt2PiOver4 + 1e-10);
            CHECK(std::fabs(stein_derivative({x}, w)) <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("stein increment bound on random triples") {
    std::mt19937_64 rng = substream(5150, 0);
    for (int t = 0; t < 10000; ++t) {
        const double x = 8.0 * (uniform01(rng) - 0.5);
        const double w = 10.0 * (uniform01(rng) - 0.5);
        const double u = 4.0 * (uniform01(rng) - 0.5);
        const double v = 4.0 * (uniform01(rng) - 0.5);
        const SteinFunction s{x};
        const double lhs = std::fabs((w + u) * stein_solution(s, w + u) -
                                     (w + v) * stein_solution(s, w + v));
        const double rhs = (std::fabs(w) + kSqrt2PiOver4) * (std::fabs(u) + std::fabs(v));
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("stein_solution: stable far outside the grid") {
    CHECK(std::isfinite(stein_solution({0.0}, 40.0)));
    CHECK(std::isfinite(stein_solution({0.0}, -40.0)));
    CHECK(std::isfinite(stein_solution({30.0}, 20.0)));
    CHECK(stein_solution({30.0}, 20.0) > 0.0);
}
