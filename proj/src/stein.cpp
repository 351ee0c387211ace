#include "pstein/stein.hpp"

#include <cmath>

namespace pstein {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kLogSqrt2Pi = 0.91893853320467274178; // log sqrt(2*pi)
constexpr double kMillsSwitch = 7.0;

// Laplace continued fraction for the Mills ratio, t > 0 and large:
// R(t) = 1 / (t + 1/(t + 2/(t + 3/(...)))), with
// sqrt(2*pi) e^{t^2/2} (1 - Phi(t)) = R(t).
double mills_continued_fraction(double t) {
    double cf = 0.0;
    for (int k = 60; k >= 1; --k) {
        cf = static_cast<double>(k) / (t + cf);
    }
    return 1.0 / (t + cf);
}
} // namespace

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

double scaled_mills(double t) {
    if (t > kMillsSwitch) {
        return mills_continued_fraction(t);
    }
    // Direct form; safe because e^{t^2/2} stays moderate for t <= 7 and the
    // complementary tail carries no cancellation.
    return std::exp(0.5 * t * t + kLogSqrt2Pi) * normal_cdf(-t);
}

double log_normal_cdf(double t) {
    if (t >= -kMillsSwitch) {
        return std::log(normal_cdf(t));
    }
    return std::log(mills_continued_fraction(-t)) - 0.5 * t * t - kLogSqrt2Pi;
}

double stein_solution(SteinFunction s, double w) {
    const double lo = std::min(w, s.x);
    const double hi = std::max(w, s.x);
    // log f = log sqrt(2*pi) + w^2/2 + log Phi(lo) + log Phi(-hi); the tail
    // logarithm cancels the w^2/2 growth on whichever side w escapes to.
    const double log_f = kLogSqrt2Pi + 0.5 * w * w + log_normal_cdf(lo) + log_normal_cdf(-hi);
    return std::exp(log_f);
}

double stein_derivative(SteinFunction s, double w) {
    const double f = stein_solution(s, w);
    if (w <= s.x) {
        // Left branch (the one-sided convention at w == x lives here).
        return w * f + 1.0 - normal_cdf(s.x);
    }
    return w * f - normal_cdf(s.x);
}

double stein_residual(SteinFunction s, double w) {
    const double f = stein_solution(s, w);
    const double fprime = stein_derivative(s, w);
    const double rhs = (w <= s.x ? 1.0 : 0.0) - normal_cdf(s.x);
    return fprime - w * f - rhs;
}

} // namespace pstein
