#pragma once

namespace pstein {

// The bounded solution f_x of the Stein equation
//   f'(w) - w f(w) = 1(w <= x) - Phi(x),
// evaluated through its log-space closed form
//   f_x(w) = sqrt(2*pi) e^{w^2/2} Phi(min(w,x)) (1 - Phi(max(w,x))),
// which stays finite for every finite w.
struct SteinFunction {
    double x = 0.0;
};

// Standard normal distribution function, >= 1e-15 relative accuracy in the bulk.
double normal_cdf(double x);

// log Phi(t), stable in both tails (Mills-ratio continued fraction below -7).
double log_normal_cdf(double t);

// sqrt(2*pi) e^{t^2/2} (1 - Phi(t)); the scaled Mills ratio.
double scaled_mills(double t);

double stein_solution(SteinFunction s, double w);

// Analytic one-sided derivative; at w == x uses 1 - Phi(x) + x f(x).
double stein_derivative(SteinFunction s, double w);

// f'(w) - w f(w) - (1(w <= x) - Phi(x)); should vanish.
double stein_residual(SteinFunction s, double w);

} // namespace pstein
