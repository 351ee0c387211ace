#pragma once

#include "pstein/bounds.hpp"
#include "pstein/diagnostics.hpp"

#include <array>
#include <optional>

namespace pstein {

// A reproducible experiment: control measure, raw functional, optional chaos
// expansion of the normalized functional, and the (mean, sd) normalization.
struct Scenario {
    std::string label;
    double scale = 0.0; // n or T, drives rate tables
    ControlMeasure control;
    Functional functional; // raw value (e.g. U_n), not normalized
    std::optional<ChaosExpansion> expansion; // expansion of (F - mean)/sd
    double mean = 0.0;
    double sd = 1.0;
    std::optional<double> expected_rate;

    double normalized(const PointConfiguration& cfg) const {
        return (functional(cfg) - mean) / sd;
    }
};

// Jump-size measure nu for the OU-Levy strip: density with bounded support,
// second moment 1, moments up to order 6 recorded.
struct LevyNu {
    Profile1D profile;
    double total_mass = 1.0;
    std::array<double, 7> moments{}; // moments[k] = int u^k nu(du), k = 0..6

    double c_nu() const { return moments[4]; }
    double first_moment() const { return moments[1]; }

    // Computes mass and moments by quadrature; rejects nu with int u^2 != 1.
    static LevyNu from_profile(Profile1D profile, const IntegrationSpec& spec,
                               double tol = 1e-6);
    // Uniform density on [-sqrt(3), sqrt(3)]: mass 1, int u^2 = 1, c_nu = 9/5.
    static LevyNu uniform_default();
};

// Degenerate U-statistic with the cosine kernel family on uniform [0,1].
Scenario build_dejong_cosine(double intensity, int m, const IntegrationSpec& spec);

// Pairwise-interaction statistic h(x,y) = 1(|x-y| <= radius) on uniform [0,1]^d.
Scenario build_pairwise(double intensity, double radius, int dim, const IntegrationSpec& spec);

struct OuLevyOptions {
    double lambda = 1.0;
    double horizon = 100.0;     // T
    double truncation_tol = 1e-8;
    double shift = 0.0;         // h of V_T^(h)
    // Time integrals default to the exact event-driven closed form (the path
    // is an explicit exponential between jumps). A fixed-grid composite
    // Simpson route is kept as a cross-check; its error at the jump times is
    // O(1/steps) per path.
    bool use_simpson = false;
    int time_steps = 2048;      // Simpson steps over [0, T] when enabled
};

struct OuLevyScenarios {
    Scenario empirical_mean;   // M_T / sqrt(2/lambda)
    Scenario second_moment;    // S_T / sqrt(2/lambda + c_nu^2)
    Scenario shifted_moment;   // V_T^(h) / sqrt(2/lambda + c_nu^2 e^{-2 lambda h})
};

OuLevyScenarios build_ou_levy(const OuLevyOptions& opt, const LevyNu& nu,
                              const IntegrationSpec& spec);

// Normalized replicate values (F - mean)/sd with per-replicate substreams.
std::vector<double> simulate_normalized(const Scenario& scenario, int reps, std::uint64_t seed,
                                        int threads = 0, std::uint64_t stream_salt = 0);

// One scale per scenario: simulate, take the Kolmogorov distance, fit the
// log-log slope.
RateTable run_rate_study(const std::vector<Scenario>& scenarios, int reps, std::uint64_t seed,
                         int threads = 0);

struct ConsistencyReport {
    double mc_mean = 0, mc_mean_se = 0;
    double mc_var = 0, mc_var_se = 0;
    double expected_mean = 0, expected_var = 0;
    bool within(double n_sigma) const;
};

// MC mean/variance of the raw functional against the declared normalization.
ConsistencyReport scenario_consistency(const Scenario& scenario, int reps, std::uint64_t seed,
                                       int threads = 0);

} // namespace pstein
