#pragma once

#include "pstein/chaos.hpp"
#include "pstein/contraction.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pstein {

// Identifies ||f^(i) *_r^l f^(j)|| inside a report.
struct ContractionKey {
    int i = 1;
    int j = 1;
    int r = 0;
    int l = 0;

    bool operator<(const ContractionKey& o) const {
        if (i != o.i) return i < o.i;
        if (j != o.j) return j < o.j;
        if (r != o.r) return r < o.r;
        return l < o.l;
    }
    std::string to_string() const;
};

// Monte Carlo estimates of the four Kolmogorov-bound terms
//   A1 = E|1 - <DF, -DL^{-1}F>|
//   A2 = (E<(DF)^2, (DL^{-1}F)^2>)^{1/2}
//   A3 = (E||DF||^4)^{1/4} ((E F^4)^{1/4} + 1)
//   A4 = sup_x E<(DF) D1(F>x), |DL^{-1}F|>
// plus the raw middle terms of the un-Cauchy-Schwarz'd bound
//   T2 = E<(DF)^2, |DL^{-1}F|>,  T3 = E<(DF)^2, |F * DL^{-1}F|>.
struct TermEstimates {
    double a1 = 0, a1_se = 0;
    double a2 = 0, a2_se = 0;
    double a3 = 0, a3_se = 0;
    double a4 = 0, a4_se = 0;
    double t2 = 0, t2_se = 0;
    double t3 = 0, t3_se = 0;
    double fourth_moment = 0, fourth_moment_se = 0; // E F^4 from the same stream
    // A1 + A2*A3/2 + A4 (plug-in form, constants absorbed into the 1/2).
    double total_plugin = 0, total_plugin_se = 0;
    // A1 + sqrt(2*pi)/8 * T2 + T3/2 + A4 (explicit-constant form).
    double total_explicit = 0, total_explicit_se = 0;
    std::vector<double> x_grid;
    double a4_argmax_x = 0;
    bool insufficient_replication = false;
    int reps = 0;
    int z_budget = 0;
    std::uint64_t seed = 0;
};

enum class ConstantMode { Unit, ReportedSeparately };

struct BoundReport {
    double variance_gap = 0.0; // |1 - var F| (|1 - q! ||f||^2| for one integral)
    double variance = 0.0;     // recorded variance scale (var U_n for de Jong)
    std::map<ContractionKey, double> contraction_norms;
    std::optional<TermEstimates> term_estimates;
    double bound_value = 0.0;
    ConstantMode constant_mode = ConstantMode::Unit;
    std::string family;
};

struct Theorem31Options {
    int reps = 1000;
    int z_budget = 512;
    std::uint64_t seed = 1;
    int threads = 0;                       // 0 = hardware
    std::vector<double> x_grid;            // empty -> 41 points on [-4,4]
    bool add_empirical_quantiles = true;   // deciles of F from the same run
};

std::vector<double> default_x_grid();

// The four bound terms for a finite chaos expansion, by Monte Carlo over
// configurations (outer) and importance-sampled z integrals (inner).
TermEstimates theorem31_terms_mc(const ChaosExpansion& expansion, const ControlMeasure& control,
                                 const IntegrationSpec& spec, const Theorem31Options& opt);

// Constant-free Kolmogorov bound for F = I_q(f), q in {2, 3}:
// max over |1 - q!||f||^2| and the contraction norms / their 3/2 powers.
BoundReport multiple_integral_bound(const Kernel& f, int q, const ControlMeasure& control,
                                    const IntegrationSpec& spec);

// Quantitative de Jong bound for a completely degenerate order-2 kernel:
// max over the three contraction norms and their 3/2 powers, divided by
// var(U_n) = 2 n^2 E[h^2].
BoundReport dejong_bound(const Kernel& h, const ControlMeasure& control,
                         const IntegrationSpec& spec);

// The five addends of E F^4 for F = I_2(f) with 2||f||^2 = 1.
struct FourthMomentBreakdown {
    double sym_star_1_0 = 0; // 16 * 3! * ||sym(f *_1^0 f)||^2
    double star_2_1 = 0;     // 16 * ||f *_2^1 f||^2
    double star_1_1 = 0;     // 16 * ||f *_1^1 f||^2
    double mixed = 0;        // 2 * ||4 f *_1^1 f + 2 f^2||^2
    double gaussian = 0;     // 3 * (2 ||f||^2)^2
    double total() const { return sym_star_1_0 + star_2_1 + star_1_1 + mixed + gaussian; }
};

FourthMomentBreakdown fourth_moment_from_contractions(const Kernel& f,
                                                      const ControlMeasure& control,
                                                      const IntegrationSpec& spec,
                                                      double normalization_tol = 1e-6);

// sqrt(max(EF^4 - 3, 0)); the clamp guards Monte Carlo noise.
double fourth_moment_gap(double fourth_moment);

struct MomentEstimate {
    double value = 0.0;
    double stderr_value = 0.0;
};

// Sample-based E F^4 with standard error.
MomentEstimate fourth_moment_mc(const std::vector<double>& samples);

// Constant-free bound for a finite expansion (orders <= 3), normalized so
// chaos_variance is close to 1:
// max( |1 - var F|, max_same + max_cross ) over the theorem's (r,l) ranges.
BoundReport finite_expansion_bound(const ChaosExpansion& expansion,
                                   const ControlMeasure& control, const IntegrationSpec& spec);

// (r, l) pairs entering the single-kernel maxima for order q.
std::vector<ContractionIndex> same_kernel_pairs(int q);

} // namespace pstein
