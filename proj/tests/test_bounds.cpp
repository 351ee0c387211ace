#include "doctest.h"
#include "oracles.hpp"

#include "pstein/bounds.hpp"
#include "pstein/errors.hpp"
#include "pstein/parallel.hpp"

#include <cmath>

using namespace pstein;

namespace {

ChaosExpansion single_term(int order, const Kernel& k) {
    ChaosExpansion e;
    e.terms.push_back({order, k});
    return e;
}

// Normalized de Jong cosine kernel f = h_m / sqrt(2 n^2) under mu_n.
Kernel normalized_cosine(int m, double n) {
    return scale_kernel(cosine_family_kernel(m), 1.0 / (std::sqrt(2.0) * n));
}

double recompute_max_bound(const BoundReport& r) {
    double best = r.variance_gap;
    for (const auto& [key, nu] : r.contraction_norms) {
        best = std::max(best, std::max(nu, std::pow(nu, 1.5)));
    }
    return best;
}

} // namespace

TEST_CASE("theorem31: first chaos has A1 = 0 within MC noise") {
    const double n = 4.0;
    ControlMeasure control = unit_uniform_control(n);
    const IntegrationSpec spec = IntegrationSpec::quadrature(64);
    Kernel f = scale_kernel(tensor_power_kernel(cosine_profile(1), 1), 1.0 / std::sqrt(n));
    CHECK(l2_norm_squared(f, control, spec) == doctest::Approx(1.0).epsilon(1e-10));
    Theorem31Options opt;
    opt.reps = 150;
    opt.z_budget = 4096;
    opt.seed = 11;
    const TermEstimates t = theorem31_terms_mc(single_term(1, f), control, spec, opt);
    CHECK(t.a1 < 0.05);
    CHECK_FALSE(t.insufficient_replication);
}

TEST_CASE("theorem31: I_2 term ties A2 to the direct fourth-power formula") {
    const double n = 8.0;
    ControlMeasure control = unit_uniform_control(n);
    const IntegrationSpec spec = IntegrationSpec::quadrature(48);
    Kernel f = normalized_cosine(2, n);
    Theorem31Options opt;
    opt.reps = 200;
    opt.z_budget = 128;
    opt.seed = 17;
    const TermEstimates t = theorem31_terms_mc(single_term(2, f), control, spec, opt);

    // Replay the identical streams: A2^2 must equal (1/4) E n mean_z (D_z F)^4.
    MultipleIntegral ev(f, 2, control, spec);
    std::vector<double> per_rep(opt.reps);
    for (int rep = 0; rep < opt.reps; ++rep) {
        std::mt19937_64 rng = substream(opt.seed, static_cast<std::uint64_t>(rep));
        const auto cfg = sample_configuration(control, rng);
        double sum4 = 0.0;
        double z;
        for (int k = 0; k < opt.z_budget; ++k) {
            control.density.sample(rng, &z);
            const double a = ev.derivative(&z, cfg);
            sum4 += a * a * a * a;
        }
        per_rep[rep] = n * sum4 / opt.z_budget;
    }
    double mean4 = 0.0;
    for (double v : per_rep) mean4 += v;
    mean4 /= opt.reps;
    CHECK(t.a2 == doctest::Approx(0.5 * std::sqrt(mean4)).epsilon(1e-12));
}

TEST_CASE("theorem31: pathwise <DF,-DL^{-1}F> equals (1/q)||DF||^2 per realization") {
    ControlMeasure control = unit_uniform_control(6.0);
    const IntegrationSpec spec = IntegrationSpec::quadrature(32);
    std::mt19937_64 rng = substream(23, 0);
    for (int q : {1, 2}) {
        Kernel f = q == 1 ? tensor_power_kernel(cosine_profile(1), 1) : cosine_family_kernel(2);
        MultipleIntegral ev(f, q, control, spec);
        const auto cfg = sample_configuration(control, rng);
        for (int t = 0; t < 25; ++t) {
            const double z = uniform01(rng);
            const double a = ev.derivative(&z, cfg);
            const double b = ev.lowered(&z, cfg);
            CHECK(a * b == doctest::Approx(a * a / q).epsilon(1e-13));
        }
    }
}

TEST_CASE("theorem31: self-consistency under budget doubling (de Jong cosine)") {
    const double n = 64.0;
    ControlMeasure control = unit_uniform_control(n);
    const IntegrationSpec spec = IntegrationSpec::quadrature(64);
    const ChaosExpansion e = single_term(2, normalized_cosine(8, n));
    Theorem31Options lo;
    lo.reps = 250;
    lo.z_budget = 192;
    lo.seed = 29;
    Theorem31Options hi;
    hi.reps = 500;
    hi.z_budget = 384;
    hi.seed = 31;
    const TermEstimates a = theorem31_terms_mc(e, control, spec, lo);
    const TermEstimates b = theorem31_terms_mc(e, control, spec, hi);
    auto close = [](double va, double sa, double vb, double sb) {
        return std::fabs(va - vb) <= 4.0 * std::sqrt(sa * sa + sb * sb) + 1e-12;
    };
    CHECK(close(a.a1, a.a1_se, b.a1, b.a1_se));
    CHECK(close(a.a2, a.a2_se, b.a2, b.a2_se));
    CHECK(close(a.a3, a.a3_se, b.a3, b.a3_se));
    CHECK(close(a.a4, a.a4_se, b.a4, b.a4_se));
}

TEST_CASE("theorem31: insufficient replication flag") {
    ControlMeasure control = unit_uniform_control(2.0);
    const IntegrationSpec spec = IntegrationSpec::quadrature(24);
    Theorem31Options opt;
    opt.reps = 50;
    opt.z_budget = 16;
    const TermEstimates t =
        theorem31_terms_mc(single_term(2, normalized_cosine(1, 2.0)), control, spec, opt);
    CHECK(t.insufficient_replication);
}

TEST_CASE("multiple_integral_bound: normalized kernel has zero variance gap") {
    ControlMeasure c1 = unit_uniform_control(1.0);
    const IntegrationSpec spec = IntegrationSpec::quadrature(64);
    Kernel f = normalized_cosine(4, 1.0);
    const BoundReport r = multiple_integral_bound(f, 2, c1, spec);
    CHECK(r.variance_gap < 1e-9);
    CHECK(r.constant_mode == ConstantMode::Unit);
    // ||f *_1^1 f|| = m^{-1/2}/2 for the normalized cosine family.
    CHECK(r.contraction_norms.at({1, 1, 1, 1}) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(r.bound_value == doctest::Approx(recompute_max_bound(r)).epsilon(1e-12));
}

TEST_CASE("multiple_integral_bound: cosine family bound decreases along m = ceil(sqrt(n))") {
    // With the intensity coupled to the family size every component of the
    // bound vanishes; at fixed intensity the L4-route component ||f^2||
    // grows like sqrt(m) (no CLT there), so the sequence must be coupled.
    double prev = 1e9;
    for (double n : {16.0, 64.0, 256.0}) {
        const int m = static_cast<int>(std::ceil(std::sqrt(n)));
        ControlMeasure cn = unit_uniform_control(n);
        const IntegrationSpec spec = IntegrationSpec::quadrature(std::max(64, 8 * m));
        const BoundReport r = multiple_integral_bound(normalized_cosine(m, n), 2, cn, spec);
        CHECK(r.variance_gap < 1e-9);
        CHECK(r.bound_value < prev);
        prev = r.bound_value;
    }
}

TEST_CASE("multiple_integral_bound: invariant under argument relabeling") {
    ControlMeasure c1 = unit_uniform_control(1.5);
    const IntegrationSpec spec = IntegrationSpec::quadrature(48);
    Kernel f = normalized_cosine(3, 1.5);
    Kernel swapped = f;
    KernelFn inner = f.eval;
    swapped.eval = [inner](const double* x) {
        double s[2] = {x[1], x[0]};
        return inner(s);
    };
    const BoundReport a = multiple_integral_bound(f, 2, c1, spec);
    const BoundReport b = multiple_integral_bound(swapped, 2, c1, spec);
    CHECK(a.bound_value == doctest::Approx(b.bound_value).epsilon(1e-12));
}

TEST_CASE("dejong_bound: single cosine never vanishes, flags no CLT") {
    const IntegrationSpec spec = IntegrationSpec::quadrature(64);
    for (double n : {4.0, 9.0}) {
        ControlMeasure cn = unit_uniform_control(n);
        const BoundReport r = dejong_bound(cosine_family_kernel(1), cn, spec);
        // normalized ||h *_1^1 h|| / var(U_n) = 1/2 independent of n
        CHECK(r.contraction_norms.at({1, 1, 1, 1}) / r.variance ==
              doctest::Approx(0.5).epsilon(1e-9));
        CHECK(r.bound_value >= 0.5 - 1e-9);
    }
}

TEST_CASE("dejong_bound: vanishes along m_n = ceil(sqrt(n))") {
    const IntegrationSpec spec = IntegrationSpec::quadrature(80);
    double prev = 1e9;
    for (double n : {16.0, 64.0, 256.0}) {
        const int m = static_cast<int>(std::ceil(std::sqrt(n)));
        ControlMeasure cn = unit_uniform_control(n);
        const BoundReport r = dejong_bound(cosine_family_kernel(m), cn, spec);
        CHECK(r.bound_value < prev);
        prev = r.bound_value;
    }
}

TEST_CASE("dejong_bound: rejects the zero kernel and non-degenerate kernels") {
    ControlMeasure c4 = unit_uniform_control(4.0);
    const IntegrationSpec spec = IntegrationSpec::quadrature(48);
    CHECK_THROWS_AS(dejong_bound(constant_kernel(0.0, 2, 1), c4, spec), DomainError);
    CHECK_THROWS_AS(dejong_bound(indicator_distance_kernel(0.1, 1), c4, spec),
                    NotDegenerateError);
}

TEST_CASE("fourth moment: breakdown structure and MC cross-check") {
    // Arithmetic of the assembly: no contraction content leaves exactly 3.
    FourthMomentBreakdown zeroed;
    zeroed.gaussian = 3.0;
    CHECK(zeroed.total() == 3.0);

    ControlMeasure c1 = unit_uniform_control(1.0);
    const IntegrationSpec spec = IntegrationSpec::quadrature(64);
    Kernel f = normalized_cosine(4, 1.0);
    const FourthMomentBreakdown b = fourth_moment_from_contractions(f, c1, spec);
    CHECK(b.gaussian == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(b.total() >= b.gaussian);

    // MC estimate of E F^4 over 10^5 replications.
    MultipleIntegral ev(f, 2, c1, spec);
    const int reps = 100000;
    std::vector<double> samples(reps);
    parallel_for(reps, 0, [&](std::size_t i) {
        std::mt19937_64 rng = substream(404, i);
        samples[i] = ev.value(sample_configuration(c1, rng));
    });
    const MomentEstimate mc = fourth_moment_mc(samples);
    CHECK(std::fabs(mc.value - b.total()) < 4.0 * mc.stderr_value);

    // Internal consistency of the gap, and agreement between routes.
    CHECK(fourth_moment_gap(3.0) == 0.0);
    CHECK(fourth_moment_gap(b.total()) == doctest::Approx(std::sqrt(b.total() - 3.0)));
    const double se_gap = mc.stderr_value / (2.0 * fourth_moment_gap(mc.value) + 1e-12);
    CHECK(std::fabs(fourth_moment_gap(mc.value) - fourth_moment_gap(b.total())) <
          4.0 * se_gap + 1e-3);
}

TEST_CASE("fourth moment: normalization is enforced") {
    ControlMeasure c1 = unit_uniform_control(1.0);
    const IntegrationSpec spec = IntegrationSpec::quadrature(48);
    CHECK_THROWS_AS(fourth_moment_from_contractions(cosine_family_kernel(4), c1, spec),
                    NotNormalizedError);
}

TEST_CASE("finite_expansion_bound: single term reduces to multiple_integral_bound") {
    ControlMeasure c1 = unit_uniform_control(1.0);
    const IntegrationSpec spec = IntegrationSpec::quadrature(64);
    Kernel f = normalized_cosine(4, 1.0);
    const BoundReport a = finite_expansion_bound(single_term(2, f), c1, spec);
    const BoundReport b = multiple_integral_bound(f, 2, c1, spec);
    REQUIRE(a.contraction_norms.size() == b.contraction_norms.size());
    for (const auto& [key, nu] : a.contraction_norms) {
        CHECK(nu == doctest::Approx(b.contraction_norms.at(key)).epsilon(1e-13));
    }
    CHECK(a.bound_value == doctest::Approx(b.bound_value).epsilon(1e-13));
}

TEST_CASE("fourth moment gap >= 0 and breakdown >= 3 across cosine family sizes") {
    ControlMeasure c1 = unit_uniform_control(1.0);
    for (int m : {1, 2, 8}) {
        const IntegrationSpec spec = IntegrationSpec::quadrature(std::max(64, 8 * m));
        const FourthMomentBreakdown b =
            fourth_moment_from_contractions(normalized_cosine(m, 1.0), c1, spec);
        CHECK(b.total() >= 3.0 * (1.0 - 1e-9));
        CHECK(fourth_moment_gap(b.total()) >= 0.0);
    }
}
