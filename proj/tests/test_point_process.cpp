#include "doctest.h"
#include "oracles.hpp"

#include "pstein/chaos.hpp"
#include "pstein/errors.hpp"
#include "pstein/point_process.hpp"

#include <cmath>

using namespace pstein;

namespace {

Functional count_functional() {
    Functional F;
    F.label = "count";
    F.evaluate = [](const PointConfiguration& cfg) { return static_cast<double>(cfg.size()); };
    return F;
}

Functional ustat2_functional(const Kernel& h) {
    Functional F;
    F.label = "ustat2";
    F.evaluate = [h](const PointConfiguration& cfg) { return ustat_evaluate(h, 2, cfg); };
    return F;
}

} // namespace

TEST_CASE("sample_configuration: Poisson mean via MC, inversion and PTRD regimes") {
    for (double n : {10.0, 100.0}) {
        ControlMeasure control = unit_uniform_control(n);
        const int reps = 10000;
        double sum = 0.0, sumsq = 0.0;
        for (int i = 0; i < reps; ++i) {
            const auto cfg = sample_configuration(control, static_cast<std::uint64_t>(i));
            const double c = static_cast<double>(cfg.size());
            sum += c;
            sumsq += c * c;
        }
        const double mean = sum / reps;
        const double sd = std::sqrt(sumsq / reps - mean * mean);
        const double se = sd / std::sqrt(static_cast<double>(reps));
        CHECK(std::fabs(mean - n) < 3.0 * se);
    }
}

TEST_CASE("sample_configuration: disjoint boxes give independent counts (chi-square)") {
    ControlMeasure control = unit_uniform_control(8.0);
    const int reps = 4000;
    auto bin = [](int c) { return c <= 2 ? 0 : c <= 4 ? 1 : c <= 6 ? 2 : 3; };
    double table[4][4] = {};
    for (int i = 0; i < reps; ++i) {
        const auto cfg = sample_configuration(control, 777000 + static_cast<std::uint64_t>(i));
        int c1 = 0, c2 = 0;
        for (std::size_t p = 0; p < cfg.size(); ++p) {
            (cfg.point(p)[0] < 0.5 ? c1 : c2)++;
        }
        table[bin(c1)][bin(c2)] += 1.0;
    }
    double rows[4] = {}, cols[4] = {};
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            rows[a] += table[a][b];
            cols[b] += table[a][b];
        }
    }
    double stat = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const double expect = rows[a] * cols[b] / reps;
            if (expect > 0.0) {
                stat += (table[a][b] - expect) * (table[a][b] - expect) / expect;
            }
        }
    }
    // chi-square critical value at level 0.01 with df = 9
    CHECK(stat < 21.666);
}

TEST_CASE("sample_configuration: determinism for a fixed seed") {
    ControlMeasure control = unit_uniform_control(20.0);
    const auto a = sample_configuration(control, 99);
    const auto b = sample_configuration(control, 99);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.point(i)[0] == b.point(i)[0]);
    }
}

TEST_CASE("add_one_cost: counting functional") {
    ControlMeasure control = unit_uniform_control(5.0);
    const auto cfg = sample_configuration(control, 1);
    const double z = 0.3125;
    CHECK(add_one_cost(count_functional(), control, cfg, &z) == doctest::Approx(1.0));
}

TEST_CASE("add_one_cost: first chaos has D_z F = f(z), brute force over 100 draws") {
    ControlMeasure control = unit_uniform_control(6.0);
    const IntegrationSpec spec = IntegrationSpec::quadrature(48);
    Kernel f = tensor_power_kernel([](double x) { return std::sin(5.0 * x) + 0.25 * x; }, 1);
    MultipleIntegral ev(f, 1, control, spec);
    Functional F;
    F.label = "I1";
    F.evaluate = [&ev](const PointConfiguration& cfg) { return ev.value(cfg); };
    std::mt19937_64 rng = substream(2024, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto cfg = sample_configuration(control, rng);
        const double z = uniform01(rng);
        const double lhs = add_one_cost(F, control, cfg, &z);
        CHECK(lhs == doctest::Approx(f.eval(&z)).epsilon(1e-12));
    }
}

TEST_CASE("add_one_cost: order-2 U-statistic against the combinatorial oracle") {
    ControlMeasure control = unit_uniform_control(8.0);
    Kernel h = cosine_family_kernel(2);
    Functional F = ustat2_functional(h);
    std::mt19937_64 rng = substream(55, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto cfg = sample_configuration(control, rng);
        const double z = uniform01(rng);
        const double lhs = add_one_cost(F, control, cfg, &z);
        const double rhs = oracle::ustat2_add_one_cost(h, cfg, &z);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("add_one_cost: nonnegative kernel gives nonnegative cost") {
    ControlMeasure control = unit_uniform_control(8.0);
    Kernel h = indicator_distance_kernel(0.2, 1);
    Functional F = ustat2_functional(h);
    std::mt19937_64 rng = substream(56, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto cfg = sample_configuration(control, rng);
        const double z = uniform01(rng);
        CHECK(add_one_cost(F, control, cfg, &z) >= 0.0);
    }
}

TEST_CASE("add_one_cost: rejects points outside the support") {
    ControlMeasure control = unit_uniform_control(2.0);
    const auto cfg = sample_configuration(control, 3);
    const double z = 1.5;
    CHECK_THROWS_AS(add_one_cost(count_functional(), control, cfg, &z), DomainError);
}

TEST_CASE("second_difference: linear functionals and first chaos vanish") {
    ControlMeasure control = unit_uniform_control(4.0);
    const IntegrationSpec spec = IntegrationSpec::quadrature(32);
    const auto cfg = sample_configuration(control, 11);
    const double z1 = 0.25, z2 = 0.75;
    CHECK(second_difference(count_functional(), control, cfg, &z1, &z2) ==
          doctest::Approx(0.0).epsilon(1e-14));

    Kernel f = tensor_power_kernel([](double x) { return std::exp(x); }, 1);
    MultipleIntegral ev(f, 1, control, spec);
    Functional F;
    F.evaluate = [&ev](const PointConfiguration& cfg_) { return ev.value(cfg_); };
    CHECK(std::fabs(second_difference(F, control, cfg, &z1, &z2)) < 1e-11);
}

TEST_CASE("second_difference: order-2 U-statistic gives 2 h(z1, z2)") {
    ControlMeasure control = unit_uniform_control(6.0);
    Kernel h = cosine_family_kernel(3);
    Functional F = ustat2_functional(h);
    std::mt19937_64 rng = substream(77, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto cfg = sample_configuration(control, rng);
        const double z1 = uniform01(rng), z2 = uniform01(rng);
        const double lhs = second_difference(F, control, cfg, &z1, &z2);
        double pair[2] = {z1, z2};
        CHECK(lhs == doctest::Approx(2.0 * h.eval(pair)).epsilon(1e-8));
    }
}

TEST_CASE("difference operator: linearity, symmetry, product rule") {
    ControlMeasure control = unit_uniform_control(7.0);
    Kernel h1 = cosine_family_kernel(2);
    Kernel h2 = indicator_distance_kernel(0.15, 1);
    Functional F = ustat2_functional(h1);
    Functional G = ustat2_functional(h2);
    std::mt19937_64 rng = substream(88, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const auto cfg = sample_configuration(control, rng);
        const double z1 = uniform01(rng), z2 = uniform01(rng);

        Functional combo;
        combo.evaluate = [&](const PointConfiguration& c) { return 2.0 * F(c) - 3.0 * G(c); };
        const double lin_lhs = add_one_cost(combo, control, cfg, &z1);
        const double lin_rhs =
            2.0 * add_one_cost(F, control, cfg, &z1) - 3.0 * add_one_cost(G, control, cfg, &z1);
        CHECK(lin_lhs == doctest::Approx(lin_rhs).epsilon(1e-12));

        const double sym_a = second_difference(F, control, cfg, &z1, &z2);
        const double sym_b = second_difference(F, control, cfg, &z2, &z1);
        CHECK(sym_a == doctest::Approx(sym_b).epsilon(1e-12));

        Functional product;
        product.evaluate = [&](const PointConfiguration& c) { return F(c) * G(c); };
        const double df = add_one_cost(F, control, cfg, &z1);
        const double dg = add_one_cost(G, control, cfg, &z1);
        const double lhs = add_one_cost(product, control, cfg, &z1);
        const double rhs = F(cfg) * dg + G(cfg) * df + df * dg;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("PointConfiguration: duplicate points are rejected") {
    CHECK_THROWS_AS(PointConfiguration(1, {0.5, 0.5}), DomainError);
    PointConfiguration cfg(1, {0.25, 0.5});
    const double dup = 0.25;
    CHECK_THROWS_AS(cfg.with(&dup), DomainError);
}

TEST_CASE("Density: rejection floor triggers DensityTooPeaked") {
    // A spike of height 1e8 on the unit interval: acceptance ~ 1e-8.
    Density spike(
        Box::unit(1),
        [](const double* x) { return x[0] < 1e-8 ? 1e8 : 0.0; }, 1e8);
    ControlMeasure control(spike, 3.0);
    CHECK_THROWS_AS(sample_configuration(control, 5), DensityTooPeakedError);
}
