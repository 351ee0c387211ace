// Scratch probe: OU-Levy distances and variances at desk scale.
#include "pstein/scenarios.hpp"

#include <cstdio>

using namespace pstein;

static void probe_pairwise() {
    const IntegrationSpec spec = IntegrationSpec::quadrature(256);
    std::printf("pairwise r=0.1 d=1, reps=10000:\n");
    RateTable t;
    for (double n : {16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0}) {
        Scenario s = build_pairwise(n, 0.1, 1, spec);
        SampleSet set;
        set.values = simulate_normalized(s, 10000, 606, 0);
        const auto kd = kolmogorov_distance(set);
        std::printf("  n=%6.0f mean=%8.4f sd=%8.4f dK=%.4f\n", n, s.mean, s.sd, kd.distance);
        t.rows.push_back({n, kd.distance, kd.stderr_value});
    }
    fit_rate_slope(t);
    std::printf("  slope=%.3f +- %.3f\n", t.slope, t.slope_stderr);
}

int main() {
    probe_pairwise();
    const IntegrationSpec spec = IntegrationSpec::quadrature(24);
    const LevyNu nu = LevyNu::uniform_default();
    std::printf("nu: mass=%.6f m2=%.6f c_nu=%.6f m1=%.2e\n", nu.total_mass, nu.moments[2],
                nu.c_nu(), nu.first_moment());
    for (double T : {25.0, 100.0, 400.0}) {
        OuLevyOptions opt;
        opt.lambda = 1.0;
        opt.horizon = T;
        const OuLevyScenarios s = build_ou_levy(opt, nu, spec);
        const int reps = 10000;
        SampleSet m, sec;
        m.values = simulate_normalized(s.empirical_mean, reps, 777, 0);
        sec.values = simulate_normalized(s.second_moment, reps, 778, 0);
        const auto km = kolmogorov_distance(m);
        const auto ks = kolmogorov_distance(sec);
        double vm = 0, vs = 0, mm = 0, ms = 0;
        for (double v : m.values) mm += v;
        for (double v : sec.values) ms += v;
        mm /= reps;
        ms /= reps;
        for (double v : m.values) vm += (v - mm) * (v - mm);
        for (double v : sec.values) vs += (v - ms) * (v - ms);
        vm /= reps;
        vs /= reps;
        std::printf("T=%6.0f  dK(M)=%.4f dK(S)=%.4f  var(M_T)=%.4f var(S_T)=%.4f (sd^2: %.4f %.4f)\n",
                    T, km.distance, ks.distance, vm * s.empirical_mean.sd * s.empirical_mean.sd,
                    vs * s.second_moment.sd * s.second_moment.sd,
                    s.empirical_mean.sd * s.empirical_mean.sd,
                    s.second_moment.sd * s.second_moment.sd);
    }
    return 0;
}
