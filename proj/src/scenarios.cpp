#include "pstein/scenarios.hpp"

#include "pstein/errors.hpp"
#include "pstein/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pstein {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

double simpson(const std::vector<double>& v, double step) {
    // v holds G+1 samples on an even-G grid.
    const std::size_t g = v.size() - 1;
    double sum = v.front() + v.back();
    for (std::size_t i = 1; i < g; i += 2) sum += 4.0 * v[i];
    for (std::size_t i = 2; i < g; i += 2) sum += 2.0 * v[i];
    return step / 3.0 * sum;
}
} // namespace

Scenario build_dejong_cosine(double intensity, int m, const IntegrationSpec& spec) {
    if (intensity < 1.0) throw DomainError("build_dejong_cosine: intensity >= 1 required");
    if (m < 1) throw DomainError("build_dejong_cosine: m >= 1 required");
    ControlMeasure control = unit_uniform_control(intensity);
    Kernel h = cosine_family_kernel(m);
    if (!check_degeneracy(h, control, degeneracy_grid(control, 33), 1e-8, spec)) {
        throw NotDegenerateError("build_dejong_cosine: cosine family not degenerate");
    }
    const ControlMeasure prob(control.density, 1.0);
    const double eh2 = l2_norm_squared(h, prob, spec); // = 1 by orthonormality
    const double sd = std::sqrt(2.0 * intensity * intensity * eh2);

    Scenario s;
    s.label = "dejong-cosine(n=" + std::to_string(intensity) + ",m=" + std::to_string(m) + ")";
    s.scale = intensity;
    s.control = control;
    s.mean = 0.0; // completely degenerate: E U_n = 0
    s.sd = sd;
    ChaosExpansion e;
    e.mean = 0.0;
    e.terms.push_back({2, scale_kernel(h, 1.0 / sd)});
    s.expansion = e;

    // U_n = sum_j [ S_j^2 - Q_j ] / sqrt(m) with S_j = sum_i phi_j(x_i):
    // O(N m) instead of the O(N^2 m) pair sum.
    s.functional.label = "dejong-cosine-ustat";
    s.functional.evaluate = [m](const PointConfiguration& cfg) {
        const std::size_t n = cfg.size();
        double total = 0.0;
        for (int j = 1; j <= m; ++j) {
            const double w = kTwoPi * j;
            double sj = 0.0, qj = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double c = std::sqrt(2.0) * std::cos(w * cfg.point(i)[0]);
                sj += c;
                qj += c * c;
            }
            total += sj * sj - qj;
        }
        return total / std::sqrt(static_cast<double>(m));
    };
    return s;
}

Scenario build_pairwise(double intensity, double radius, int dim, const IntegrationSpec& spec) {
    if (!(radius > 0.0 && radius < 0.25)) {
        throw DomainError("build_pairwise: radius must lie in (0, 1/4)");
    }
    if (dim != 1 && dim != 2) throw DomainError("build_pairwise: dim must be 1 or 2");
    ControlMeasure control = uniform_control(Box::unit(dim), intensity);
    Kernel h = indicator_distance_kernel(radius, dim);

    const double mean = ustat_mean(h, 2, control, spec);
    Kernel g1 = hoeffding_kernel(h, 2, 1, control, spec);
    ChaosExpansion raw;
    raw.mean = mean;
    raw.terms.push_back({1, g1});
    raw.terms.push_back({2, h});
    const double variance = chaos_variance(raw, control, spec);
    const double sd = std::sqrt(variance);

    Scenario s;
    s.label = "pairwise(n=" + std::to_string(intensity) + ",r=" + std::to_string(radius) +
              ",d=" + std::to_string(dim) + ")";
    s.scale = intensity;
    s.control = control;
    s.mean = mean;
    s.sd = sd;
    s.expected_rate = -0.5;
    ChaosExpansion norm;
    norm.mean = 0.0;
    norm.terms.push_back({1, scale_kernel(g1, 1.0 / sd)});
    norm.terms.push_back({2, scale_kernel(h, 1.0 / sd)});
    s.expansion = norm;

    s.functional.label = "pairwise-ustat";
    if (dim == 1) {
        // Sorted sweep: counts exactly the pairs the brute-force double loop
        // counts, in O(N log N).
        s.functional.evaluate = [radius](const PointConfiguration& cfg) {
            const std::size_t n = cfg.size();
            std::vector<double> xs(n);
            for (std::size_t i = 0; i < n; ++i) xs[i] = cfg.point(i)[0];
            std::sort(xs.begin(), xs.end());
            double pairs = 0.0;
            std::size_t lo = 0;
            for (std::size_t i = 0; i < n; ++i) {
                while (xs[i] - xs[lo] > radius) ++lo;
                pairs += static_cast<double>(i - lo);
            }
            return 2.0 * pairs;
        };
    } else {
        Kernel hh = h;
        s.functional.evaluate = [hh](const PointConfiguration& cfg) {
            return ustat_evaluate(hh, 2, cfg);
        };
    }
    return s;
}

LevyNu LevyNu::from_profile(Profile1D profile, const IntegrationSpec& spec, double tol) {
    LevyNu nu;
    nu.profile = profile;
    const AxisRule rule = mapped_rule(spec.budget, profile.lo, profile.hi);
    for (int k = 0; k <= 6; ++k) {
        double mk = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            mk += rule.weights[i] * std::pow(rule.nodes[i], k) * profile.pdf(rule.nodes[i]);
        }
        nu.moments[static_cast<std::size_t>(k)] = mk;
        if (!std::isfinite(mk)) {
            throw NumericalDomainError("LevyNu: non-finite moment of order " + std::to_string(k));
        }
    }
    nu.total_mass = nu.moments[0];
    if (std::fabs(nu.moments[2] - 1.0) > tol) {
        throw DomainError("LevyNu: second moment must equal 1, got " +
                          std::to_string(nu.moments[2]));
    }
    return nu;
}

LevyNu LevyNu::uniform_default() {
    const double s3 = std::sqrt(3.0);
    Profile1D p;
    p.lo = -s3;
    p.hi = s3;
    const double den = 1.0 / (2.0 * s3);
    p.pdf = [den](double) { return den; };
    p.pdf_max = den;
    p.direct_sampler = [s3](std::mt19937_64& g) { return uniform_in(g, -s3, s3); };
    p.label = "uniform[-sqrt3,sqrt3]";
    return from_profile(p, IntegrationSpec::quadrature(64));
}

namespace {

// Exact integrals of the shot-noise sum S_t = sum_{x_i <= t} d_i e^{-l(t-x_i)}
// over [0, T]: between jumps S decays exponentially, so every time integral
// the functionals need has a closed form driven by jump-time values of S.
class OuShotNoise {
  public:
    OuShotNoise(const PointConfiguration& cfg, double lambda, double jump_scale) : lambda_(lambda) {
        const std::size_t n = cfg.size();
        jumps_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            jumps_[i] = {cfg.point(i)[0], jump_scale * cfg.point(i)[1]};
        }
        std::sort(jumps_.begin(), jumps_.end());
        post_.resize(n);
        double s = 0.0;
        double prev = n ? jumps_[0].first : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s = s * std::exp(-lambda_ * (jumps_[i].first - prev)) + jumps_[i].second;
            post_[i] = s;
            prev = jumps_[i].first;
        }
    }

    // Left limit S(t-): jumps strictly before t.
    double pre(double t) const {
        const auto it = std::lower_bound(
            jumps_.begin(), jumps_.end(), t,
            [](const std::pair<double, double>& j, double v) { return j.first < v; });
        if (it == jumps_.begin()) return 0.0;
        const std::size_t k = static_cast<std::size_t>(it - jumps_.begin()) - 1;
        return post_[k] * std::exp(-lambda_ * (t - jumps_[k].first));
    }

    // int_a^b S dt; a, b must not be jump times (true a.s. for grid anchors).
    double integral(double a, double b) const {
        double jump_sum = 0.0;
        for (const auto& [x, d] : jumps_) {
            if (x > a && x <= b) jump_sum += d;
        }
        return (pre(a) - pre(b) + jump_sum) / lambda_;
    }

    // int_a^b S_t e^{-l t} dt.
    double exp_weighted_integral(double a, double b) const {
        double jump_sum = 0.0;
        for (const auto& [x, d] : jumps_) {
            if (x > a && x <= b) jump_sum += d * std::exp(-lambda_ * x);
        }
        const double va = pre(a) * std::exp(-lambda_ * a);
        const double vb = pre(b) * std::exp(-lambda_ * b);
        return (va - vb + jump_sum) / (2.0 * lambda_);
    }

    // int_0^T S_t S_{t+h} dt, h >= 0. The product decays at rate 2l between
    // events and jumps when either factor jumps.
    double product_integral(double horizon, double h) const {
        const double p0 = pre(0.0) * pre(h);
        const double pT = pre(horizon) * pre(horizon + h);
        double jump_terms = 0.0;
        for (const auto& [x, d] : jumps_) {
            if (h == 0.0) {
                if (x > 0.0 && x <= horizon) {
                    const double s_minus = pre(x);
                    jump_terms += 2.0 * s_minus * d + d * d;
                }
                continue;
            }
            if (x > 0.0 && x <= horizon) {
                jump_terms += d * pre(x + h); // S_t jumps, shifted factor smooth
            }
            if (x - h > 0.0 && x - h <= horizon) {
                jump_terms += pre(x - h) * d; // shifted factor jumps
            }
        }
        return (p0 - pT + jump_terms) / (2.0 * lambda_);
    }

  private:
    double lambda_;
    std::vector<std::pair<double, double>> jumps_; // (time, jump size)
    std::vector<double> post_;                     // S right after each jump
};

// Stationary-regime weights of the time-marginal kernels; all exponents <= 0.
struct OuKernelPieces {
    double lambda, horizon;

    double w_mean(double x) const {
        if (x > horizon) return 0.0;
        const double top = std::exp(-lambda * (std::max(x, 0.0) - x));
        return top - std::exp(-lambda * (horizon - x));
    }
    double w_second(double x) const {
        if (x > horizon) return 0.0;
        const double top = std::exp(-2.0 * lambda * (std::max(x, 0.0) - x));
        return top - std::exp(-2.0 * lambda * (horizon - x));
    }
};

} // namespace

OuLevyScenarios build_ou_levy(const OuLevyOptions& opt, const LevyNu& nu,
                              const IntegrationSpec& spec) {
    if (!(opt.truncation_tol > 0.0 && opt.truncation_tol < 1.0)) {
        throw DomainError("build_ou_levy: truncation_tol must lie in (0, 1)");
    }
    if (!(opt.lambda > 0.0) || !(opt.horizon > 0.0) || opt.shift < 0.0) {
        throw DomainError("build_ou_levy: lambda > 0, horizon > 0, shift >= 0 required");
    }
    const double lambda = opt.lambda;
    const double T = opt.horizon;
    const double h = opt.shift;
    const double burn_in = -std::log(opt.truncation_tol) / lambda;
    const double t_lo = -burn_in;
    const double t_hi = T + h;

    // Control = (Lebesgue time) x nu on the truncated strip, expressed as
    // intensity x probability density.
    Profile1D time_profile;
    time_profile.lo = t_lo;
    time_profile.hi = t_hi;
    const double time_len = t_hi - t_lo;
    time_profile.pdf = [time_len](double) { return 1.0 / time_len; };
    time_profile.pdf_max = 1.0 / time_len;
    time_profile.direct_sampler = [t_lo, t_hi](std::mt19937_64& g) {
        return uniform_in(g, t_lo, t_hi);
    };
    // Kernels vary on the 1/lambda scale; panel the long time axis so the
    // per-axis node budget resolves it.
    time_profile.quadrature_panels = std::max(1, static_cast<int>(std::ceil(time_len * lambda / 2.0)));
    time_profile.label = "uniform-time";
    Profile1D jump_profile = nu.profile;
    const double mass = nu.total_mass;
    if (mass > 0.0) {
        auto raw = nu.profile.pdf;
        jump_profile.pdf = [raw, mass](double u) { return raw(u) / mass; };
        jump_profile.pdf_max = nu.profile.pdf_max / mass;
    }
    ControlMeasure control(product_density({time_profile, jump_profile}, "ou-strip"),
                           time_len * mass);

    const double sqrt_2l = std::sqrt(2.0 * lambda);
    const double m1 = nu.first_moment();
    const double c_nu = nu.c_nu();
    const double sd_mean = std::sqrt(2.0 / lambda);
    // Asymptotic variances: int cov(Y_0^2, Y_s^2) ds = 2/lambda + c_nu (the
    // fourth-moment term enters linearly through the first-chaos kernel).
    const double sd_second = std::sqrt(2.0 / lambda + c_nu);
    const double sd_shift = std::sqrt(2.0 / lambda + c_nu * std::exp(-2.0 * lambda * h));

    int steps = std::max(2048, opt.time_steps);
    if (steps % 2 == 1) ++steps;
    const double dt = T / steps;

    // Evaluates Y on the grid start + k*dt, k = 0..steps, by an exact
    // exponential sweep over time-sorted jumps; the deterministic compensator
    // vanishes for symmetric nu.
    auto sweep = [lambda, sqrt_2l, m1, t_lo, dt, steps](const PointConfiguration& cfg,
                                                        double start) {
        const std::size_t n = cfg.size();
        std::vector<std::pair<double, double>> jumps(n); // (time, size)
        for (std::size_t i = 0; i < n; ++i) {
            jumps[i] = {cfg.point(i)[0], cfg.point(i)[1]};
        }
        std::sort(jumps.begin(), jumps.end());
        std::vector<double> y(static_cast<std::size_t>(steps) + 1, 0.0);
        double acc = 0.0;
        std::size_t next = 0;
        // warm-up to the first grid time
        while (next < n && jumps[next].first <= start) {
            acc += jumps[next].second * std::exp(-lambda * (start - jumps[next].first));
            ++next;
        }
        const double decay = std::exp(-lambda * dt);
        double t = start;
        for (int k = 0;; ++k) {
            const double comp = m1 * (1.0 - std::exp(-lambda * (t - t_lo))) / lambda;
            y[static_cast<std::size_t>(k)] = sqrt_2l * (acc - comp);
            if (k == steps) break;
            const double t_next = start + (k + 1) * dt;
            acc *= decay;
            while (next < n && jumps[next].first <= t_next) {
                acc += jumps[next].second * std::exp(-lambda * (t_next - jumps[next].first));
                ++next;
            }
            t = t_next;
        }
        return y;
    };

    Scenario base;
    base.scale = T;
    base.control = control;
    base.mean = 0.0;
    base.expected_rate = -0.5;

    OuLevyScenarios out{base, base, base};
    const bool use_simpson = opt.use_simpson;
    const double kappa = sqrt_2l * m1 / lambda; // compensator plateau

    // Exact linear functional: int_0^T Y dt with Y = S - c,
    // c(t) = kappa (1 - e^{-l (t - t_lo)}).
    auto linear_exact = [lambda, sqrt_2l, kappa, t_lo, T](const PointConfiguration& cfg) {
        const OuShotNoise s(cfg, lambda, sqrt_2l);
        double value = s.integral(0.0, T);
        if (kappa != 0.0) {
            const double e_lo = std::exp(-lambda * (0.0 - t_lo));
            const double e_hi = std::exp(-lambda * (T - t_lo));
            value -= kappa * (T - (e_lo - e_hi) / lambda);
        }
        return value;
    };

    // Exact quadratic functional: int_0^T Y_t Y_{t+h} dt.
    auto quadratic_exact = [lambda, sqrt_2l, kappa, t_lo, T](const PointConfiguration& cfg,
                                                             double shift) {
        const OuShotNoise s(cfg, lambda, sqrt_2l);
        double value = s.product_integral(T, shift);
        if (kappa != 0.0) {
            const double e_b = std::exp(lambda * t_lo);            // e^{-l B}
            const double e_bh = std::exp(lambda * (t_lo - shift)); // e^{-l(B+h)}
            // int S_t c(t+h) dt and int c(t) S_{t+h} dt
            value -= kappa * (s.integral(0.0, T) - e_bh * s.exp_weighted_integral(0.0, T));
            value -= kappa * (s.integral(shift, T + shift) -
                              e_b * std::exp(lambda * shift) *
                                  s.exp_weighted_integral(shift, T + shift));
            // int c(t) c(t+h) dt
            const double e1 = e_b * (1.0 - std::exp(-lambda * T)) / lambda;
            const double e2 = e_bh * (1.0 - std::exp(-lambda * T)) / lambda;
            const double e3 =
                e_b * e_bh * (1.0 - std::exp(-2.0 * lambda * T)) / (2.0 * lambda);
            value += kappa * kappa * (T - e1 - e2 + e3);
        }
        return value;
    };

    out.empirical_mean.label = "ou-levy-M(T=" + std::to_string(T) + ")";
    out.empirical_mean.sd = sd_mean;
    out.empirical_mean.functional.label = "ou-empirical-mean";
    if (use_simpson) {
        out.empirical_mean.functional.evaluate = [sweep, dt, T](const PointConfiguration& cfg) {
            const std::vector<double> y = sweep(cfg, 0.0);
            return simpson(y, dt) / std::sqrt(T);
        };
    } else {
        out.empirical_mean.functional.evaluate = [linear_exact, T](const PointConfiguration& cfg) {
            return linear_exact(cfg) / std::sqrt(T);
        };
    }

    const double target = std::exp(-lambda * h);
    auto make_quadratic = [&](double shift, double shift_target) {
        if (use_simpson) {
            return std::function<double(const PointConfiguration&)>(
                [sweep, dt, T, shift, shift_target](const PointConfiguration& cfg) {
                    std::vector<double> y = sweep(cfg, 0.0);
                    if (shift > 0.0) {
                        const std::vector<double> ys = sweep(cfg, shift);
                        for (std::size_t i = 0; i < y.size(); ++i) y[i] *= ys[i];
                    } else {
                        for (double& v : y) v *= v;
                    }
                    return std::sqrt(T) * (simpson(y, dt) / T - shift_target);
                });
        }
        return std::function<double(const PointConfiguration&)>(
            [quadratic_exact, T, shift, shift_target](const PointConfiguration& cfg) {
                return std::sqrt(T) * (quadratic_exact(cfg, shift) / T - shift_target);
            });
    };

    out.second_moment.label = "ou-levy-S(T=" + std::to_string(T) + ")";
    out.second_moment.sd = sd_second;
    out.second_moment.functional.label = "ou-second-moment";
    out.second_moment.functional.evaluate = make_quadratic(0.0, 1.0);

    out.shifted_moment.label =
        "ou-levy-V(T=" + std::to_string(T) + ",h=" + std::to_string(h) + ")";
    out.shifted_moment.sd = sd_shift;
    out.shifted_moment.functional.label = "ou-shifted-moment";
    out.shifted_moment.functional.evaluate = make_quadratic(h, target);

    // Chaos kernels; coordinates per point are (time, jump size).
    OuKernelPieces pieces{lambda, T};
    const double inv_sqrt_t = 1.0 / std::sqrt(T);

    Kernel f_mean;
    f_mean.arity = 1;
    f_mean.dim = 2;
    f_mean.symmetric = true;
    f_mean.label = "ou-f-mean";
    f_mean.eval = [pieces, sqrt_2l, lambda, inv_sqrt_t](const double* p) {
        return sqrt_2l / lambda * inv_sqrt_t * p[1] * pieces.w_mean(p[0]);
    };

    Kernel f_second1;
    f_second1.arity = 1;
    f_second1.dim = 2;
    f_second1.symmetric = true;
    f_second1.label = "ou-f-second-1";
    f_second1.eval = [pieces, inv_sqrt_t](const double* p) {
        return inv_sqrt_t * p[1] * p[1] * pieces.w_second(p[0]);
    };

    Kernel f_second2;
    f_second2.arity = 2;
    f_second2.dim = 2;
    f_second2.symmetric = true;
    f_second2.label = "ou-f-second-2";
    f_second2.eval = [lambda, T, inv_sqrt_t](const double* p) {
        const double x1 = p[0], u1 = p[1], x2 = p[2], u2 = p[3];
        if (std::max(x1, x2) > T) return 0.0;
        const double s = x1 + x2;
        const double top = std::exp(lambda * (s - 2.0 * std::max({x1, x2, 0.0})));
        const double tail = std::exp(lambda * (s - 2.0 * T));
        return inv_sqrt_t * u1 * u2 * (top - tail);
    };

    Kernel f_shift1 = scale_kernel(f_second1, target);
    f_shift1.label = "ou-f-shift-1";

    Kernel f_shift2;
    f_shift2.arity = 2;
    f_shift2.dim = 2;
    f_shift2.symmetric = true;
    f_shift2.label = "ou-f-shift-2";
    f_shift2.eval = [lambda, T, h, target, inv_sqrt_t](const double* p) {
        auto half = [&](double x1, double u1, double x2, double u2) {
            if (std::max(x1, x2 - h) > T) return 0.0;
            const double s = x1 + x2;
            const double top = std::exp(lambda * (s - 2.0 * std::max({x1, x2 - h, 0.0})));
            const double tail = std::exp(lambda * (s - 2.0 * T));
            return u1 * u2 * (top - tail);
        };
        const double x1 = p[0], u1 = p[1], x2 = p[2], u2 = p[3];
        return 0.5 * target * inv_sqrt_t * (half(x1, u1, x2, u2) + half(x2, u2, x1, u1));
    };

    ChaosExpansion em;
    em.terms.push_back({1, scale_kernel(f_mean, 1.0 / sd_mean)});
    out.empirical_mean.expansion = em;

    ChaosExpansion es;
    es.terms.push_back({1, scale_kernel(f_second1, 1.0 / sd_second)});
    es.terms.push_back({2, scale_kernel(f_second2, 1.0 / sd_second)});
    out.second_moment.expansion = es;

    ChaosExpansion ev;
    ev.terms.push_back({1, scale_kernel(f_shift1, 1.0 / sd_shift)});
    ev.terms.push_back({2, scale_kernel(f_shift2, 1.0 / sd_shift)});
    out.shifted_moment.expansion = ev;

    (void)spec;
    return out;
}

std::vector<double> simulate_normalized(const Scenario& scenario, int reps, std::uint64_t seed,
                                        int threads, std::uint64_t stream_salt) {
    if (reps < 1) throw DomainError("simulate_normalized: reps >= 1 required");
    std::vector<double> values(static_cast<std::size_t>(reps));
    parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t rep) {
        std::mt19937_64 rng = substream(seed, stream_salt + rep);
        const PointConfiguration cfg = sample_configuration(scenario.control, rng);
        values[rep] = scenario.normalized(cfg);
    });
    return values;
}

RateTable run_rate_study(const std::vector<Scenario>& scenarios, int reps, std::uint64_t seed,
                         int threads) {
    if (scenarios.size() < 3) throw DomainError("run_rate_study: need at least 3 scales");
    if (reps < 1000) throw DomainError("run_rate_study: reps >= 1000 required");
    RateTable table;
    for (std::size_t si = 0; si < scenarios.size(); ++si) {
        const std::uint64_t salt = static_cast<std::uint64_t>(si) << 40;
        SampleSet set;
        set.values = simulate_normalized(scenarios[si], reps, seed, threads, salt);
        set.seed_provenance = "seed=" + std::to_string(seed) + " salt=" + std::to_string(salt);
        const KolmogorovResult kd = kolmogorov_distance(set);
        table.rows.push_back({scenarios[si].scale, kd.distance, kd.stderr_value});
    }
    fit_rate_slope(table);
    return table;
}

bool ConsistencyReport::within(double n_sigma) const {
    return std::fabs(mc_mean - expected_mean) <= n_sigma * mc_mean_se &&
           std::fabs(mc_var - expected_var) <= n_sigma * mc_var_se;
}

ConsistencyReport scenario_consistency(const Scenario& scenario, int reps, std::uint64_t seed,
                                       int threads) {
    std::vector<double> raw(static_cast<std::size_t>(reps));
    parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t rep) {
        std::mt19937_64 rng = substream(seed, rep);
        const PointConfiguration cfg = sample_configuration(scenario.control, rng);
        raw[rep] = scenario.functional(cfg);
    });
    ConsistencyReport rep;
    rep.expected_mean = scenario.mean;
    rep.expected_var = scenario.sd * scenario.sd;
    const double n = static_cast<double>(reps);
    double mean = std::accumulate(raw.begin(), raw.end(), 0.0) / n;
    double m2 = 0.0, m4 = 0.0;
    for (double v : raw) {
        const double c = v - mean;
        m2 += c * c;
        m4 += c * c * c * c;
    }
    m2 /= n;
    m4 /= n;
    rep.mc_mean = mean;
    rep.mc_mean_se = std::sqrt(m2 / n);
    rep.mc_var = m2 * n / (n - 1.0);
    rep.mc_var_se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
    return rep;
}

} // namespace pstein
