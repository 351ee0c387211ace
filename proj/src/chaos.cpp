#include "pstein/chaos.hpp"

#include "pstein/errors.hpp"

#include <cmath>
#include <cstring>

namespace pstein {

double factorial(int n) {
    double v = 1.0;
    for (int i = 2; i <= n; ++i) v *= i;
    return v;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

void ChaosExpansion::validate() const {
    int prev = 0;
    for (const auto& t : terms) {
        if (t.order <= prev) {
            throw DomainError("ChaosExpansion: orders must be strictly increasing");
        }
        if (t.kernel.arity != t.order) {
            throw DomainError("ChaosExpansion: kernel arity must equal its order");
        }
        prev = t.order;
    }
}

int ChaosExpansion::max_order() const {
    int q = 0;
    for (const auto& t : terms) q = std::max(q, t.order);
    return q;
}

MultipleIntegral::MultipleIntegral(Kernel f, int order, const ControlMeasure& control,
                                   const IntegrationSpec& spec)
    : f_(std::move(f)), order_(order), intensity_(control.intensity) {
    if (order_ < 1 || order_ > kMaxChaosOrder) {
        throw MethodUnsupportedError("MultipleIntegral: order must be in 1.." +
                                     std::to_string(kMaxChaosOrder));
    }
    if (f_.arity != order_) throw DomainError("MultipleIntegral: kernel arity != order");
    if (order_ > 1 && !f_.symmetric) {
        throw DomainError("MultipleIntegral: kernel must be symmetric");
    }
    const int inner_dims = order_ * control.dim();
    if (inner_dims > kTensorDimCeiling) {
        throw MethodUnsupportedError(
            "MultipleIntegral: compensating integral exceeds the tensor quadrature ceiling");
    }
    grid_ = std::make_shared<const PointGrid>(control, spec.budget);
    const double prob = tensor_integral_prob(*grid_, order_, f_.eval);
    compensator_ = std::pow(intensity_, order_) * prob;
}

double MultipleIntegral::marginal1(const double* z) const {
    const int d = f_.dim;
    CoordBuffer buf;
    std::memcpy(buf.data(), z, sizeof(double) * static_cast<std::size_t>((order_ - 1) * d));
    double total = 0.0;
    for (int i = 0; i < grid_->size(); ++i) {
        std::memcpy(buf.data() + (order_ - 1) * d, grid_->coords(i),
                    sizeof(double) * static_cast<std::size_t>(d));
        total += grid_->weight(i) * f_.eval(buf.data());
    }
    return intensity_ * total;
}

double MultipleIntegral::marginal2(const double* z1, const double* z2) const {
    const int d = f_.dim;
    CoordBuffer buf;
    std::memcpy(buf.data(), z1, sizeof(double) * static_cast<std::size_t>(d));
    std::memcpy(buf.data() + d, z2, sizeof(double) * static_cast<std::size_t>(d));
    double total = 0.0;
    for (int i = 0; i < grid_->size(); ++i) {
        std::memcpy(buf.data() + 2 * d, grid_->coords(i),
                    sizeof(double) * static_cast<std::size_t>(d));
        total += grid_->weight(i) * f_.eval(buf.data());
    }
    return intensity_ * total;
}

double MultipleIntegral::double_marginal(const double* z) const {
    const int d = f_.dim;
    CoordBuffer buf;
    std::memcpy(buf.data(), z, sizeof(double) * static_cast<std::size_t>(d));
    double total = 0.0;
    for (int i = 0; i < grid_->size(); ++i) {
        std::memcpy(buf.data() + d, grid_->coords(i),
                    sizeof(double) * static_cast<std::size_t>(d));
        const double wi = grid_->weight(i);
        for (int j = 0; j < grid_->size(); ++j) {
            std::memcpy(buf.data() + 2 * d, grid_->coords(j),
                        sizeof(double) * static_cast<std::size_t>(d));
            total += wi * grid_->weight(j) * f_.eval(buf.data());
        }
    }
    return intensity_ * intensity_ * total;
}

double MultipleIntegral::value(const PointConfiguration& cfg) const {
    const int d = f_.dim;
    const std::size_t n = cfg.size();
    CoordBuffer buf;
    if (order_ == 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += f_.eval(cfg.point(i));
        return s - compensator_;
    }
    if (order_ == 2) {
        double pairs = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::memcpy(buf.data(), cfg.point(i), sizeof(double) * static_cast<std::size_t>(d));
            for (std::size_t j = i + 1; j < n; ++j) {
                std::memcpy(buf.data() + d, cfg.point(j),
                            sizeof(double) * static_cast<std::size_t>(d));
                pairs += f_.eval(buf.data());
            }
        }
        double marg = 0.0;
        for (std::size_t i = 0; i < n; ++i) marg += marginal1(cfg.point(i));
        return 2.0 * pairs - 2.0 * marg + compensator_;
    }
    // order 3: -G0 + 3 sum G1 - 3 sum_{ordered pairs} G2 + sum_{ordered triples} f
    double triples = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::memcpy(buf.data(), cfg.point(i), sizeof(double) * static_cast<std::size_t>(d));
        for (std::size_t j = i + 1; j < n; ++j) {
            std::memcpy(buf.data() + d, cfg.point(j),
                        sizeof(double) * static_cast<std::size_t>(d));
            for (std::size_t k = j + 1; k < n; ++k) {
                std::memcpy(buf.data() + 2 * d, cfg.point(k),
                            sizeof(double) * static_cast<std::size_t>(d));
                triples += f_.eval(buf.data());
            }
        }
    }
    double pair_marg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pair_marg += marginal2(cfg.point(i), cfg.point(j));
        }
    }
    double single_marg = 0.0;
    for (std::size_t i = 0; i < n; ++i) single_marg += double_marginal(cfg.point(i));
    return 6.0 * triples - 6.0 * pair_marg + 3.0 * single_marg - compensator_;
}

double MultipleIntegral::lowered(const double* z, const PointConfiguration& cfg) const {
    const int d = f_.dim;
    const std::size_t n = cfg.size();
    CoordBuffer buf;
    if (order_ == 1) {
        return f_.eval(z);
    }
    if (order_ == 2) {
        std::memcpy(buf.data(), z, sizeof(double) * static_cast<std::size_t>(d));
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::memcpy(buf.data() + d, cfg.point(i),
                        sizeof(double) * static_cast<std::size_t>(d));
            s += f_.eval(buf.data());
        }
        return s - marginal1(z);
    }
    // I_2(f(z, .)) built from the same marginal functions.
    std::memcpy(buf.data(), z, sizeof(double) * static_cast<std::size_t>(d));
    double pairs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::memcpy(buf.data() + d, cfg.point(i), sizeof(double) * static_cast<std::size_t>(d));
        for (std::size_t j = i + 1; j < n; ++j) {
            std::memcpy(buf.data() + 2 * d, cfg.point(j),
                        sizeof(double) * static_cast<std::size_t>(d));
            pairs += f_.eval(buf.data());
        }
    }
    double marg = 0.0;
    for (std::size_t i = 0; i < n; ++i) marg += marginal2(z, cfg.point(i));
    return 2.0 * pairs - 2.0 * marg + double_marginal(z);
}

double MultipleIntegral::derivative(const double* z, const PointConfiguration& cfg) const {
    return order_ * lowered(z, cfg);
}

double evaluate_multiple_integral(const Kernel& f, int order, const PointConfiguration& cfg,
                                  const ControlMeasure& control, const IntegrationSpec& spec) {
    return MultipleIntegral(f, order, control, spec).value(cfg);
}

double ustat_evaluate(const Kernel& h, int k, const PointConfiguration& cfg) {
    if (k < 1 || k > 4) throw MethodUnsupportedError("ustat_evaluate: order must be in 1..4");
    if (k > 1 && !h.symmetric) throw DomainError("ustat_evaluate: kernel must be symmetric");
    const std::size_t n = cfg.size();
    if (n < static_cast<std::size_t>(k)) return 0.0;
    const int d = h.dim;
    CoordBuffer buf;
    double sum = 0.0;
    // Sum over increasing combinations; the ordered-tuple sum is k! times it.
    auto load = [&](int slot, std::size_t i) {
        std::memcpy(buf.data() + slot * d, cfg.point(i),
                    sizeof(double) * static_cast<std::size_t>(d));
    };
    if (k == 1) {
        for (std::size_t i = 0; i < n; ++i) sum += h.eval(cfg.point(i));
        return sum;
    }
    if (k == 2) {
        for (std::size_t i = 0; i < n; ++i) {
            load(0, i);
            for (std::size_t j = i + 1; j < n; ++j) {
                load(1, j);
                sum += h.eval(buf.data());
            }
        }
        return 2.0 * sum;
    }
    if (k == 3) {
        for (std::size_t i = 0; i < n; ++i) {
            load(0, i);
            for (std::size_t j = i + 1; j < n; ++j) {
                load(1, j);
                for (std::size_t l = j + 1; l < n; ++l) {
                    load(2, l);
                    sum += h.eval(buf.data());
                }
            }
        }
        return 6.0 * sum;
    }
    for (std::size_t i = 0; i < n; ++i) {
        load(0, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            load(1, j);
            for (std::size_t l = j + 1; l < n; ++l) {
                load(2, l);
                for (std::size_t m = l + 1; m < n; ++m) {
                    load(3, m);
                    sum += h.eval(buf.data());
                }
            }
        }
    }
    return 24.0 * sum;
}

double ustat_mean(const Kernel& h, int k, const ControlMeasure& control,
                  const IntegrationSpec& spec) {
    if (h.arity != k) throw DomainError("ustat_mean: kernel arity != k");
    return integrate(h.eval, control, k, spec).estimate;
}

Kernel hoeffding_kernel(const Kernel& h, int k, int i, const ControlMeasure& control,
                        const IntegrationSpec& spec) {
    if (i < 1 || i > k) throw IndexError("hoeffding_kernel: level must satisfy 1 <= i <= k");
    if (h.arity != k) throw DomainError("hoeffding_kernel: kernel arity != k");
    if (i == k) return h; // empty integral, C(k,k) = 1
    const int rest = k - i;
    const int d = h.dim;
    if (rest * d > kTensorDimCeiling) {
        throw MethodUnsupportedError("hoeffding_kernel: inner integral dimension too high");
    }
    auto grid = std::make_shared<const PointGrid>(control, spec.budget);
    const double coeff = binomial(k, i) * std::pow(control.intensity, rest);
    Kernel g;
    g.arity = i;
    g.dim = d;
    g.symmetric = h.symmetric;
    g.nonnegative = h.nonnegative;
    g.label = h.label.empty() ? "hoeffding" : h.label + ":g(" + std::to_string(i) + ")";
    KernelFn hf = h.eval;
    g.eval = [hf, grid, coeff, i, rest, d](const double* z) {
        CoordBuffer buf;
        std::memcpy(buf.data(), z, sizeof(double) * static_cast<std::size_t>(i * d));
        double total = 0.0;
        if (rest == 1) {
            for (int a = 0; a < grid->size(); ++a) {
                std::memcpy(buf.data() + i * d, grid->coords(a),
                            sizeof(double) * static_cast<std::size_t>(d));
                total += grid->weight(a) * hf(buf.data());
            }
        } else {
            std::vector<int> idx(static_cast<std::size_t>(rest), 0);
            const int K = grid->size();
            for (;;) {
                double w = 1.0;
                for (int s = 0; s < rest; ++s) {
                    w *= grid->weight(idx[s]);
                    std::memcpy(buf.data() + (i + s) * d, grid->coords(idx[s]),
                                sizeof(double) * static_cast<std::size_t>(d));
                }
                total += w * hf(buf.data());
                int s = rest - 1;
                while (s >= 0 && ++idx[s] == K) {
                    idx[s] = 0;
                    --s;
                }
                if (s < 0) break;
            }
        }
        return coeff * total;
    };
    return g;
}

double chaos_variance(const ChaosExpansion& expansion, const ControlMeasure& control,
                      const IntegrationSpec& spec) {
    expansion.validate();
    double var = 0.0;
    for (const auto& t : expansion.terms) {
        var += factorial(t.order) * l2_norm_squared(t.kernel, control, spec);
    }
    return var;
}

bool check_degeneracy(const Kernel& h, const ControlMeasure& control,
                      const std::vector<double>& grid_flat, double tol,
                      const IntegrationSpec& spec) {
    if (h.arity != 2) throw DomainError("check_degeneracy: kernel arity must be 2");
    const int d = h.dim;
    if (grid_flat.empty() || grid_flat.size() % static_cast<std::size_t>(d) != 0) {
        throw DomainError("check_degeneracy: bad grid");
    }
    PointGrid grid(control, spec.budget);
    CoordBuffer buf;
    const std::size_t n_pts = grid_flat.size() / static_cast<std::size_t>(d);
    for (std::size_t i = 0; i < n_pts; ++i) {
        std::memcpy(buf.data() + d, grid_flat.data() + i * d,
                    sizeof(double) * static_cast<std::size_t>(d));
        double marg = 0.0;
        for (int a = 0; a < grid.size(); ++a) {
            std::memcpy(buf.data(), grid.coords(a), sizeof(double) * static_cast<std::size_t>(d));
            marg += grid.weight(a) * h.eval(buf.data());
        }
        // Marginal against the probability measure p dx (mu_1), as in the
        // complete-degeneracy definition.
        if (std::fabs(marg) > tol) return false;
    }
    return true;
}

std::vector<double> degeneracy_grid(const ControlMeasure& control, int per_axis) {
    const Box& box = control.support();
    const int d = box.dim();
    std::vector<std::vector<double>> axes(d);
    for (int a = 0; a < d; ++a) {
        for (int i = 0; i < per_axis; ++i) {
            const double t = (i + 0.5) / per_axis;
            axes[a].push_back(box.lo[a] + t * (box.hi[a] - box.lo[a]));
        }
    }
    std::vector<double> flat;
    std::vector<int> idx(d, 0);
    for (;;) {
        for (int a = 0; a < d; ++a) flat.push_back(axes[a][idx[a]]);
        int a = d - 1;
        while (a >= 0 && ++idx[a] == per_axis) {
            idx[a] = 0;
            --a;
        }
        if (a < 0) break;
    }
    return flat;
}

Functional expansion_functional(const ChaosExpansion& expansion, const ControlMeasure& control,
                                const IntegrationSpec& spec) {
    expansion.validate();
    auto evaluators = std::make_shared<std::vector<MultipleIntegral>>();
    for (const auto& t : expansion.terms) {
        evaluators->emplace_back(t.kernel, t.order, control, spec);
    }
    const double mean = expansion.mean;
    Functional F;
    F.label = "chaos-expansion";
    F.evaluate = [evaluators, mean](const PointConfiguration& cfg) {
        double v = mean;
        for (const auto& ev : *evaluators) v += ev.value(cfg);
        return v;
    };
    return F;
}

} // namespace pstein
