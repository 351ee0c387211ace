#include "pstein/integrate.hpp"

#include "pstein/errors.hpp"

#include <cmath>

namespace pstein {

PointGrid::PointGrid(const ControlMeasure& control, int nodes_per_axis) {
    if (nodes_per_axis < 1) throw DomainError("PointGrid: budget >= 1 required");
    dim_ = control.dim();
    const Box& box = control.support();
    // Composite rule per axis: `nodes_per_axis` Gauss-Legendre points on each
    // of the axis's panels (a single panel unless the density says otherwise;
    // explicit edges win over a uniform panel count).
    std::vector<AxisRule> axes(static_cast<std::size_t>(dim_));
    for (int a = 0; a < dim_; ++a) {
        std::vector<double> edges{box.lo[a]};
        const auto& explicit_edges = control.density.panel_edges;
        if (a < static_cast<int>(explicit_edges.size()) && !explicit_edges[a].empty()) {
            for (double e : explicit_edges[a]) {
                if (e <= edges.back() || e >= box.hi[a]) {
                    throw DomainError("PointGrid: panel edges must be sorted interior points");
                }
                edges.push_back(e);
            }
        } else {
            int panels = 1;
            if (a < static_cast<int>(control.density.quadrature_panels.size())) {
                panels = std::max(1, control.density.quadrature_panels[a]);
            }
            const double width = (box.hi[a] - box.lo[a]) / panels;
            for (int p = 1; p < panels; ++p) edges.push_back(box.lo[a] + p * width);
        }
        edges.push_back(box.hi[a]);
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const AxisRule piece = mapped_rule(nodes_per_axis, edges[p], edges[p + 1]);
            axes[a].nodes.insert(axes[a].nodes.end(), piece.nodes.begin(), piece.nodes.end());
            axes[a].weights.insert(axes[a].weights.end(), piece.weights.begin(),
                                   piece.weights.end());
        }
    }
    count_ = 1;
    for (int a = 0; a < dim_; ++a) count_ *= static_cast<int>(axes[a].nodes.size());
    coords_.resize(static_cast<std::size_t>(count_) * dim_);
    weights_.resize(count_);
    std::vector<int> idx(dim_, 0);
    for (int i = 0; i < count_; ++i) {
        double w = 1.0;
        double* pt = coords_.data() + static_cast<std::size_t>(i) * dim_;
        for (int a = 0; a < dim_; ++a) {
            pt[a] = axes[a].nodes[idx[a]];
            w *= axes[a].weights[idx[a]];
        }
        const double p = control.density(pt);
        if (!std::isfinite(p) || p < 0.0) {
            throw NumericalDomainError("PointGrid: density non-finite or negative at node");
        }
        weights_[i] = w * p;
        int a = dim_ - 1;
        while (a >= 0 && ++idx[a] == static_cast<int>(axes[a].nodes.size())) {
            idx[a] = 0;
            --a;
        }
    }
}

namespace {

double quadrature_pass(const std::function<double(const double*)>& g,
                       const ControlMeasure& control, int arity, int nodes_per_axis) {
    PointGrid grid(control, nodes_per_axis);
    bool bad = false;
    const double value = tensor_integral_prob(grid, arity, [&](const double* x) {
        const double v = g(x);
        if (!std::isfinite(v)) bad = true;
        return v;
    });
    if (bad) {
        throw NumericalDomainError("integrate: integrand non-finite at a quadrature node");
    }
    return value;
}

IntegrateResult integrate_mc(const std::function<double(const double*)>& g,
                             const ControlMeasure& control, int arity,
                             const IntegrationSpec& spec) {
    // Blocked sampling: each fixed-size block draws from its own substream, so
    // results are independent of how blocks might be scheduled.
    constexpr int kBlock = 4096;
    const int n_samples = spec.budget;
    const int d = control.dim();
    double sum = 0.0, sumsq = 0.0;
    CoordBuffer coords;
    int drawn = 0;
    for (std::uint64_t block = 0; drawn < n_samples; ++block) {
        std::mt19937_64 rng = substream(spec.seed, block);
        const int in_block = std::min(kBlock, n_samples - drawn);
        for (int i = 0; i < in_block; ++i) {
            for (int j = 0; j < arity; ++j) {
                control.density.sample(rng, coords.data() + j * d);
            }
            const double v = g(coords.data());
            if (!std::isfinite(v)) {
                throw NumericalDomainError("integrate: integrand non-finite at a sample");
            }
            sum += v;
            sumsq += v * v;
        }
        drawn += in_block;
    }
    const double mean = sum / n_samples;
    const double var = std::max(0.0, sumsq / n_samples - mean * mean);
    const double scale = std::pow(control.intensity, arity);
    IntegrateResult out;
    out.estimate = scale * mean;
    out.stderr_value = scale * std::sqrt(var / n_samples);
    return out;
}

} // namespace

IntegrateResult integrate(const std::function<double(const double*)>& g,
                          const ControlMeasure& control, int arity,
                          const IntegrationSpec& spec) {
    if (arity < 1) throw DomainError("integrate: arity >= 1 required");
    if (spec.budget < 1) throw DomainError("integrate: budget >= 1 required");
    if (!(spec.tolerance > 0.0)) throw DomainError("integrate: tolerance > 0 required");
    if (spec.method == IntegrationMethod::MonteCarlo) {
        return integrate_mc(g, control, arity, spec);
    }
    const int total_dims = arity * control.dim();
    if (total_dims > kTensorDimCeiling) {
        throw MethodUnsupportedError("integrate: tensor quadrature limited to " +
                                     std::to_string(kTensorDimCeiling) +
                                     " coupled dimensions; use Monte Carlo");
    }
    const double scale = std::pow(control.intensity, arity);
    IntegrateResult out;
    const double fine = quadrature_pass(g, control, arity, spec.budget);
    out.estimate = scale * fine;
    if (spec.budget >= 8) {
        const double coarse = quadrature_pass(g, control, arity, spec.budget / 2);
        out.residual = std::fabs(scale * (fine - coarse));
    }
    return out;
}

double l2_norm_squared(const Kernel& f, const ControlMeasure& control,
                       const IntegrationSpec& spec) {
    KernelFn inner = f.eval;
    auto sq = [inner](const double* x) {
        const double v = inner(x);
        return v * v;
    };
    return integrate(sq, control, f.arity, spec).estimate;
}

double l2_norm(const Kernel& f, const ControlMeasure& control, const IntegrationSpec& spec) {
    return std::sqrt(std::max(0.0, l2_norm_squared(f, control, spec)));
}

void check_probability_mass(const ControlMeasure& control, const IntegrationSpec& spec,
                            double tol) {
    ControlMeasure unit(control.density, 1.0);
    auto one = [](const double*) { return 1.0; };
    const double mass = integrate(one, unit, 1, spec).estimate;
    if (std::fabs(mass - 1.0) > tol) {
        throw DomainError("ControlMeasure: density does not integrate to 1 (got " +
                          std::to_string(mass) + ")");
    }
}

ControlMeasure uniform_control(const Box& box, double intensity) {
    return ControlMeasure(uniform_density(box), intensity);
}

} // namespace pstein
