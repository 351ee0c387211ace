#pragma once

#include "pstein/control_measure.hpp"
#include "pstein/kernel.hpp"
#include "pstein/quadrature.hpp"
#include "pstein/rng.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace pstein {

enum class IntegrationMethod { TensorQuadrature, MonteCarlo };

// For tensor quadrature `budget` is the Gauss-Legendre node count per scalar
// axis (so that nested partial integrals share node sets exactly); for Monte
// Carlo it is the total sample count.
struct IntegrationSpec {
    IntegrationMethod method = IntegrationMethod::TensorQuadrature;
    int budget = 64;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;

    static IntegrationSpec quadrature(int nodes_per_axis = 64) {
        return IntegrationSpec{IntegrationMethod::TensorQuadrature, nodes_per_axis, 0, 1e-9};
    }
    static IntegrationSpec monte_carlo(int samples, std::uint64_t seed) {
        return IntegrationSpec{IntegrationMethod::MonteCarlo, samples, seed, 1e-9};
    }
};

// Coupled scalar dimensions a single tensor-quadrature call will handle.
constexpr int kTensorDimCeiling = 4;

struct IntegrateResult {
    double estimate = 0.0;
    double stderr_value = 0.0; // 0 under quadrature
    double residual = 0.0;     // quadrature refinement gap; 0 under MC
};

// Integration nodes for one point of the control measure's box: the tensor
// grid of per-axis Gauss-Legendre nodes, with density already folded into the
// weight. Shared by every integral so partial integrals nest consistently.
class PointGrid {
  public:
    PointGrid(const ControlMeasure& control, int nodes_per_axis);

    int dim() const { return dim_; }
    int size() const { return count_; }
    const double* coords(int i) const { return coords_.data() + static_cast<std::size_t>(i) * dim_; }
    double weight(int i) const { return weights_[i]; } // axis weights * p(point)

  private:
    int dim_ = 1;
    int count_ = 0;
    std::vector<double> coords_;
    std::vector<double> weights_;
};

// m-fold tensor integral against the probability measure p dx (no intensity
// factor). The integrand is inlined through the template parameter.
template <class G>
double tensor_integral_prob(const PointGrid& grid, int m, G&& g) {
    const int d = grid.dim();
    CoordBuffer coords;
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    double total = 0.0;
    const int K = grid.size();
    for (;;) {
        double w = 1.0;
        for (int j = 0; j < m; ++j) {
            w *= grid.weight(idx[j]);
            const double* pt = grid.coords(idx[j]);
            for (int c = 0; c < d; ++c) coords[j * d + c] = pt[c];
        }
        total += w * g(coords.data());
        int j = m - 1;
        while (j >= 0 && ++idx[j] == K) {
            idx[j] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return total;
}

// One integration pass against mu_n^m for a fixed node budget.
IntegrateResult integrate(const std::function<double(const double*)>& g,
                          const ControlMeasure& control, int arity, const IntegrationSpec& spec);

inline IntegrateResult integrate(const Kernel& f, const ControlMeasure& control,
                                 const IntegrationSpec& spec) {
    return integrate(f.eval, control, f.arity, spec);
}

// L2 norm of f against mu_n^arity.
double l2_norm(const Kernel& f, const ControlMeasure& control, const IntegrationSpec& spec);

double l2_norm_squared(const Kernel& f, const ControlMeasure& control,
                       const IntegrationSpec& spec);

// Verifies that the density integrates to one; throws DomainError otherwise.
void check_probability_mass(const ControlMeasure& control, const IntegrationSpec& spec,
                            double tol = 1e-6);

} // namespace pstein
