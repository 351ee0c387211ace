#pragma once

#include <vector>

namespace pstein {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Returns the k-point rule; computed once per order and cached.
const GaussLegendreRule& gauss_legendre(int k);

// Nodes/weights mapped to [lo, hi].
struct AxisRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

AxisRule mapped_rule(int k, double lo, double hi);

} // namespace pstein
