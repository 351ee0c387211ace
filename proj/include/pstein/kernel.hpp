#pragma once

#include "pstein/errors.hpp"

#include <array>
#include <cstring>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace pstein {

// Evaluation callback reading arity*dim contiguous coordinates.
using KernelFn = std::function<double(const double*)>;

// Symmetric real function of `arity` points in R^dim. Evaluation is flat:
// point j occupies coordinates [j*dim, (j+1)*dim).
struct Kernel {
    int arity = 1;
    int dim = 1;
    bool symmetric = false;
    bool nonnegative = false;
    bool approx_symmetric = false; // set by sampled symmetrization of high arity
    KernelFn eval;
    std::string label;

    double operator()(const double* x) const { return eval(x); }
    int flat_size() const { return arity * dim; }
};

// Scratch buffer large enough for any kernel this library composes.
constexpr int kMaxFlatCoords = 48;
using CoordBuffer = std::array<double, kMaxFlatCoords>;

Kernel constant_kernel(double value, int arity, int dim);

// f(x_1..x_q) = prod_j profile(x_j) for a shared 1-d profile (dim = 1).
Kernel tensor_power_kernel(std::function<double(double)> profile, int arity,
                           bool nonnegative = false, std::string label = {});

// Tensor product of distinct 1-d profiles; not symmetric unless all equal.
Kernel tensor_product_kernel(std::vector<std::function<double(double)>> profiles,
                             std::string label = {});

// sqrt(2) * cos(2*pi*j*x) on [0,1]; orthonormal family for the uniform density.
std::function<double(double)> cosine_profile(int frequency);

// de Jong cosine family: h_m(x,y) = m^{-1/2} sum_{j<=m} phi_j(x) phi_j(y).
Kernel cosine_family_kernel(int m);

// h(x,y) = 1(|x-y| <= radius), points in R^dim with Euclidean distance.
Kernel indicator_distance_kernel(double radius, int dim);

// Pointwise combinations (same arity/dim required).
Kernel scale_kernel(const Kernel& f, double factor);
Kernel add_kernels(const Kernel& a, const Kernel& b, double ca = 1.0, double cb = 1.0);
Kernel multiply_kernels(const Kernel& a, const Kernel& b);
Kernel square_kernel(const Kernel& f);

// Fixes the first `prefix_points` points of f; result has lower arity.
Kernel fix_prefix(const Kernel& f, const double* prefix, int prefix_points);

} // namespace pstein
