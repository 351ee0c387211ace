#pragma once

#include "pstein/geometry.hpp"
#include "pstein/rng.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace pstein {

// One-dimensional density profile on [lo, hi], used to assemble product densities.
struct Profile1D {
    double lo = 0.0;
    double hi = 1.0;
    std::function<double(double)> pdf;       // not necessarily normalized caller-side
    double pdf_max = 1.0;
    std::function<double(std::mt19937_64&)> direct_sampler; // optional; empty -> rejection
    int quadrature_panels = 1; // composite panels for long axes
    std::vector<double> panel_edges; // explicit interior panel boundaries; overrides the count
    std::string label;
};

// Probability density on an axis-aligned box.
class Density {
  public:
    Density() = default;
    Density(Box support, std::function<double(const double*)> pdf, double pdf_max,
            std::function<void(std::mt19937_64&, double*)> direct_sampler = {},
            std::string label = {});

    int dim() const { return support_.dim(); }
    const Box& support() const { return support_; }
    double operator()(const double* x) const { return pdf_(x); }
    double max_value() const { return pdf_max_; }
    const std::string& label() const { return label_; }

    // Expected rejection acceptance rate 1 / (vol * sup p) for a normalized density.
    double rejection_acceptance() const { return 1.0 / (support_.volume() * pdf_max_); }

    // Draws one point into out[0..dim); throws DensityTooPeakedError when the
    // rejection acceptance rate falls below the configured floor.
    void sample(std::mt19937_64& g, double* out) const;

    static constexpr double kMinAcceptanceRate = 1e-6;
    static constexpr long kMaxRejectionAttempts = 50'000'000;

    // Composite-quadrature panel count per axis (1 = a single Gauss-Legendre
    // rule spans the axis). Axes much longer than the integrand's length
    // scale need panels for the node budget to resolve it.
    std::vector<int> quadrature_panels;
    // Optional explicit interior panel boundaries per axis (sorted, strictly
    // inside the support); lets callers pin panels to integrand kinks.
    std::vector<std::vector<double>> panel_edges;

  private:
    Box support_;
    std::function<double(const double*)> pdf_;
    double pdf_max_ = 1.0;
    std::function<void(std::mt19937_64&, double*)> direct_sampler_;
    std::string label_;
};

Density uniform_density(const Box& box);
Density product_density(std::vector<Profile1D> profiles, std::string label = {});

} // namespace pstein
