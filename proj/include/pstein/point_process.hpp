#pragma once

#include "pstein/control_measure.hpp"
#include "pstein/rng.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace pstein {

// One realization of the Poisson measure: a finite list of points in R^dim.
// Immutable; `with(z)` produces an extended view sharing the base storage so
// add-one-cost evaluation never copies the configuration.
class PointConfiguration {
  public:
    PointConfiguration() = default;
    PointConfiguration(int dim, std::vector<double> flat_coords);

    int dim() const { return dim_; }
    std::size_t size() const { return base_count_ + extra_count_; }
    bool empty() const { return size() == 0; }

    const double* point(std::size_t i) const {
        return i < base_count_ ? base_->data() + i * dim_
                               : extra_.data() + (i - base_count_) * dim_;
    }

    // Extended view with one more point; rejects exact duplicates.
    PointConfiguration with(const double* z) const;

  private:
    static constexpr int kMaxExtraPoints = 4;
    static constexpr int kMaxDim = 4;

    int dim_ = 1;
    std::shared_ptr<const std::vector<double>> base_;
    std::size_t base_count_ = 0;
    std::array<double, kMaxExtraPoints * kMaxDim> extra_{};
    std::size_t extra_count_ = 0;
};

struct Functional {
    std::string label;
    std::function<double(const PointConfiguration&)> evaluate;

    double operator()(const PointConfiguration& cfg) const { return evaluate(cfg); }
};

// Draws N ~ Poisson(intensity) then N i.i.d. points with density p.
PointConfiguration sample_configuration(const ControlMeasure& control, std::mt19937_64& rng);
PointConfiguration sample_configuration(const ControlMeasure& control, std::uint64_t seed);

// D_z F = F(cfg + z) - F(cfg); z must lie in the support.
double add_one_cost(const Functional& F, const ControlMeasure& control,
                    const PointConfiguration& cfg, const double* z);

// D_{z2} D_{z1} F = F(cfg+z1+z2) - F(cfg+z1) - F(cfg+z2) + F(cfg).
double second_difference(const Functional& F, const ControlMeasure& control,
                         const PointConfiguration& cfg, const double* z1, const double* z2);

} // namespace pstein
