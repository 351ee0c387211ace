#pragma once

#include "pstein/integrate.hpp"
#include "pstein/point_process.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace pstein {

struct ChaosTerm {
    int order = 1;
    Kernel kernel;
};

// F = mean + sum_i I_{q_i}(f^(i)), orders strictly increasing.
struct ChaosExpansion {
    double mean = 0.0;
    std::vector<ChaosTerm> terms;

    void validate() const;
    int max_order() const;
};

// Highest order the pathwise inclusion-exclusion evaluator supports.
constexpr int kMaxChaosOrder = 3;

// Pathwise evaluator for the compensated multiple integral I_q(f). All inner
// (marginal) integrals run over the one shared PointGrid, so the derivative
// route below reproduces the add-one-cost route to machine precision.
class MultipleIntegral {
  public:
    MultipleIntegral(Kernel f, int order, const ControlMeasure& control,
                     const IntegrationSpec& spec);

    int order() const { return order_; }
    const Kernel& kernel() const { return f_; }

    // I_q(f) evaluated on one realization.
    double value(const PointConfiguration& cfg) const;

    // q * I_{q-1}(f(z, .)) evaluated on the same realization; equals the
    // add-one-cost of `value` at z exactly.
    double derivative(const double* z, const PointConfiguration& cfg) const;

    // I_{q-1}(f(z, .)): the chaos representation of -D_z L^{-1} I_q(f).
    double lowered(const double* z, const PointConfiguration& cfg) const;

  private:
    double marginal1(const double* z) const;                    // int f(z,y)   dmu
    double marginal2(const double* z1, const double* z2) const; // int f(a,b,y) dmu
    double double_marginal(const double* z) const;              // int f(z,y1,y2) dmu^2

    Kernel f_;
    int order_ = 1;
    double intensity_ = 1.0;
    std::shared_ptr<const PointGrid> grid_;
    double compensator_ = 0.0; // int f dmu_n^q
};

double evaluate_multiple_integral(const Kernel& f, int order, const PointConfiguration& cfg,
                                  const ControlMeasure& control, const IntegrationSpec& spec);

// Sum over ordered distinct k-tuples of configuration points; 0 when |cfg| < k.
double ustat_evaluate(const Kernel& h, int k, const PointConfiguration& cfg);

// E U_n = int h dmu_n^k (multivariate Mecke mean).
double ustat_mean(const Kernel& h, int k, const ControlMeasure& control,
                  const IntegrationSpec& spec);

// Hoeffding/chaos kernel g^(i)(z_1..z_i) = C(k,i) int h(z, y) dmu_n^{k-i}.
Kernel hoeffding_kernel(const Kernel& h, int k, int i, const ControlMeasure& control,
                        const IntegrationSpec& spec);

// var F = sum_i q_i! * ||f^(i)||^2.
double chaos_variance(const ChaosExpansion& expansion, const ControlMeasure& control,
                      const IntegrationSpec& spec);

// True iff |int h(x, y) p(x) dx| <= tol for every grid point y (flat coords).
bool check_degeneracy(const Kernel& h, const ControlMeasure& control,
                      const std::vector<double>& grid_flat, double tol,
                      const IntegrationSpec& spec);

// Tensor grid of per-axis points across the support, flat coords.
std::vector<double> degeneracy_grid(const ControlMeasure& control, int per_axis = 17);

// Functional wrapper around the pathwise expansion value.
Functional expansion_functional(const ChaosExpansion& expansion, const ControlMeasure& control,
                                const IntegrationSpec& spec);

double factorial(int n);
double binomial(int n, int k);

} // namespace pstein
