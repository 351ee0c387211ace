#pragma once

#include "pstein/stein.hpp"

#include <string>
#include <vector>

namespace pstein {

struct SampleSet {
    std::vector<double> values;
    std::string seed_provenance;
};

struct KolmogorovResult {
    double distance = 0.0;
    double dkw_band = 0.0;   // 99% DKW band sqrt(ln(2/0.01) / (2N))
    double argmax_x = 0.0;   // sample value achieving the sup
    double stderr_value = 0.0; // pointwise CLT scale at the sup location
};

// sup_x |F_hat(x) - Phi(x)| via the sorted-sample formula.
KolmogorovResult kolmogorov_distance(const SampleSet& samples);

struct RateRow {
    double scale = 0.0;
    double distance = 0.0;
    double stderr_value = 0.0;
};

struct RateTable {
    std::vector<RateRow> rows;
    double slope = 0.0;
    double slope_stderr = 0.0;
};

// Least-squares slope of log(distance) against log(scale); needs >= 3 rows
// with strictly increasing positive scales and positive distances.
void fit_rate_slope(RateTable& table);

std::string rate_table_csv(const RateTable& table);

} // namespace pstein
