#pragma once

#include "pstein/integrate.hpp"

namespace pstein {

// Contraction f1 *_r^l f2: identify r arguments across f1 and f2, integrate
// l of them against mu_n^l. Index validity: 0 <= l <= r <= min(q1, q2).
struct ContractionIndex {
    int r = 0;
    int l = 0;
};

// Argument layout of the contracted kernel: the r-l shared-but-unintegrated
// variables first, then f1's free variables, then f2's.
Kernel contract(const Kernel& f1, const Kernel& f2, ContractionIndex idx,
                const ControlMeasure& control, const IntegrationSpec& spec);

// Canonical symmetrization: exact permutation average for arity <= 6, a fixed
// deterministic sample of 720 permutations above (kernel is then flagged
// approx_symmetric).
Kernel symmetrize(const Kernel& f);

// ||f1 *_r^l f2|| against mu_n^{q1+q2-r-l}.
double contraction_norm(const Kernel& f1, const Kernel& f2, ContractionIndex idx,
                        const ControlMeasure& control, const IntegrationSpec& spec);

} // namespace pstein
