#include "pstein/density.hpp"

#include "pstein/errors.hpp"

#include <cmath>
#include <utility>

namespace pstein {

Density::Density(Box support, std::function<double(const double*)> pdf, double pdf_max,
                 std::function<void(std::mt19937_64&, double*)> direct_sampler, std::string label)
    : support_(std::move(support)),
      pdf_(std::move(pdf)),
      pdf_max_(pdf_max),
      direct_sampler_(std::move(direct_sampler)),
      label_(std::move(label)) {
    if (!(pdf_max_ > 0.0) || !std::isfinite(pdf_max_)) {
        throw DomainError("Density: pdf_max must be positive and finite");
    }
}

void Density::sample(std::mt19937_64& g, double* out) const {
    if (direct_sampler_) {
        direct_sampler_(g, out);
        return;
    }
    if (rejection_acceptance() < kMinAcceptanceRate) {
        throw DensityTooPeakedError("Density: rejection acceptance rate below floor for '" +
                                    label_ + "'");
    }
    const int d = dim();
    for (long attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
        for (int i = 0; i < d; ++i) {
            out[i] = uniform_in(g, support_.lo[i], support_.hi[i]);
        }
        const double p = pdf_(out);
        if (!std::isfinite(p) || p < 0.0) {
            throw NumericalDomainError("Density: pdf returned a non-finite or negative value");
        }
        if (uniform01(g) * pdf_max_ <= p) {
            return;
        }
    }
    throw DensityTooPeakedError("Density: rejection sampling exhausted attempt budget");
}

Density uniform_density(const Box& box) {
    const double inv_vol = 1.0 / box.volume();
    Box support = box;
    auto sampler = [support](std::mt19937_64& g, double* out) {
        for (int i = 0; i < support.dim(); ++i) {
            out[i] = uniform_in(g, support.lo[i], support.hi[i]);
        }
    };
    return Density(box, [inv_vol](const double*) { return inv_vol; }, inv_vol, sampler,
                   "uniform");
}

Density product_density(std::vector<Profile1D> profiles, std::string label) {
    if (profiles.empty()) {
        throw DomainError("product_density: no profiles");
    }
    std::vector<double> lo, hi;
    double max_prod = 1.0;
    bool all_direct = true;
    for (const auto& pr : profiles) {
        lo.push_back(pr.lo);
        hi.push_back(pr.hi);
        max_prod *= pr.pdf_max;
        if (!pr.direct_sampler) all_direct = false;
    }
    Box box(lo, hi);
    std::vector<int> panels;
    std::vector<std::vector<double>> edges;
    for (const auto& pr : profiles) {
        panels.push_back(std::max(1, pr.quadrature_panels));
        edges.push_back(pr.panel_edges);
    }
    auto shared = std::make_shared<std::vector<Profile1D>>(std::move(profiles));
    auto pdf = [shared](const double* x) {
        double p = 1.0;
        for (std::size_t i = 0; i < shared->size(); ++i) p *= (*shared)[i].pdf(x[i]);
        return p;
    };
    std::function<void(std::mt19937_64&, double*)> sampler;
    if (all_direct) {
        sampler = [shared](std::mt19937_64& g, double* out) {
            for (std::size_t i = 0; i < shared->size(); ++i) {
                out[i] = (*shared)[i].direct_sampler(g);
            }
        };
    }
    Density out(box, pdf, max_prod, sampler, std::move(label));
    out.quadrature_panels = std::move(panels);
    out.panel_edges = std::move(edges);
    return out;
}

} // namespace pstein
