#include "pstein/point_process.hpp"

#include "pstein/errors.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

namespace pstein {

namespace {

bool same_point(const double* a, const double* b, int dim) {
    // Bitwise equality: the control is atomless, so a true tie is a bug.
    return std::memcmp(a, b, sizeof(double) * static_cast<std::size_t>(dim)) == 0;
}

void reject_duplicates(const std::vector<double>& flat, int dim) {
    const std::size_t n = flat.size() / static_cast<std::size_t>(dim);
    if (n < 2) return;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(flat.data() + a * dim, flat.data() + (a + 1) * dim,
                                            flat.data() + b * dim, flat.data() + (b + 1) * dim);
    });
    for (std::size_t i = 1; i < n; ++i) {
        if (same_point(flat.data() + order[i - 1] * dim, flat.data() + order[i] * dim, dim)) {
            throw DomainError("PointConfiguration: exact duplicate point");
        }
    }
}

} // namespace

PointConfiguration::PointConfiguration(int dim, std::vector<double> flat_coords) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw DomainError("PointConfiguration: unsupported dimension");
    if (flat_coords.size() % static_cast<std::size_t>(dim) != 0) {
        throw DomainError("PointConfiguration: coordinate count not divisible by dim");
    }
    reject_duplicates(flat_coords, dim);
    base_count_ = flat_coords.size() / static_cast<std::size_t>(dim);
    base_ = std::make_shared<const std::vector<double>>(std::move(flat_coords));
}

PointConfiguration PointConfiguration::with(const double* z) const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (same_point(point(i), z, dim_)) {
            throw DomainError("PointConfiguration: exact duplicate point in with()");
        }
    }
    PointConfiguration out = *this;
    if (out.extra_count_ == kMaxExtraPoints) {
        // Flatten into new base storage; rare (only deep difference nesting).
        std::vector<double> flat;
        flat.reserve((size() + 1) * dim_);
        for (std::size_t i = 0; i < size(); ++i) {
            flat.insert(flat.end(), point(i), point(i) + dim_);
        }
        out.base_ = std::make_shared<const std::vector<double>>(std::move(flat));
        out.base_count_ = size();
        out.extra_count_ = 0;
    }
    std::memcpy(out.extra_.data() + out.extra_count_ * dim_, z,
                sizeof(double) * static_cast<std::size_t>(dim_));
    ++out.extra_count_;
    return out;
}

PointConfiguration sample_configuration(const ControlMeasure& control, std::mt19937_64& rng) {
    const long n_points = poisson_count(control.intensity, rng);
    const int d = control.dim();
    std::vector<double> flat(static_cast<std::size_t>(n_points) * d);
    for (long i = 0; i < n_points; ++i) {
        control.density.sample(rng, flat.data() + static_cast<std::size_t>(i) * d);
    }
    return PointConfiguration(d, std::move(flat));
}

PointConfiguration sample_configuration(const ControlMeasure& control, std::uint64_t seed) {
    std::mt19937_64 rng = substream(seed, 0);
    return sample_configuration(control, rng);
}

double add_one_cost(const Functional& F, const ControlMeasure& control,
                    const PointConfiguration& cfg, const double* z) {
    if (!control.support().contains(z)) {
        throw DomainError("add_one_cost: point outside the control measure support");
    }
    return F(cfg.with(z)) - F(cfg);
}

double second_difference(const Functional& F, const ControlMeasure& control,
                         const PointConfiguration& cfg, const double* z1, const double* z2) {
    if (!control.support().contains(z1) || !control.support().contains(z2)) {
        throw DomainError("second_difference: point outside the control measure support");
    }
    const PointConfiguration cfg1 = cfg.with(z1);
    return F(cfg1.with(z2)) - F(cfg1) - F(cfg.with(z2)) + F(cfg);
}

} // namespace pstein
