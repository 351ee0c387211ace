#pragma once

#include "pstein/errors.hpp"

#include <vector>

namespace pstein {

// Axis-aligned box in R^d.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    Box() = default;
    Box(std::vector<double> l, std::vector<double> h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo.size() != hi.size() || lo.empty()) {
            throw DomainError("Box: lo/hi dimension mismatch");
        }
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (!(lo[i] < hi[i])) {
                throw DomainError("Box: needs positive volume on every axis");
            }
        }
    }

    static Box unit(int dim) {
        return Box(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
    }

    int dim() const { return static_cast<int>(lo.size()); }

    double volume() const {
        double v = 1.0;
        for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
        return v;
    }

    bool contains(const double* x) const {
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        }
        return true;
    }
};

} // namespace pstein
