#pragma once

#include "pstein/density.hpp"

namespace pstein {

// Control measure mu_n = intensity * p(x) dx on the density's support box.
// Every integral against mu_n^m is computed as intensity^m times the integral
// against the probability measure p dx, so intensity rescaling is exact.
struct ControlMeasure {
    Density density;
    double intensity = 1.0;

    ControlMeasure() = default;
    ControlMeasure(Density d, double n) : density(std::move(d)), intensity(n) {
        if (!(intensity > 0.0)) {
            throw DomainError("ControlMeasure: intensity must be strictly positive");
        }
    }

    int dim() const { return density.dim(); }
    const Box& support() const { return density.support(); }
    double total_mass() const { return intensity; }
};

ControlMeasure uniform_control(const Box& box, double intensity);

inline ControlMeasure unit_uniform_control(double intensity) {
    return uniform_control(Box::unit(1), intensity);
}

} // namespace pstein
