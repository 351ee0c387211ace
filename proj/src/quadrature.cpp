#include "pstein/quadrature.hpp"

#include "pstein/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace pstein {

namespace {

GaussLegendreRule compute_rule(int k) {
    GaussLegendreRule rule;
    rule.nodes.resize(k);
    rule.weights.resize(k);
    const double pi = 3.14159265358979323846;
    // Newton iteration per root, standard symmetric construction.
    for (int i = 0; i < (k + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (k + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < k; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = k * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[k - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[k - 1 - i] = w;
    }
    if (k % 2 == 1) rule.nodes[k / 2] = 0.0;
    return rule;
}

std::mutex g_rule_mutex;
std::map<int, GaussLegendreRule> g_rules;

} // namespace

const GaussLegendreRule& gauss_legendre(int k) {
    if (k < 1 || k > 4096) {
        throw DomainError("gauss_legendre: order out of range");
    }
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = g_rules.find(k);
    if (it == g_rules.end()) {
        it = g_rules.emplace(k, compute_rule(k)).first;
    }
    return it->second;
}

AxisRule mapped_rule(int k, double lo, double hi) {
    const GaussLegendreRule& base = gauss_legendre(k);
    AxisRule out;
    out.nodes.resize(k);
    out.weights.resize(k);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int i = 0; i < k; ++i) {
        out.nodes[i] = mid + half * base.nodes[i];
        out.weights[i] = half * base.weights[i];
    }
    return out;
}

} // namespace pstein
