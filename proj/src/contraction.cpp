#include "pstein/contraction.hpp"

#include "pstein/errors.hpp"
#include "pstein/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <numeric>

namespace pstein {

Kernel contract(const Kernel& f1, const Kernel& f2, ContractionIndex idx,
                const ControlMeasure& control, const IntegrationSpec& spec) {
    if (f1.dim != f2.dim) throw DomainError("contract: dimension mismatch");
    const int q1 = f1.arity, q2 = f2.arity, r = idx.r, l = idx.l;
    if (l < 0 || r < l || r > std::min(q1, q2)) {
        throw IndexError("contract: need 0 <= l <= r <= min(q1, q2)");
    }
    if (q1 > 1 && !f1.symmetric) throw DomainError("contract: f1 must be symmetric");
    if (q2 > 1 && !f2.symmetric) throw DomainError("contract: f2 must be symmetric");
    const int d = f1.dim;
    const int shared = r - l;   // gamma block
    const int free1 = q1 - r;   // t block
    const int free2 = q2 - r;   // s block

    Kernel out;
    out.arity = shared + free1 + free2;
    out.dim = d;
    out.nonnegative = f1.nonnegative && f2.nonnegative;
    out.symmetric = out.arity <= 1;
    out.label = "contract(r=" + std::to_string(r) + ",l=" + std::to_string(l) + ")";
    KernelFn e1 = f1.eval, e2 = f2.eval;

    if (l == 0) {
        out.eval = [e1, e2, d, shared, free1, free2](const double* x) {
            CoordBuffer b1, b2;
            const std::size_t shared_len = sizeof(double) * static_cast<std::size_t>(shared * d);
            std::memcpy(b1.data(), x, shared_len);
            std::memcpy(b2.data(), x, shared_len);
            std::memcpy(b1.data() + shared * d, x + shared * d,
                        sizeof(double) * static_cast<std::size_t>(free1 * d));
            std::memcpy(b2.data() + shared * d, x + (shared + free1) * d,
                        sizeof(double) * static_cast<std::size_t>(free2 * d));
            return e1(b1.data()) * e2(b2.data());
        };
        return out;
    }

    auto grid = std::make_shared<const PointGrid>(control, spec.budget);
    const double scale = std::pow(control.intensity, l);
    out.eval = [e1, e2, grid, scale, d, l, shared, free1, free2](const double* x) {
        CoordBuffer b1, b2;
        const std::size_t shared_len = sizeof(double) * static_cast<std::size_t>(shared * d);
        std::memcpy(b1.data() + l * d, x, shared_len);
        std::memcpy(b2.data() + l * d, x, shared_len);
        std::memcpy(b1.data() + (l + shared) * d, x + shared * d,
                    sizeof(double) * static_cast<std::size_t>(free1 * d));
        std::memcpy(b2.data() + (l + shared) * d, x + (shared + free1) * d,
                    sizeof(double) * static_cast<std::size_t>(free2 * d));
        const int K = grid->size();
        double total = 0.0;
        if (l == 1) {
            for (int a = 0; a < K; ++a) {
                const std::size_t dlen = sizeof(double) * static_cast<std::size_t>(d);
                std::memcpy(b1.data(), grid->coords(a), dlen);
                std::memcpy(b2.data(), grid->coords(a), dlen);
                total += grid->weight(a) * e1(b1.data()) * e2(b2.data());
            }
        } else {
            std::vector<int> gi(static_cast<std::size_t>(l), 0);
            for (;;) {
                double w = 1.0;
                for (int s = 0; s < l; ++s) {
                    const std::size_t dlen = sizeof(double) * static_cast<std::size_t>(d);
                    std::memcpy(b1.data() + s * d, grid->coords(gi[s]), dlen);
                    std::memcpy(b2.data() + s * d, grid->coords(gi[s]), dlen);
                    w *= grid->weight(gi[s]);
                }
                total += w * e1(b1.data()) * e2(b2.data());
                int s = l - 1;
                while (s >= 0 && ++gi[s] == K) {
                    gi[s] = 0;
                    --s;
                }
                if (s < 0) break;
            }
        }
        return scale * total;
    };
    return out;
}

Kernel symmetrize(const Kernel& f) {
    if (f.symmetric || f.arity <= 1) return f;
    const int m = f.arity;
    const int d = f.dim;
    auto perms = std::make_shared<std::vector<std::vector<int>>>();
    bool approx = false;
    if (m <= 6) {
        std::vector<int> p(static_cast<std::size_t>(m));
        std::iota(p.begin(), p.end(), 0);
        do {
            perms->push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    } else {
        // Fixed deterministic sample of 720 permutations.
        std::mt19937_64 rng = substream(0xC0FFEEULL, static_cast<std::uint64_t>(m));
        std::vector<int> p(static_cast<std::size_t>(m));
        std::iota(p.begin(), p.end(), 0);
        for (int s = 0; s < 720; ++s) {
            for (int i = m - 1; i > 0; --i) {
                const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
                std::swap(p[i], p[j]);
            }
            perms->push_back(p);
        }
        approx = true;
    }
    const double inv = 1.0 / static_cast<double>(perms->size());
    Kernel out = f;
    out.symmetric = true;
    out.approx_symmetric = approx;
    out.label = f.label.empty() ? "symmetrized" : "sym(" + f.label + ")";
    KernelFn e = f.eval;
    out.eval = [e, perms, inv, m, d](const double* x) {
        CoordBuffer buf;
        double total = 0.0;
        for (const auto& p : *perms) {
            for (int j = 0; j < m; ++j) {
                std::memcpy(buf.data() + j * d, x + p[j] * d,
                            sizeof(double) * static_cast<std::size_t>(d));
            }
            total += e(buf.data());
        }
        return inv * total;
    };
    return out;
}

namespace {

// Grid-cache fast path for order-2 kernels with l >= 1: every such norm is a
// function of the kernel-value matrices H[z][y] = f(z, y) on the shared grid,
// which costs K^2 kernel evaluations instead of K^2 * K_inner.
double norm_order2_cached(const Kernel& f1, const Kernel& f2, ContractionIndex idx,
                          const ControlMeasure& control, const IntegrationSpec& spec) {
    const PointGrid grid(control, spec.budget);
    const int K = grid.size();
    const int d = f1.dim;
    auto fill = [&](const Kernel& f) {
        std::vector<double> h(static_cast<std::size_t>(K) * K);
        CoordBuffer buf;
        for (int a = 0; a < K; ++a) {
            std::memcpy(buf.data(), grid.coords(a), sizeof(double) * static_cast<std::size_t>(d));
            for (int b = 0; b < K; ++b) {
                std::memcpy(buf.data() + d, grid.coords(b),
                            sizeof(double) * static_cast<std::size_t>(d));
                const double v = f.eval(buf.data());
                if (!std::isfinite(v)) {
                    throw NumericalDomainError("contraction_norm: kernel non-finite at node");
                }
                h[static_cast<std::size_t>(a) * K + b] = v;
            }
        }
        return h;
    };
    const std::vector<double> h1 = fill(f1);
    const std::vector<double> h2 = fill(f2);
    const double n = control.intensity;
    if (idx.r == 1 && idx.l == 1) {
        // c(a, b) = n sum_z w_z f1(z, a) f2(z, b); norm over mu_n^2.
        double total = 0.0;
        for (int a = 0; a < K; ++a) {
            for (int b = 0; b < K; ++b) {
                double g = 0.0;
                for (int z = 0; z < K; ++z) {
                    g += grid.weight(z) * h1[static_cast<std::size_t>(z) * K + a] *
                         h2[static_cast<std::size_t>(z) * K + b];
                }
                total += grid.weight(a) * grid.weight(b) * g * g;
            }
        }
        return n * n * std::sqrt(std::max(0.0, total));
    }
    if (idx.r == 2 && idx.l == 1) {
        // c(a) = n sum_z w_z f1(z, a) f2(z, a); norm over mu_n.
        double total = 0.0;
        for (int a = 0; a < K; ++a) {
            double g = 0.0;
            for (int z = 0; z < K; ++z) {
                g += grid.weight(z) * h1[static_cast<std::size_t>(z) * K + a] *
                     h2[static_cast<std::size_t>(z) * K + a];
            }
            total += grid.weight(a) * g * g;
        }
        return n * std::sqrt(n * std::max(0.0, total));
    }
    // r = 2, l = 2: the scalar <f1, f2> against mu_n^2.
    double g = 0.0;
    for (int a = 0; a < K; ++a) {
        for (int b = 0; b < K; ++b) {
            g += grid.weight(a) * grid.weight(b) * h1[static_cast<std::size_t>(a) * K + b] *
                 h2[static_cast<std::size_t>(a) * K + b];
        }
    }
    return n * n * std::fabs(g);
}

} // namespace

double contraction_norm(const Kernel& f1, const Kernel& f2, ContractionIndex idx,
                        const ControlMeasure& control, const IntegrationSpec& spec) {
    if (f1.arity == 2 && f2.arity == 2 && idx.l >= 1 &&
        spec.method == IntegrationMethod::TensorQuadrature &&
        2 * f1.dim <= kTensorDimCeiling) {
        if (idx.l > idx.r || idx.r > 2) throw IndexError("contraction_norm: invalid index");
        return norm_order2_cached(f1, f2, idx, control, spec);
    }
    const Kernel c = contract(f1, f2, idx, control, spec);
    if (c.arity == 0) {
        // Fully contracted: a scalar, e.g. f *_q^q f = <f, f>.
        CoordBuffer dummy{};
        return std::fabs(c.eval(dummy.data()));
    }
    return l2_norm(c, control, spec);
}

} // namespace pstein
