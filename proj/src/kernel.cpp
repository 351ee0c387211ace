#include "pstein/kernel.hpp"

#include <cmath>

namespace pstein {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

void check_same_shape(const Kernel& a, const Kernel& b, const char* what) {
    if (a.arity != b.arity || a.dim != b.dim) {
        throw DomainError(std::string(what) + ": arity/dim mismatch");
    }
}
} // namespace

Kernel constant_kernel(double value, int arity, int dim) {
    Kernel k;
    k.arity = arity;
    k.dim = dim;
    k.symmetric = true;
    k.nonnegative = value >= 0.0;
    k.eval = [value](const double*) { return value; };
    k.label = "constant";
    return k;
}

Kernel tensor_power_kernel(std::function<double(double)> profile, int arity, bool nonnegative,
                           std::string label) {
    Kernel k;
    k.arity = arity;
    k.dim = 1;
    k.symmetric = true;
    k.nonnegative = nonnegative;
    k.eval = [profile, arity](const double* x) {
        double v = 1.0;
        for (int j = 0; j < arity; ++j) v *= profile(x[j]);
        return v;
    };
    k.label = std::move(label);
    return k;
}

Kernel tensor_product_kernel(std::vector<std::function<double(double)>> profiles,
                             std::string label) {
    Kernel k;
    k.arity = static_cast<int>(profiles.size());
    k.dim = 1;
    k.symmetric = false;
    auto shared = std::make_shared<std::vector<std::function<double(double)>>>(std::move(profiles));
    k.eval = [shared](const double* x) {
        double v = 1.0;
        for (std::size_t j = 0; j < shared->size(); ++j) v *= (*shared)[j](x[j]);
        return v;
    };
    k.label = std::move(label);
    return k;
}

std::function<double(double)> cosine_profile(int frequency) {
    const double sqrt2 = std::sqrt(2.0);
    const double omega = kTwoPi * frequency;
    return [sqrt2, omega](double x) { return sqrt2 * std::cos(omega * x); };
}

Kernel cosine_family_kernel(int m) {
    if (m < 1) throw DomainError("cosine_family_kernel: m >= 1 required");
    Kernel k;
    k.arity = 2;
    k.dim = 1;
    k.symmetric = true;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    k.eval = [m, scale](const double* x) {
        double s = 0.0;
        for (int j = 1; j <= m; ++j) {
            const double w = kTwoPi * j;
            s += 2.0 * std::cos(w * x[0]) * std::cos(w * x[1]);
        }
        return scale * s;
    };
    k.label = "cosine-family(m=" + std::to_string(m) + ")";
    return k;
}

Kernel indicator_distance_kernel(double radius, int dim) {
    if (!(radius > 0.0)) throw DomainError("indicator_distance_kernel: radius > 0 required");
    Kernel k;
    k.arity = 2;
    k.dim = dim;
    k.symmetric = true;
    k.nonnegative = true;
    const double r2 = radius * radius;
    k.eval = [r2, dim](const double* x) {
        double d2 = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double diff = x[i] - x[dim + i];
            d2 += diff * diff;
        }
        return d2 <= r2 ? 1.0 : 0.0;
    };
    k.label = "indicator-distance(r=" + std::to_string(radius) + ")";
    return k;
}

Kernel scale_kernel(const Kernel& f, double factor) {
    Kernel k = f;
    KernelFn inner = f.eval;
    k.nonnegative = f.nonnegative && factor >= 0.0;
    k.eval = [inner, factor](const double* x) { return factor * inner(x); };
    return k;
}

Kernel add_kernels(const Kernel& a, const Kernel& b, double ca, double cb) {
    check_same_shape(a, b, "add_kernels");
    Kernel k;
    k.arity = a.arity;
    k.dim = a.dim;
    k.symmetric = a.symmetric && b.symmetric;
    KernelFn fa = a.eval, fb = b.eval;
    k.eval = [fa, fb, ca, cb](const double* x) { return ca * fa(x) + cb * fb(x); };
    return k;
}

Kernel multiply_kernels(const Kernel& a, const Kernel& b) {
    check_same_shape(a, b, "multiply_kernels");
    Kernel k;
    k.arity = a.arity;
    k.dim = a.dim;
    k.symmetric = a.symmetric && b.symmetric;
    k.nonnegative = a.nonnegative && b.nonnegative;
    KernelFn fa = a.eval, fb = b.eval;
    k.eval = [fa, fb](const double* x) { return fa(x) * fb(x); };
    return k;
}

Kernel square_kernel(const Kernel& f) {
    Kernel k = f;
    KernelFn inner = f.eval;
    k.nonnegative = true;
    k.eval = [inner](const double* x) {
        const double v = inner(x);
        return v * v;
    };
    k.label = f.label.empty() ? "square" : f.label + "^2";
    return k;
}

Kernel fix_prefix(const Kernel& f, const double* prefix, int prefix_points) {
    if (prefix_points < 0 || prefix_points > f.arity) {
        throw IndexError("fix_prefix: prefix size out of range");
    }
    Kernel k;
    k.arity = f.arity - prefix_points;
    k.dim = f.dim;
    k.symmetric = k.arity <= 1 ? true : f.symmetric;
    k.nonnegative = f.nonnegative;
    const int pre_len = prefix_points * f.dim;
    const int rest_len = k.arity * f.dim;
    std::vector<double> fixed(prefix, prefix + pre_len);
    KernelFn inner = f.eval;
    k.eval = [inner, fixed, pre_len, rest_len](const double* x) {
        CoordBuffer buf;
        std::memcpy(buf.data(), fixed.data(), sizeof(double) * fixed.size());
        std::memcpy(buf.data() + pre_len, x, sizeof(double) * rest_len);
        return inner(buf.data());
    };
    return k;
}

} // namespace pstein
