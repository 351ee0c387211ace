#include "pstein/diagnostics.hpp"

#include "pstein/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pstein {

KolmogorovResult kolmogorov_distance(const SampleSet& samples) {
    const std::size_t n = samples.values.size();
    if (n == 0) throw EmptySampleError("kolmogorov_distance: empty sample");
    std::vector<double> sorted = samples.values;
    for (double v : sorted) {
        if (!std::isfinite(v)) {
            throw NumericalDomainError("kolmogorov_distance: non-finite sample value");
        }
    }
    std::sort(sorted.begin(), sorted.end());
    KolmogorovResult out;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = normal_cdf(sorted[i]);
        const double up = (static_cast<double>(i) + 1.0) * inv_n - phi;
        const double down = phi - static_cast<double>(i) * inv_n;
        const double dev = std::max(up, down);
        if (dev > out.distance) {
            out.distance = dev;
            out.argmax_x = sorted[i];
        }
    }
    out.dkw_band = std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(n)));
    const double phi_star = normal_cdf(out.argmax_x);
    out.stderr_value = std::sqrt(std::max(phi_star * (1.0 - phi_star), 1e-12) * inv_n);
    return out;
}

void fit_rate_slope(RateTable& table) {
    if (table.rows.size() < 3) {
        throw DomainError("fit_rate_slope: need at least 3 rows");
    }
    double prev = 0.0;
    std::vector<double> lx, ly;
    for (const auto& row : table.rows) {
        if (!(row.scale > 0.0) || !(row.distance > 0.0)) {
            throw DomainError("fit_rate_slope: scales and distances must be positive");
        }
        if (row.scale <= prev) {
            throw DomainError("fit_rate_slope: scales must be strictly increasing");
        }
        prev = row.scale;
        lx.push_back(std::log(row.scale));
        ly.push_back(std::log(row.distance));
    }
    const std::size_t n = lx.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    table.slope = sxy / sxx;
    const double intercept = my - table.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = ly[i] - intercept - table.slope * lx[i];
        rss += resid * resid;
    }
    table.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
}

std::string rate_table_csv(const RateTable& table) {
    std::ostringstream os;
    os.precision(17);
    os << "scale,distance,stderr\n";
    for (const auto& row : table.rows) {
        os << row.scale << "," << row.distance << "," << row.stderr_value << "\n";
    }
    os << "# slope=" << table.slope << " stderr=" << table.slope_stderr << "\n";
    return os.str();
}

} // namespace pstein
