#include "geoprandtl/lp/partition.hpp"

#include <cmath>
#include <string>

#include "geoprandtl/core/error.hpp"

namespace geoprandtl::lp {

namespace {

constexpr double inner_edge = 3.0 / 4.0;
constexpr double outer_edge = 4.0 / 3.0;

double bump_h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double smooth_ramp(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = bump_h(t);
    const double b = bump_h(1.0 - t);
    return a / (a + b);
}

double smooth_ramp_derivative(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = bump_h(t);
    const double b = bump_h(1.0 - t);
    const double da = a / (t * t);
    const double db = b / ((1.0 - t) * (1.0 - t));
    return (da * b + a * db) / ((a + b) * (a + b));
}

double low_pass(double tau) {
    return 1.0 - smooth_ramp((std::abs(tau) - inner_edge) / (outer_edge - inner_edge));
}

double ring(double tau) { return low_pass(0.5 * tau) - low_pass(tau); }

DyadicPartition::DyadicPartition(double L, int nx) : L_(L), nx_(nx) {
    const int nm = modes();
    std::vector<double> chi(static_cast<std::size_t>(nm));
    for (int m = 0; m < nm; ++m) chi[m] = low_pass(frequency(m));
    table_.push_back(std::move(chi));

    const double xi_max = frequency(nm - 1);
    for (int k = 0; std::ldexp(inner_edge, k) < xi_max; ++k) {
        std::vector<double> r(static_cast<std::size_t>(nm));
        bool any = false;
        for (int m = 0; m < nm; ++m) {
            r[m] = ring(std::ldexp(frequency(m), -k));
            any = any || r[m] != 0.0;
        }
        if (!any) break;
        table_.push_back(std::move(r));
        kmax_ = k;
    }
}

double DyadicPartition::multiplier(int k, int m) const {
    if (k < -1 || k > kmax_) return 0.0;
    return table_[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(m)];
}

std::span<const double> DyadicPartition::block(int k) const {
    return table_.at(static_cast<std::size_t>(k + 1));
}

DyadicPartition build_partition(double L, int nx) {
    DyadicPartition p(L, nx);
    if (p.block_count() < 3)
        throw ConfigError("dyadic partition: only " + std::to_string(p.block_count()) +
                          " resolvable blocks (need >= 3); increase Nx or decrease L");
    return p;
}

DyadicPartition build_partition(const Grid& grid) { return build_partition(grid.L, grid.nx); }

}  // namespace geoprandtl::lp
