#pragma once

#include <span>
#include <vector>

#include "geoprandtl/core/grid.hpp"

namespace geoprandtl::lp {

/// C-infinity ramp: 0 for t <= 0, 1 for t >= 1, built from h(t) = exp(-1/t).
double smooth_ramp(double t);
/// Derivative of smooth_ramp; its maximum is 2, attained at t = 1/2.
double smooth_ramp_derivative(double t);

/// Low-pass chi: 1 on |tau| <= 3/4, 0 on |tau| >= 4/3.
double low_pass(double tau);
/// Ring function chi(tau/2) - chi(tau), supported in 3/4 <= |tau| <= 8/3.
double ring(double tau);

/// Dyadic blocks Delta_k, k = -1..kmax, tabulated on the half-spectrum frequencies
/// xi_m = m / L, m = 0..nx/2. Block -1 is the low-pass chi(|xi|); block k >= 0 is
/// ring(2^-k |xi|). Blocks with no support on the resolvable band are dropped.
class DyadicPartition {
public:
    DyadicPartition(double L, int nx);

    int kmin() const { return -1; }
    int kmax() const { return kmax_; }
    int block_count() const { return kmax_ + 2; }
    double L() const { return L_; }
    int nx() const { return nx_; }
    int modes() const { return nx_ / 2 + 1; }
    double frequency(int m) const { return m / L_; }

    /// Multiplier of block k at mode m; 0 for k outside [-1, kmax].
    double multiplier(int k, int m) const;
    std::span<const double> block(int k) const;

private:
    double L_;
    int nx_;
    int kmax_ = -1;
    std::vector<std::vector<double>> table_;
};

/// Throws ConfigError if the band holds fewer than 3 dyadic blocks.
DyadicPartition build_partition(const Grid& grid);
DyadicPartition build_partition(double L, int nx);

}  // namespace geoprandtl::lp
