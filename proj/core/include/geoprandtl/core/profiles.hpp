#pragma once

namespace geoprandtl {

/// Wall-attached bump (y/l)^2 exp(1 - (y/l)^2): zero at y = 0, peak 1 at y = l.
double bump_profile(double y, double width);

/// Even analytic periodic profile with Fourier coefficients q^{|m|}, q = exp(-radius/L),
/// normalized to peak 1 at x = 0: (1-q)^2 / (1 - 2q cos(x/L) + q^2).
double even_analytic_profile(double x, double L, double radius);

/// Odd analytic periodic profile 2 sum_{m>=1} q^m sin(m x/L), scaled to unit slope at x = 0.
double odd_analytic_profile(double x, double L, double radius);

}  // namespace geoprandtl
