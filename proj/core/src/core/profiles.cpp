#include "geoprandtl/core/profiles.hpp"

#include <cmath>

namespace geoprandtl {

double bump_profile(double y, double width) {
    const double s = y / width;
    return s * s * std::exp(1.0 - s * s);
}

double even_analytic_profile(double x, double L, double radius) {
    const double q = std::exp(-radius / L);
    return (1.0 - q) * (1.0 - q) / (1.0 - 2.0 * q * std::cos(x / L) + q * q);
}

double odd_analytic_profile(double x, double L, double radius) {
    const double q = std::exp(-radius / L);
    return L * (1.0 - q) * (1.0 - q) * std::sin(x / L) / (1.0 - 2.0 * q * std::cos(x / L) + q * q);
}

}  // namespace geoprandtl
