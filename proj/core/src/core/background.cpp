#include "geoprandtl/core/background.hpp"

#include <cmath>
#include <numbers>

namespace geoprandtl {

namespace {

double width(double t) { return std::sqrt(4.0 * (t + 1.0)); }

}  // namespace

double eval_phi(double t, double y) { return std::erf(y / width(t)); }

double eval_phi_y(double t, double y) {
    return std::exp(-y * y / (4.0 * (t + 1.0))) / std::sqrt(std::numbers::pi * (t + 1.0));
}

double eval_phi_t(double t, double y) {
    return -y / (2.0 * (t + 1.0)) * eval_phi_y(t, y);
}

double integral_one_minus_phi_above(double t, double y) {
    const double a = width(t);
    const double z = y / a;
    return a * (std::exp(-z * z) / std::sqrt(std::numbers::pi) - z * std::erfc(z));
}

double integral_phi_below(double t, double y) {
    const double a = width(t);
    const double z = y / a;
    return y * std::erf(z) + a / std::sqrt(std::numbers::pi) * (std::exp(-z * z) - 1.0);
}

Background eval_background(double t, double U_value, double U_x_value, double y) {
    const double phi = eval_phi(t, y);
    return {U_value * phi, U_x_value * phi};
}

}  // namespace geoprandtl
