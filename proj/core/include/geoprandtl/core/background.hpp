#pragma once

namespace geoprandtl {

/// phi(t, y) = erf(y / sqrt(4(t+1))), the heat-equation profile lifting the far-field outflow.
double eval_phi(double t, double y);
/// d(phi)/dy = exp(-y^2/(4(t+1))) / sqrt(pi (t+1)).
double eval_phi_y(double t, double y);
/// d(phi)/dt = d^2(phi)/dy^2.
double eval_phi_t(double t, double y);

/// int_y^inf (1 - phi(t, s)) ds in closed form.
double integral_one_minus_phi_above(double t, double y);
/// int_0^y phi(t, s) ds in closed form.
double integral_phi_below(double t, double y);

struct Background {
    double us;
    double us_x;
};

/// u^s = U phi and its x-derivative U_x phi at one point.
Background eval_background(double t, double U_value, double U_x_value, double y);

}  // namespace geoprandtl
