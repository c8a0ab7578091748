#pragma once

#include <vector>

#include "geoprandtl/core/field.hpp"

namespace geoprandtl::lp {

/// theta(t), lambda, delta and the gamma of psi entering the theta equation.
/// The radius multiplier is Phi(t, xi) = (delta - lambda theta) (1 + |xi|).
struct AnalyticityState {
    double theta = 0.0;
    double lambda = 1.0;
    double delta = 1.0;
    double gamma_time = 2.0;

    double radius() const { return delta - lambda * theta; }
    bool lost() const { return radius() <= 0.0; }
};

/// Exponents Phi(xi_m) per half-spectrum mode. Throws NumericalError
/// "radius weight overflow" if the largest exceeds 700.
std::vector<double> radius_exponents(const AnalyticityState& state, double L, int nx);

Field2D apply_radius_weight(const Field2D& u, const AnalyticityState& state);
XSignal apply_radius_weight(const XSignal& u, const AnalyticityState& state);
void apply_radius_weight(std::vector<Complex>& half_spectrum, const AnalyticityState& state, double L, int nx);

/// The norms entering the theta equation, all taken of the radius-weighted fields.
struct ThetaNorms {
    double dy_w_half = 0.0;  ///< ||d_y w_Phi|| in B^{1/2,0}_psi
    double U_half = 0.0;     ///< ||U_Phi|| in B^{1/2}
    double w_one = 0.0;      ///< ||w_Phi|| in B^{1,0}_psi
    double w_half = 0.0;     ///< ||w_Phi|| in B^{1/2,0}_psi
    double U_one = 0.0;      ///< ||U_Phi|| in B^1
};

/// d(theta)/dt at time t.
double theta_rate(double t, double gamma_time, const ThetaNorms& n);
/// Lagged explicit Euler step theta += dt * theta_rate(t, ...).
AnalyticityState advance_theta(const AnalyticityState& state, double dt, double t, const ThetaNorms& n);

/// Zeroes half-spectrum coefficients below rel_floor times the peak magnitude.
void clip_noise_floor(std::vector<Complex>& half_spectrum, double rel_floor = 1e-13);

/// Least-squares slope r of -log ||u_hat(xi_m, .)||_{L^2_y} against |xi_m| over the modes
/// above 1e-13 of the peak (Nyquist excluded). A p log(1 + |xi_m|) term joins the fit
/// when a nested F-test (F > 20) finds it significant. Throws NumericalError
/// "insufficient spectral content" with fewer than 4 usable modes.
double estimate_analyticity_radius(const Field2D& u);
double estimate_analyticity_radius(const XSignal& u);

}  // namespace geoprandtl::lp
