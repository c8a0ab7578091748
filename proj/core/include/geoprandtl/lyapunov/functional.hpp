#pragma once

#include <array>

#include "geoprandtl/core/field.hpp"
#include "geoprandtl/lyapunov/weight.hpp"

namespace geoprandtl::lyapunov {

/// G = int_0^{Ymax} rho w (trapezoid, panels split at A, M, B).
double functional_G(const RhoWeight& rho, const YProfile& w);
/// Bound on the part of G lost to truncation: int_{Ymax}^inf rho times the largest |w| of the top two nodes.
double functional_G_tail_bound(const RhoWeight& rho, const YProfile& w);

struct LyapunovTerms {
    /// J1..J7 (index 0..6).
    std::array<double, 7> J{};
    /// Integration-by-parts remainder at y = Ymax on the truncated domain.
    double boundary = 0.0;
    double sum() const;
};

/// J1 = 2 int rho w^2, J2 = -1/2 int rho'' P^2 (P = d_y^{-1} w), J3 = U~ int y rho' w,
/// J4 = 3 U~ int rho w, J5 = int (int_0^y rho) w, J6 = int rho'' w, J7 = -rho'(0) U~,
/// plus jump terms from any rho' discontinuity at A or B.
LyapunovTerms lyapunov_terms(const RhoWeight& rho, const YProfile& w, double Utilde);

struct GrowthCheck {
    double rhs = 0.0;
    bool holds = false;
};

/// rhs = growth_constant G^2 - Utilde_sup (3 + C_f) G; holds when dGdt >= rhs - 1e-3 max(1, |rhs|).
GrowthCheck check_growth_inequality(const RhoWeight& rho, double G, double dGdt, double Utilde_sup);

/// Initial size of G forcing blowup before T; 0 when Utilde_sup = 0.
double blowup_threshold(const RhoWeight& rho, double Utilde_sup, double T);

/// Blowup time of dG/dt = c G^2 - kappa G, kappa = Utilde_sup (3 + C_f); +inf if it never blows up.
/// Throws std::invalid_argument when G0 <= 0.
double ode_bound(const RhoWeight& rho, double G0, double Utilde_sup);

/// Solution of the comparison equation above at time t (+inf past its blowup).
double riccati_solution(const RhoWeight& rho, double G0, double Utilde_sup, double t);

}  // namespace geoprandtl::lyapunov
