#pragma once

namespace geoprandtl {

/// Gaussian-type weight psi(t, y) = (1 + y^2) / (16 (1 + t)^gamma).
/// `unweighted` switches to psi == 0, the large-gamma surrogate used to compare
/// against plain mixed norms.
struct PsiWeight {
    double gamma_time = 2.0;
    bool unweighted = false;

    double value(double t, double y) const;
    double dt(double t, double y) const;
    double dy(double t, double y) const;
    /// -(psi_t + 2 psi_y^2), the dissipation weight produced by e^psi.
    double dissipation(double t, double y) const;

    static PsiWeight zero() { return PsiWeight{2.0, true}; }
};

double eval_psi(double t, double y, double gamma_time);

struct WeightInequality {
    double lhs;
    double rhs;
    bool holds;
};

/// lhs = -(psi_t + 2 psi_y^2), rhs = y^2 (gamma-1) / (16 (1+t)^{gamma+1}).
WeightInequality check_weight_inequality(double t, double y, double gamma_time);

}  // namespace geoprandtl
