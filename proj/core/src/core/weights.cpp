#include "geoprandtl/core/weights.hpp"

#include <cmath>

namespace geoprandtl {

double eval_psi(double t, double y, double gamma_time) {
    return (1.0 + y * y) / (16.0 * std::pow(1.0 + t, gamma_time));
}

double PsiWeight::value(double t, double y) const {
    return unweighted ? 0.0 : eval_psi(t, y, gamma_time);
}

double PsiWeight::dt(double t, double y) const {
    if (unweighted) return 0.0;
    return -gamma_time * (1.0 + y * y) / (16.0 * std::pow(1.0 + t, gamma_time + 1.0));
}

double PsiWeight::dy(double t, double y) const {
    if (unweighted) return 0.0;
    return y / (8.0 * std::pow(1.0 + t, gamma_time));
}

double PsiWeight::dissipation(double t, double y) const {
    const double py = dy(t, y);
    return -(dt(t, y) + 2.0 * py * py);
}

WeightInequality check_weight_inequality(double t, double y, double gamma_time) {
    const PsiWeight psi{gamma_time, false};
    const double lhs = psi.dissipation(t, y);
    const double rhs = y * y * (gamma_time - 1.0) / (16.0 * std::pow(1.0 + t, gamma_time + 1.0));
    return {lhs, rhs, lhs >= rhs - 1e-14};
}

}  // namespace geoprandtl
