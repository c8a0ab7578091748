#include "geoprandtl/lp/analyticity.hpp"

#include <algorithm>
#include <cmath>

#include "geoprandtl/core/error.hpp"
#include "geoprandtl/core/ops.hpp"

namespace geoprandtl::lp {

std::vector<double> radius_exponents(const AnalyticityState& state, double L, int nx) {
    const int nm = nx / 2 + 1;
    const double r = state.radius();
    if (r * (1.0 + (nm - 1) / L) > 700.0) throw NumericalError("radius weight overflow");
    std::vector<double> e(static_cast<std::size_t>(nm));
    for (int m = 0; m < nm; ++m) e[m] = r * (1.0 + m / L);
    return e;
}

void apply_radius_weight(std::vector<Complex>& c, const AnalyticityState& state, double L, int nx) {
    const auto e = radius_exponents(state, L, nx);
    for (std::size_t m = 0; m < c.size(); ++m) c[m] *= std::exp(e[m]);
}

Field2D apply_radius_weight(const Field2D& u, const AnalyticityState& state) {
    const Grid& g = u.grid();
    const auto e = radius_exponents(state, g.L, g.nx);
    SpectralField2D s = to_spectral(u);
    for (int j = 0; j < g.vertical.nodes(); ++j) {
        auto r = s.row(j);
        for (int m = 0; m < g.modes(); ++m) r[m] *= std::exp(e[m]);
    }
    return to_physical(s);
}

XSignal apply_radius_weight(const XSignal& u, const AnalyticityState& state) {
    auto c = to_spectral(u);
    apply_radius_weight(c, state, u.L(), u.nx());
    return to_physical(c, u.L(), u.nx());
}

double theta_rate(double t, double gamma_time, const ThetaNorms& n) {
    const double bt = 1.0 + t;
    const double q = std::pow(bt, gamma_time / 4.0);
    return q * n.dy_w_half + q * n.U_half + std::pow(bt, gamma_time / 2.0) * n.w_one * n.w_one +
           n.w_half * n.w_half + std::sqrt(bt) * n.U_half * n.U_half + std::sqrt(bt) * n.U_one * n.U_one +
           std::pow(bt, gamma_time);
}

AnalyticityState advance_theta(const AnalyticityState& state, double dt, double t, const ThetaNorms& n) {
    AnalyticityState next = state;
    next.theta += dt * theta_rate(t, state.gamma_time, n);
    return next;
}

void clip_noise_floor(std::vector<Complex>& c, double rel_floor) {
    double peak = 0.0;
    for (const auto& v : c) peak = std::max(peak, std::abs(v));
    for (auto& v : c)
        if (std::abs(v) < rel_floor * peak) v = 0.0;
}

namespace {

double fit_radius(const std::vector<double>& amplitude, double L) {
    // Nyquist (last) mode is excluded: its coefficient folds both signs of the frequency.
    const std::size_t usable_end = amplitude.size() - 1;
    double peak = 0.0;
    for (std::size_t m = 0; m < usable_end; ++m) peak = std::max(peak, amplitude[m]);
    // -log|u_m| ~ c + r |xi|, refined to c + r |xi| + p log(1 + |xi|) when the log term
    // (a polynomial prefactor) is significant by a nested F-test.
    std::vector<double> xs, ls, ys;
    for (std::size_t m = 0; m < usable_end; ++m) {
        if (amplitude[m] > 1e-13 * peak && amplitude[m] > 0.0) {
            xs.push_back(m / L);
            ls.push_back(std::log1p(m / L));
            ys.push_back(-std::log(amplitude[m]));
        }
    }
    if (xs.size() < 4) throw NumericalError("insufficient spectral content");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, ml = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        ml += ls[i];
        my += ys[i];
    }
    mx /= n;
    ml /= n;
    my /= n;
    double sxx = 0.0, sxl = 0.0, sll = 0.0, sxy = 0.0, sly = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dl = ls[i] - ml, dy = ys[i] - my;
        sxx += dx * dx;
        sxl += dx * dl;
        sll += dl * dl;
        sxy += dx * dy;
        sly += dl * dy;
        syy += dy * dy;
    }
    const double r2 = sxy / sxx;
    const double det = sxx * sll - sxl * sxl;
    if (xs.size() < 6 || !(det > 1e-12 * sxx * sll)) return r2;
    const double r3 = (sxy * sll - sly * sxl) / det;
    const double p3 = (sly * sxx - sxy * sxl) / det;
    const double rss2 = std::max(0.0, syy - r2 * sxy);
    const double rss3 = std::max(0.0, syy - r3 * sxy - p3 * sly);
    const double F = (rss2 - rss3) / std::max(rss3 / (n - 3.0), 1e-300);
    return F > 20.0 ? r3 : r2;
}

}  // namespace

double estimate_analyticity_radius(const Field2D& u) {
    const Grid& g = u.grid();
    const SpectralField2D s = to_spectral(u);
    const int ny = g.vertical.nodes();
    std::vector<double> amp(static_cast<std::size_t>(g.modes()));
    std::vector<double> col(static_cast<std::size_t>(ny));
    for (int m = 0; m < g.modes(); ++m) {
        for (int j = 0; j < ny; ++j) col[j] = std::norm(s(m, j));
        amp[m] = std::sqrt(ops::trapezoid<double>(col, g.dy()));
    }
    return fit_radius(amp, g.L);
}

double estimate_analyticity_radius(const XSignal& u) {
    const auto c = to_spectral(u);
    std::vector<double> amp(c.size());
    for (std::size_t m = 0; m < c.size(); ++m) amp[m] = std::abs(c[m]);
    return fit_radius(amp, u.L());
}

}  // namespace geoprandtl::lp
