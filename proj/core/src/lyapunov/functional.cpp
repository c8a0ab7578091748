#include "geoprandtl/lyapunov/functional.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <utility>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "geoprandtl/core/ops.hpp"

namespace geoprandtl::lyapunov {

namespace {

/// int_0^{Ymax} weight(y, side) * combine(v(y)) with v linearly interpolated between nodes and
/// panels split at A, M, B. `side` is true for the left limit (right end of a sub-panel).
template <class Weight, class Combine>
double aligned_trapezoid(const RhoWeight& rho, const VerticalGrid& grid, std::span<const double> v, Weight&& weight,
                         Combine&& combine) {
    const double dy = grid.dy();
    const double snap = 1e-9 * dy;
    const std::array<double, 3> breaks = {rho.p.A, rho.p.M, rho.p.B};
    double total = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
        const double y0 = grid.y(j), y1 = grid.y(j + 1);
        const double v0 = v[j], v1 = v[j + 1];
        std::array<double, 5> cuts{};
        std::size_t nc = 0;
        cuts[nc++] = y0;
        for (double b : breaks)
            if (b > y0 + snap && b < y1 - snap) cuts[nc++] = b;
        cuts[nc++] = y1;
        for (std::size_t s = 0; s + 1 < nc; ++s) {
            const double a = cuts[s], b = cuts[s + 1];
            const double va = v0 + (v1 - v0) * (a - y0) / (y1 - y0);
            const double vb = v0 + (v1 - v0) * (b - y0) / (y1 - y0);
            total += 0.5 * (b - a) * (weight(a, false) * combine(va) + weight(b, true) * combine(vb));
        }
    }
    return total;
}

double identity(double x) { return x; }

}  // namespace

double functional_G(const RhoWeight& rho, const YProfile& w) {
    return aligned_trapezoid(
        rho, w.grid(), w.values(), [&](double y, bool) { return eval_rho(rho, y); }, identity);
}

double functional_G_tail_bound(const RhoWeight& rho, const YProfile& w) {
    const std::size_t n = w.size();
    const double ymax = w.grid().ymax;
    const double mass = ymax >= rho.p.B ? rho_tail_mass(rho, ymax) : rho.rho_L1 - eval_rho_primitive(rho, ymax);
    return mass * std::max(std::abs(w[n - 1]), std::abs(w[n - 2]));
}

double LyapunovTerms::sum() const { return std::accumulate(J.begin(), J.end(), 0.0) + boundary; }

LyapunovTerms lyapunov_terms(const RhoWeight& rho, const YProfile& w, double Utilde) {
    const VerticalGrid& grid = w.grid();
    const std::size_t n = w.size();
    const double dy = grid.dy();
    std::vector<double> P(n), wy(n);
    ops::cumulative_trapezoid<double>(w.values(), dy, P);
    ops::first_derivative<double>(w.values(), dy, wy);
    const auto vals = w.values();

    auto r = [&](double y, bool) { return eval_rho(rho, y); };
    auto r2 = [&](double y, bool below) { return eval_rho_second(rho, y, below); };
    auto yr1 = [&](double y, bool) { return y * eval_rho_prime(rho, y); };
    auto prim = [&](double y, bool) { return eval_rho_primitive(rho, y); };
    auto sq = [](double x) { return x * x; };

    LyapunovTerms out;
    const double rho_w = aligned_trapezoid(rho, grid, vals, r, identity);
    out.J[0] = 2.0 * aligned_trapezoid(rho, grid, vals, r, sq);
    out.J[1] = -0.5 * aligned_trapezoid(rho, grid, P, r2, sq);
    out.J[2] = Utilde * aligned_trapezoid(rho, grid, vals, yr1, identity);
    out.J[3] = 3.0 * Utilde * rho_w;
    out.J[4] = aligned_trapezoid(rho, grid, vals, prim, identity);
    out.J[5] = aligned_trapezoid(rho, grid, vals, r2, identity);
    out.J[6] = -eval_rho_prime(rho, 0.0) * Utilde;

    // rho' jumps (zero when the matching relations hold exactly)
    auto interp = [&](std::span<const double> v, double y) {
        if (y >= grid.ymax) return v[n - 1];
        const double s = y / dy;
        const std::size_t j = std::min(static_cast<std::size_t>(s), n - 2);
        const double frac = s - static_cast<double>(j);
        return v[j] + (v[j + 1] - v[j]) * frac;
    };
    const double jump_A = (2.0 * rho.a * rho.p.A + rho.b) - rho.k;
    const double jump_B = rho.g_prime(rho.p.B) - (2.0 * rho.a * rho.p.B + rho.b);
    for (const auto& [y, jump] : {std::pair{rho.p.A, jump_A}, std::pair{rho.p.B, jump_B}}) {
        if (jump == 0.0 || y >= grid.ymax) continue;
        const double Py = interp(P, y);
        out.J[1] -= 0.5 * jump * Py * Py;
        out.J[5] += jump * interp(vals, y);
    }

    // integration-by-parts remainder at the truncation height
    const double Y = grid.ymax;
    const double wY = vals[n - 1], PY = P[n - 1];
    const double rY = eval_rho(rho, Y), r1Y = eval_rho_prime(rho, Y);
    out.boundary = 0.5 * r1Y * PY * PY + rY * wy[n - 1] - r1Y * wY - rY * PY * wY - Utilde * rY * Y * wY;
    return out;
}

GrowthCheck check_growth_inequality(const RhoWeight& rho, double G, double dGdt, double Utilde_sup) {
    const double kappa = Utilde_sup * (3.0 + rho.p.C_f);
    GrowthCheck g;
    g.rhs = growth_constant(rho) * G * G - kappa * G;
    g.holds = dGdt >= g.rhs - 1e-3 * std::max(1.0, std::abs(g.rhs));
    return g;
}

double blowup_threshold(const RhoWeight& rho, double Utilde_sup, double T) {
    if (Utilde_sup == 0.0) return 0.0;
    const double kappa = Utilde_sup * (3.0 + rho.p.C_f);
    return kappa / growth_constant(rho) / (1.0 - std::exp(-kappa * T));
}

double ode_bound(const RhoWeight& rho, double G0, double Utilde_sup) {
    if (!(G0 > 0.0)) throw std::invalid_argument("ode_bound: G0 must be > 0");
    const double c = growth_constant(rho);
    const double kappa = Utilde_sup * (3.0 + rho.p.C_f);
    if (kappa == 0.0) return 1.0 / (c * G0);
    if (c * G0 <= kappa) return std::numeric_limits<double>::infinity();
    return std::log(c * G0 / (c * G0 - kappa)) / kappa;
}

double riccati_solution(const RhoWeight& rho, double G0, double Utilde_sup, double t) {
    const double c = growth_constant(rho);
    const double kappa = Utilde_sup * (3.0 + rho.p.C_f);
    const double inf = std::numeric_limits<double>::infinity();
    if (kappa == 0.0) {
        const double den = 1.0 - c * G0 * t;
        return den > 0.0 ? G0 / den : inf;
    }
    const double den = c + (kappa / G0 - c) * std::exp(kappa * t);
    if (G0 > 0.0 && t >= ode_bound(rho, G0, Utilde_sup)) return inf;
    return kappa / den;
}

}  // namespace geoprandtl::lyapunov
