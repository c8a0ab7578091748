#include "geoprandtl/solver1d/solver1d.hpp"

#include <algorithm>
#include <cmath>

#include "geoprandtl/core/error.hpp"
#include "geoprandtl/core/ops.hpp"
#include "geoprandtl/core/profiles.hpp"
#include "geoprandtl/core/tridiagonal.hpp"

namespace geoprandtl::solver1d {

double ReducedOutflow::value(double t) const { return amplitude * std::exp(-decay * t); }

double ReducedOutflow::sup_abs(double T) const {
    return std::max(std::abs(value(0.0)), std::abs(value(T)));
}

void ReducedConfig::validate() const {
    w0.grid().validate();
    if (!(T > 0.0)) throw ConfigError("reduced: T must be > 0");
    if (!(dt0 > 0.0)) throw ConfigError("reduced: dt0 must be > 0");
    if (!(dt_min > 0.0 && dt_min <= dt0)) throw ConfigError("reduced: dt_min must lie in (0, dt0]");
    if (!(blowup_threshold > 0.0)) throw ConfigError("reduced: blowup_threshold must be > 0");
    if (!(cfl > 0.0)) throw ConfigError("reduced: cfl must be > 0");
    if (Utilde.amplitude > 0.0) throw ConfigError("reduced: U~ must be <= 0 (outflow slope U_x(t,0) >= 0)");
    const double u0 = Utilde.value(0.0);
    const double scale = std::max(1.0, std::abs(u0));
    if (std::abs(w0[0] + u0) > 1e-12 * scale) throw ConfigError("reduced: w0(0) must equal -U~(0)");
    for (std::size_t j = 0; j < w0.size(); ++j)
        if (!std::isfinite(w0[j])) throw ConfigError("reduced: w0 must be finite");
}

YProfile bump_data(const VerticalGrid& grid, double amplitude, double width, double Utilde0) {
    YProfile w(grid);
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        const double s = y / width;
        w[j] = amplitude * bump_profile(y, width) - Utilde0 * std::exp(-s * s);
    }
    w[static_cast<std::size_t>(grid.ny)] = 0.0;
    return w;
}

namespace {

/// Explicit part of the tendency (everything except d_y^2 w); also returns sup of the transport speed.
std::vector<double> explicit_part(std::span<const double> w, double Ut, double dy, double* sup_transport) {
    const std::size_t n = w.size();
    std::vector<double> P(n), wy(n), above(n), out(n);
    ops::cumulative_trapezoid<double>(w, dy, P);
    ops::first_derivative<double>(w, dy, wy);
    ops::upper_trapezoid<double>(w, dy, above);
    double smax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double transport = P[j] + Ut * (static_cast<double>(j) * dy);
        smax = std::max(smax, std::abs(transport));
        // -int_{+inf}^y w = +int_y^{Ymax} w under the truncation
        out[j] = w[j] * w[j] - transport * wy[j] + 2.0 * Ut * w[j] + above[j];
    }
    if (sup_transport) *sup_transport = smax;
    return out;
}

}  // namespace

YProfile rhs_reduced(const YProfile& w, double t, const ReducedConfig& cfg) {
    const double dy = w.grid().dy();
    const auto e = explicit_part(w.values(), cfg.Utilde.value(t), dy, nullptr);
    std::vector<double> wyy(w.size());
    ops::second_derivative<double>(w.values(), dy, wyy);
    YProfile out(w.grid());
    for (std::size_t j = 0; j < w.size(); ++j) out[j] = e[j] + wyy[j];
    return out;
}

std::string to_string(Outcome o) { return o == Outcome::blowup ? "blowup" : "survived"; }

BlowupReport run_until_blowup(const ReducedConfig& cfg, const StepObserver& observer) {
    cfg.validate();
    const VerticalGrid grid = cfg.w0.grid();
    const int n = grid.nodes();
    const double dy = grid.dy();

    std::vector<double> w(cfg.w0.values().begin(), cfg.w0.values().end());
    std::vector<double> e_prev;
    double dt_prev = 0.0;
    double t = 0.0;
    double factored_dt = -1.0;
    DirichletTridiagonal system;

    BlowupReport rep;
    auto sup_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s = std::max(s, std::abs(x));
        return s;
    };
    auto min_of = [](const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); };

    double transport = 0.0;
    std::vector<double> e = explicit_part(w, cfg.Utilde.value(t), dy, &transport);
    rep.series.push_back({t, 0.0, sup_of(w), min_of(w), transport});
    if (observer) observer(t, YProfile(grid, w));

    const double horizon_tol = 1e-12 * cfg.T;
    while (t < cfg.T - horizon_tol) {
        const double s = sup_of(w);
        double dt = cfg.dt0 / std::max(1.0, s / 10.0);
        dt = std::min(dt, cfg.cfl * dy / std::max(1.0, transport));
        const bool last = dt >= cfg.T - t;
        if (last) dt = cfg.T - t;
        if (!last && dt < cfg.dt_min) {
            rep.outcome = Outcome::blowup;
            rep.trigger = "dt_min";
            rep.t_star = t;
            rep.t_bracket = t + dt;
            break;
        }

        if (dt != factored_dt) {
            const double r = 0.5 * dt / (dy * dy);
            system = DirichletTridiagonal(n, r, 1.0 + 2.0 * r);
            factored_dt = dt;
        }
        const double ratio = e_prev.empty() ? 0.0 : dt / dt_prev;
        const double r = 0.5 * dt / (dy * dy);
        std::vector<double> next(static_cast<std::size_t>(n));
        for (int j = 1; j < n - 1; ++j) {
            double ex = (1.0 + 0.5 * ratio) * e[j];
            if (!e_prev.empty()) ex -= 0.5 * ratio * e_prev[j];
            next[j] = w[j] + r * (w[j + 1] - 2.0 * w[j] + w[j - 1]) + dt * ex;
        }
        const double t_next = t + dt;
        next[0] = -cfg.Utilde.value(t_next);
        next[n - 1] = 0.0;
        system.solve<double>(next);

        for (double v : next)
            if (!std::isfinite(v)) throw NumericalError("instability (reduce dt0)");

        e_prev = std::move(e);
        dt_prev = dt;
        w = std::move(next);
        t = last ? cfg.T : t_next;
        e = explicit_part(w, cfg.Utilde.value(t), dy, &transport);
        rep.series.push_back({t, dt, sup_of(w), min_of(w), transport});

        if (rep.series.back().sup_w > cfg.blowup_threshold) {
            rep.outcome = Outcome::blowup;
            rep.trigger = "threshold";
            rep.t_star = rep.series[rep.series.size() - 2].t;
            rep.t_bracket = t;
            break;
        }
        if (observer) observer(t, YProfile(grid, w));
    }
    if (rep.outcome == Outcome::survived) rep.t_star = t;
    rep.final_w = YProfile(grid, w);
    return rep;
}

PositivityReport positivity_check(const std::vector<StepRecord>& series) {
    PositivityReport r;
    r.min_w = series.empty() ? 0.0 : series.front().min_w;
    for (const auto& s : series) {
        r.min_w = std::min(r.min_w, s.min_w);
        r.sup_w = std::max(r.sup_w, s.sup_w);
    }
    r.pass = r.min_w >= -1e-8 * r.sup_w;
    return r;
}

}  // namespace geoprandtl::solver1d
