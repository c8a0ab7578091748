#include "geoprandtl/solver2d/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "geoprandtl/core/background.hpp"
#include "geoprandtl/core/error.hpp"
#include "geoprandtl/core/ops.hpp"
#include "geoprandtl/core/parallel.hpp"
#include "geoprandtl/core/profiles.hpp"

namespace geoprandtl::solver2d {

void SolverConfig2D::validate() const {
    if (!(dt0 > 0.0)) throw ConfigError("scheme: dt0 must be > 0");
    if (!(Tend > 0.0)) throw ConfigError("scheme: Tend must be > 0");
    if (n_reg < 0) throw ConfigError("scheme: n_reg must be >= 0");
    if (!(gamma_time >= 2.0)) throw ConfigError("analyticity: gamma_time must be >= 2");
    if (!(lambda > 0.0)) throw ConfigError("analyticity: lambda must be > 0");
    if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("analyticity: delta must lie in (0, 1]");
    if (cadence < 1) throw ConfigError("scheme: cadence must be >= 1");
    if (!(cfl > 0.0)) throw ConfigError("scheme: cfl must be > 0");
    if (!(blowup_threshold > 0.0)) throw ConfigError("scheme: blowup_threshold must be > 0");
}

Field2D forcing(double t, const Grid& grid, const OutflowSpec& outflow) {
    Field2D F(grid);
    if (outflow.is_zero()) return F;
    std::vector<double> U(grid.nx), Ut(grid.nx), Ux(grid.nx);
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        U[i] = outflow.U(t, x);
        Ut[i] = outflow.U_t(t, x);
        Ux[i] = outflow.U_x(t, x);
    }
    for (int j = 0; j < grid.vertical.nodes(); ++j) {
        const double y = grid.y(j);
        const double phi = eval_phi(t, y);
        const double above = integral_one_minus_phi_above(t, y);
        auto row = F.row(j);
        for (int i = 0; i < grid.nx; ++i)
            row[i] = (1.0 - phi) * (Ut[i] + (1.0 + phi) * U[i] * Ux[i]) - U[i] * above;
    }
    return F;
}

Field2D tail_integral(const Field2D& w) {
    const Grid& g = w.grid();
    Field2D out(g);
    const int top = g.ny();
    const double h = 0.5 * g.dy();
    for (int j = top - 1; j >= 0; --j) {
        auto o = out.row(j);
        auto above = out.row(j + 1);
        auto a = w.row(j);
        auto b = w.row(j + 1);
        for (int i = 0; i < g.nx; ++i) o[i] = above[i] - h * (a[i] + b[i]);
    }
    return out;
}

Field2D vertical_flux(const Field2D& w, const Field2D& us_x) {
    const Grid& g = w.grid();
    Field2D div = dx_spectral(w);
    auto d = div.values();
    auto u = us_x.values();
    for (std::size_t n = 0; n < d.size(); ++n) d[n] += u[n];
    Field2D out(g);
    const double h = 0.5 * g.dy();
    for (int j = 1; j <= g.ny(); ++j) {
        auto o = out.row(j);
        auto below = out.row(j - 1);
        auto a = div.row(j - 1);
        auto b = div.row(j);
        for (int i = 0; i < g.nx; ++i) o[i] = below[i] - h * (a[i] + b[i]);
    }
    return out;
}

Field2D explicit_tendency(const Field2D& w, double t, const OutflowSpec& outflow, double* max_velocity) {
    const Grid& g = w.grid();
    const int nx = g.nx;
    const int top = g.ny();
    const double dy = g.dy();

    std::vector<double> U(nx, 0.0), Ux(nx, 0.0);
    const bool has_outflow = !outflow.is_zero();
    if (has_outflow) {
        for (int i = 0; i < nx; ++i) {
            U[i] = outflow.U(t, g.x(i));
            Ux[i] = outflow.U_x(t, g.x(i));
        }
    }
    Field2D us_x(g);
    if (has_outflow) {
        for (int j = 0; j <= top; ++j) {
            const double phi = eval_phi(t, g.y(j));
            auto r = us_x.row(j);
            for (int i = 0; i < nx; ++i) r[i] = Ux[i] * phi;
        }
    }

    const Field2D wx = dx_spectral(w);
    const Field2D V = vertical_flux(w, us_x);
    const Field2D tail = tail_integral(w);
    Field2D E = forcing(t, g, outflow);

    double vmax = 0.0;
    for (int j = 0; j <= top; ++j) {
        const double y = g.y(j);
        const double phi = has_outflow ? eval_phi(t, y) : 0.0;
        const double phi_y = has_outflow ? eval_phi_y(t, y) : 0.0;
        const int jm = j == 0 ? 0 : j - 1;
        const int jp = j == top ? top : j + 1;
        const double inv = 1.0 / ((jp - jm) * dy);
        auto e = E.row(j);
        auto wr = w.row(j);
        auto wm = w.row(jm);
        auto wp = w.row(jp);
        auto wxr = wx.row(j);
        auto vr = V.row(j);
        auto tr = tail.row(j);
        for (int i = 0; i < nx; ++i) {
            const double us = U[i] * phi;
            const double wy = (wp[i] - wm[i]) * inv;
            const double u = wr[i] + us;
            e[i] += -u * wxr[i] - wr[i] * Ux[i] * phi - vr[i] * (wy + U[i] * phi_y) - tr[i];
            vmax = std::max({vmax, std::abs(u), std::abs(vr[i])});
        }
    }
    if (max_velocity) *max_velocity = vmax;
    return E;
}

Stepper2D::Stepper2D(const Grid& grid, const SolverConfig2D& cfg, const OutflowSpec& outflow)
    : grid_(grid), cfg_(cfg), outflow_(outflow), w_hat_(grid), tendency_(grid), prev_tendency_(grid) {}

void Stepper2D::factor(double dt) {
    if (dt == factored_dt_) return;
    const double dy = grid_.dy();
    const double r = 0.5 * dt / (dy * dy);
    const double eps = cfg_.n_reg > 0 ? 1.0 / (static_cast<double>(cfg_.n_reg) * cfg_.n_reg) : 0.0;
    systems_.clear();
    for (int m = 0; m < grid_.modes(); ++m) {
        const double xi = grid_.wavenumber(m);
        systems_.emplace_back(grid_.vertical.nodes(), r, 1.0 + 2.0 * r + 0.5 * dt * eps * xi * xi);
    }
    factored_dt_ = dt;
}

void Stepper2D::prepare(const Field2D& w, double t) {
    w_hat_ = to_spectral(w);
    if (cfg_.explicit_terms) {
        tendency_ = to_spectral(explicit_tendency(w, t, outflow_, &max_velocity_));
    } else {
        tendency_ = SpectralField2D(grid_);
        max_velocity_ = 0.0;
    }
    prepared_ = true;
}

double Stepper2D::allowed_dt() const {
    const double h = std::min(grid_.dx(), grid_.dy());
    return std::min(cfg_.dt0, cfg_.cfl * h / std::max(1.0, max_velocity_));
}

Field2D Stepper2D::complete(double dt) {
    if (!prepared_) throw std::logic_error("Stepper2D::complete without prepare");
    prepared_ = false;
    factor(dt);

    // explicit part: Euler start, then variable-step AB2
    const double ratio = have_history_ ? dt / prev_dt_ : 0.0;
    const double c_now = 1.0 + 0.5 * ratio;
    const double c_old = -0.5 * ratio;

    const int nodes = grid_.vertical.nodes();
    const int nm = grid_.modes();
    const double dy = grid_.dy();
    const double r = 0.5 * dt / (dy * dy);
    const double eps = cfg_.n_reg > 0 ? 1.0 / (static_cast<double>(cfg_.n_reg) * cfg_.n_reg) : 0.0;

    SpectralField2D next(grid_);
    parallel_for(static_cast<std::size_t>(nm), [&](std::size_t begin, std::size_t end) {
        std::vector<Complex> col(static_cast<std::size_t>(nodes));
        for (std::size_t mm = begin; mm < end; ++mm) {
            const int m = static_cast<int>(mm);
            const double xi = grid_.wavenumber(m);
            const double damp = 0.5 * dt * eps * xi * xi;
            col[0] = 0.0;
            col[nodes - 1] = 0.0;
            for (int j = 1; j < nodes - 1; ++j) {
                const Complex wj = w_hat_(m, j);
                Complex e = c_now * tendency_(m, j);
                if (have_history_) e += c_old * prev_tendency_(m, j);
                col[j] = wj + r * (w_hat_(m, j + 1) - 2.0 * wj + w_hat_(m, j - 1)) - damp * wj + dt * e;
            }
            systems_[m].solve<Complex>(col);
            for (int j = 0; j < nodes; ++j) next(m, j) = col[j];
        }
    });

    Field2D w = to_physical(next);
    for (double& v : w.row(0)) v = 0.0;
    for (double& v : w.row(grid_.ny())) v = 0.0;
    if (!w.all_finite()) throw NumericalError("numerical blowup or instability");

    std::swap(prev_tendency_, tendency_);
    prev_dt_ = dt;
    have_history_ = true;
    return w;
}

Field2D step(const Field2D& w, double t, const SolverConfig2D& cfg, const OutflowSpec& outflow) {
    Stepper2D s(w.grid(), cfg, outflow);
    return s.step(w, t, cfg.dt0);
}

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::completed: return "completed";
        case StopReason::radius_lost: return "radius_lost";
        case StopReason::blowup_detected: return "blowup_detected";
    }
    return "unknown";
}

namespace {

/// State with theta = 0, delta = 1: the e^{<D>} weight of the data terms.
lp::AnalyticityState unit_radius() { return lp::AnalyticityState{0.0, 1.0, 1.0, 2.0}; }

void scale_by_exponents(std::vector<double>& energies, const std::vector<double>& exponents) {
    for (std::size_t m = 0; m < energies.size(); ++m) energies[m] *= std::exp(2.0 * exponents[m]);
}

double tail_time_factor(double T, double power) { return std::sqrt(std::max(0.0, std::pow(1.0 + T, power) - 1.0)); }

}  // namespace

Run2D::Run2D(const Field2D& w0, const SolverConfig2D& cfg, const OutflowSpec& outflow,
             const lp::AnalyticityState& state)
    : cfg_(cfg),
      outflow_(outflow),
      psi_{cfg.gamma_time, false},
      partition_(lp::build_partition(w0.grid())),
      stepper_(w0.grid(), cfg, outflow),
      w_(w0),
      t_(w0.grid().t0),
      state_(state) {
    const int blocks = partition_.block_count();
    w_inf_ = w_diss_ = w_dy_ = w_theta_ = U_data_inf_ = lp::CheminLernerAccumulator(blocks);

    const Grid& g = w0.grid();
    auto e = lp::mode_energies(to_spectral(w0), t_, psi_, 0);
    scale_by_exponents(e, lp::radius_exponents(unit_radius(), g.L, g.nx));
    data_norm_ = lp::besov_sum(lp::block_norms(e, partition_), 0.5);

    current_ = measure();
    record(0.0);
}

Run2D::Measured Run2D::measure() const {
    const Grid& g = w_.grid();
    Measured out;
    const auto exps = lp::radius_exponents(state_, g.L, g.nx);
    const SpectralField2D c = to_spectral(w_);

    auto e0 = lp::mode_energies(c, t_, psi_, 0);
    scale_by_exponents(e0, exps);
    out.half_blocks = lp::block_norms(e0, partition_);

    auto e1 = lp::mode_energies(c, t_, psi_, 1);
    scale_by_exponents(e1, exps);
    out.dy_blocks = lp::block_norms(e1, partition_);

    std::vector<double> diss(static_cast<std::size_t>(g.vertical.nodes()));
    for (int j = 0; j < g.vertical.nodes(); ++j) diss[j] = psi_.dissipation(t_, g.y(j));
    auto ed = lp::mode_energies(c, t_, psi_, 0, diss);
    scale_by_exponents(ed, exps);
    out.diss_blocks = lp::block_norms(ed, partition_);

    out.theta.w_half = lp::besov_sum(out.half_blocks, 0.5);
    out.theta.w_one = lp::besov_sum(out.half_blocks, 1.0);
    out.theta.dy_w_half = lp::besov_sum(out.dy_blocks, 0.5);

    out.U_data_blocks.assign(static_cast<std::size_t>(partition_.block_count()), 0.0);
    if (!outflow_.is_zero()) {
        auto u = to_spectral(outflow_.sample(t_, g.nx));
        lp::clip_noise_floor(u);
        auto eu = lp::mode_energies(u, g.L, g.nx);
        auto eu_phi = eu;
        scale_by_exponents(eu_phi, exps);
        const auto ub = lp::block_norms(eu_phi, partition_);
        out.theta.U_half = lp::besov_sum(ub, 0.5);
        out.theta.U_one = lp::besov_sum(ub, 1.0);

        const auto unit = lp::radius_exponents(unit_radius(), g.L, g.nx);
        scale_by_exponents(eu, unit);
        out.U_data_blocks = lp::block_norms(eu, partition_);

        auto ut = to_spectral(outflow_.sample_t(t_, g.nx));
        lp::clip_noise_floor(ut);
        auto et = lp::mode_energies(ut, g.L, g.nx);
        scale_by_exponents(et, unit);
        out.Ut_data_half = lp::besov_sum(lp::block_norms(et, partition_), 0.5);
    }
    return out;
}

void Run2D::record(double dt) {
    const Measured& m = current_;
    const double rate = lp::theta_rate(t_, state_.gamma_time, m.theta);
    w_inf_.push(t_, 1.0, m.half_blocks);
    w_diss_.push(t_, 1.0, m.diss_blocks);
    w_dy_.push(t_, 1.0, m.dy_blocks);
    w_theta_.push(t_, rate, m.half_blocks);
    U_data_inf_.push(t_, 1.0, m.U_data_blocks);
    U_data_half_sup_ = std::max(U_data_half_sup_, lp::besov_sum(m.U_data_blocks, 0.5));
    Ut_data_half_sup_ = std::max(Ut_data_half_sup_, m.Ut_data_half);

    const bool due = steps_ % cfg_.cadence == 0 || finished_;
    if (!due) return;

    using lp::TimeExponent;
    const double T = t_ - w_.grid().t0;
    const double lhs = w_inf_.value(0.5, TimeExponent::infinity) + w_diss_.value(0.5, TimeExponent::two) +
                       w_dy_.value(0.5, TimeExponent::two) +
                       std::sqrt(state_.lambda) *
                           (w_theta_.value(0.5, TimeExponent::two) + w_theta_.value(1.0, TimeExponent::two));
    const double u_half = U_data_inf_.value(0.5, TimeExponent::infinity);
    const double rhs = data_norm_ + std::sqrt(T) * (u_half + U_data_inf_.value(1.0, TimeExponent::infinity)) +
                       tail_time_factor(T, 1.5) * Ut_data_half_sup_ + tail_time_factor(T, 2.5) * U_data_half_sup_ +
                       std::sqrt(T) * u_half * U_data_inf_.value(1.5, TimeExponent::infinity);

    Diagnostics2D d;
    d.t = t_;
    d.dt = dt;
    d.sup_w = w_.sup_abs();
    d.radius = state_.radius();
    d.theta = state_.theta;
    d.norm_half = m.theta.w_half;
    d.norm_one = m.theta.w_one;
    d.norm_dy_half = m.theta.dy_w_half;
    d.energy_lhs = lhs;
    d.energy_rhs = rhs;
    samples_.push_back(d);
}

void Run2D::finish(StopReason r) {
    finished_ = true;
    reason_ = r;
}

double Run2D::proposed_dt() {
    if (!prepared_) {
        stepper_.prepare(w_, t_);
        prepared_ = true;
    }
    return std::min(stepper_.allowed_dt(), cfg_.Tend - (t_ - w_.grid().t0));
}

bool Run2D::advance(double dt) {
    if (finished_) return false;
    const double allowed = proposed_dt();
    if (!(dt > 0.0)) dt = allowed;
    prepared_ = false;

    Field2D next;
    try {
        next = stepper_.complete(dt);
    } catch (const NumericalError&) {
        finish(StopReason::blowup_detected);
        return false;
    }
    const double rate = lp::theta_rate(t_, state_.gamma_time, current_.theta);
    state_.theta += dt * rate;
    t_ += dt;
    w_ = std::move(next);
    ++steps_;

    const double elapsed = t_ - w_.grid().t0;
    if (w_.sup_abs() > cfg_.blowup_threshold) {
        finish(StopReason::blowup_detected);
    } else if (state_.lost()) {
        finish(StopReason::radius_lost);
    } else if (elapsed >= cfg_.Tend * (1.0 - 1e-12)) {
        finish(StopReason::completed);
    }
    current_ = measure();
    record(dt);
    return !finished_;
}

RunReport Run2D::report() const {
    RunReport r;
    r.reason = reason_;
    r.t_end = t_;
    r.steps = steps_;
    r.samples = samples_;
    r.final_field = w_;
    r.final_state = state_;
    return r;
}

namespace {

void check_initial_data(const Field2D& w0, const SolverConfig2D& cfg) {
    const Grid& g = w0.grid();
    g.validate();
    cfg.validate();
    const double scale = std::max(1.0, w0.sup_abs());
    for (int j : {0, g.ny()})
        for (double v : w0.row(j))
            if (std::abs(v) > 1e-14 * scale)
                throw ConfigError("initial data must vanish at y = 0 and y = Ymax");
    if (w0.sup_abs() == 0.0) return;
    double radius = 0.0;
    try {
        radius = lp::estimate_analyticity_radius(w0);
    } catch (const NumericalError&) {
        return;  // finitely many modes: a trigonometric polynomial in x, entire
    }
    if (radius < cfg.delta)
        throw ConfigError("initial data analyticity radius " + std::to_string(radius) + " is below delta = " +
                          std::to_string(cfg.delta));
}

}  // namespace

RunReport run(const Field2D& w0, const SolverConfig2D& cfg, const OutflowSpec& outflow,
              const lp::AnalyticityState& state) {
    check_initial_data(w0, cfg);
    Run2D r(w0, cfg, outflow, state);
    while (r.advance()) {
    }
    return r.report();
}

std::vector<ConvergenceRow> convergence_study(const Field2D& w0, const SolverConfig2D& cfg,
                                              const OutflowSpec& outflow, std::span<const int> n_list) {
    if (n_list.size() < 2) throw ConfigError("convergence study needs at least two n values");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1) throw ConfigError("convergence study: n values must be >= 1");
        if (i > 0 && n_list[i] <= n_list[i - 1]) throw ConfigError("convergence study: n values must ascend");
    }
    check_initial_data(w0, cfg);
    const lp::AnalyticityState start{0.0, cfg.lambda, cfg.delta, cfg.gamma_time};
    const PsiWeight psi{cfg.gamma_time, false};
    const lp::DyadicPartition part = lp::build_partition(w0.grid());

    std::vector<ConvergenceRow> rows;
    for (int n : n_list) {
        SolverConfig2D ca = cfg, cb = cfg;
        ca.n_reg = n;
        cb.n_reg = n + 1;
        ca.cadence = cb.cadence = 1 << 30;
        Run2D a(w0, ca, outflow, start);
        Run2D b(w0, cb, outflow, start);
        double d = 0.0;
        while (!a.finished() && !b.finished()) {
            const double dt = std::min(a.proposed_dt(), b.proposed_dt());
            a.advance(dt);
            b.advance(dt);
            Field2D diff = b.field();
            auto dv = diff.values();
            auto av = a.field().values();
            for (std::size_t i = 0; i < dv.size(); ++i) dv[i] -= av[i];
            const Field2D weighted = lp::apply_radius_weight(diff, a.state());
            d = std::max(d, lp::weighted_besov_norm(weighted, 0.5, 0, a.time(), psi, part));
        }
        const double scale = 1.0 / (double(n) * n) + 1.0 / (double(n + 1) * (n + 1));
        rows.push_back({n, d, d / scale});
    }
    return rows;
}

Field2D analytic_bump(const Grid& grid, double amplitude, double radius, double width) {
    Field2D w(grid);
    for (int j = 0; j <= grid.ny(); ++j) {
        const double b = amplitude * bump_profile(grid.y(j), width);
        for (int i = 0; i < grid.nx; ++i) w(i, j) = b * even_analytic_profile(grid.x(i), grid.L, radius);
    }
    for (double& v : w.row(grid.ny())) v = 0.0;
    return w;
}

Field2D odd_analytic_bump(const Grid& grid, double amplitude, double radius, double width) {
    Field2D w(grid);
    for (int j = 0; j <= grid.ny(); ++j) {
        const double b = -amplitude * bump_profile(grid.y(j), width);
        for (int i = 0; i < grid.nx; ++i) w(i, j) = b * odd_analytic_profile(grid.x(i), grid.L, radius);
    }
    for (double& v : w.row(grid.ny())) v = 0.0;
    return w;
}

Field2D random_analytic(const Grid& grid, double amplitude, double radius, double width, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<Complex> c(static_cast<std::size_t>(grid.modes()));
    for (int m = 0; m + 1 < grid.modes(); ++m) {
        const double damp = std::exp(-radius * (1.0 + grid.wavenumber(m)));
        const double re = normal(rng);
        const double im = m == 0 ? 0.0 : normal(rng);
        c[m] = Complex(re, im) * damp;
    }
    const XSignal profile = to_physical(c, grid.L, grid.nx);
    double peak = 0.0;
    for (double v : profile.values()) peak = std::max(peak, std::abs(v));
    Field2D w(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        const double b = amplitude * bump_profile(grid.y(j), width) / peak;
        for (int i = 0; i < grid.nx; ++i) w(i, j) = b * profile[i];
    }
    return w;
}

}  // namespace geoprandtl::solver2d
