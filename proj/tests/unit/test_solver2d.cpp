#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "geoprandtl/core/background.hpp"
#include "geoprandtl/core/error.hpp"
#include "geoprandtl/core/ops.hpp"
#include "geoprandtl/core/profiles.hpp"
#include "geoprandtl/lp/analyticity.hpp"
#include "geoprandtl/solver2d/outflow.hpp"
#include "geoprandtl/solver2d/solver2d.hpp"
#include "oracles.hpp"

using namespace geoprandtl;
using namespace geoprandtl::solver2d;

namespace {

Grid small_grid(int ny = 400, double ymax = 20.0, int nx = 16, double L = 1.0) {
    return Grid{L, nx, VerticalGrid{ymax, ny}, 0.0};
}

double max_abs_diff(const Field2D& a, const Field2D& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) d = std::max(d, std::abs(a.values()[i] - b.values()[i]));
    return d;
}

}  // namespace

TEST(Outflow, ClosedForms) {
    const OutflowSpec c = OutflowSpec::cosine(2.0, 1.5, 0.5);
    EXPECT_DOUBLE_EQ(c.U(0.0, 0.0), 2.0);
    EXPECT_NEAR(c.U(1.0, 0.3), 2.0 * std::exp(-0.5) * std::cos(0.2), 1e-15);
    EXPECT_NEAR(c.U_t(1.0, 0.3), -0.5 * c.U(1.0, 0.3), 1e-15);
    EXPECT_NEAR(c.U_x(1.0, 0.3), -2.0 * std::exp(-0.5) * std::sin(0.2) / 1.5, 1e-15);
    const OutflowSpec s = OutflowSpec::sine(-1.0, 1.0, 1.0);
    EXPECT_NEAR(s.reduced(0.0), 1.0, 1e-15);
    EXPECT_NEAR(s.reduced_sup(2.0), 1.0, 1e-15);
    EXPECT_TRUE(OutflowSpec::zero().is_zero());
    const XSignal u = c.sample(0.0, 16);
    for (int i = 0; i < 16; ++i) EXPECT_NEAR(u[i], c.U(0.0, u.x(i)), 1e-15);
}

TEST(Forcing, ZeroOutflowGivesZero) {
    for (const auto r = forcing(0.3, small_grid(), OutflowSpec::zero()); double v : r.values()) EXPECT_EQ(v, 0.0);
}

TEST(Forcing, ConstantOutflowLeavesOnlyTheIntegral) {
    // at x = 0 the cosine outflow has U = c, U_x = 0, and U_t = 0 without decay
    const Grid g = small_grid();
    const Field2D F = forcing(0.5, g, OutflowSpec::cosine(3.0, 1.0));
    for (int j = 0; j < g.vertical.nodes(); j += 17) {
        const double a = std::sqrt(4.0 * 1.5);
        const double ref = -3.0 * oracle::integrate([&](double s) { return std::erfc(s / a); }, g.y(j), g.y(j) + 80.0);
        EXPECT_NEAR(F(0, j), ref, 1e-12);
    }
}

TEST(Forcing, CosineOutflowMatchesBruteForceAssembly) {
    const Grid g = small_grid(200, 20.0, 16, 1.0);
    const Field2D F = forcing(0.0, g, OutflowSpec::cosine(1.0, 1.0));
    for (int j = 0; j < g.vertical.nodes(); j += 7)
        for (int i = 0; i < g.nx; i += 3) {
            const double x = g.x(i), y = g.y(j);
            const double phi = oracle::erf(y / 2.0);
            const double U = std::cos(x), Ux = -std::sin(x);
            const double tail = oracle::integrate([](double s) { return oracle::erfc(s / 2.0); }, y, y + 60.0);
            const double ref = (1.0 - phi) * (0.0 + (1.0 + phi) * U * Ux) - U * tail;
            EXPECT_NEAR(F(i, j), ref, 1e-8);
        }
}

TEST(TailIntegral, ZeroAndOrientation) {
    const Grid g = small_grid(400, 20.0, 8);
    for (const auto r = tail_integral(Field2D(g)); double v : r.values()) EXPECT_EQ(v, 0.0);
    // unit-mass hat on [0.5, 1.5]
    Field2D w(g);
    for (int j = 0; j < g.vertical.nodes(); ++j) {
        const double y = g.y(j);
        const double hat = std::max(0.0, 1.0 - std::abs(y - 1.0) / 0.5) * 2.0;
        for (int i = 0; i < g.nx; ++i) w(i, j) = hat;
    }
    const Field2D T = tail_integral(w);
    EXPECT_NEAR(T(0, 0), -1.0, 1e-12);
    EXPECT_EQ(T(3, g.vertical.ny), 0.0);
    EXPECT_NEAR(T(5, 100), 0.0, 1e-15);  // y = 5, above the hat
}

TEST(TailIntegral, GaussianSecondOrder) {
    auto err = [](int ny) {
        const Grid g = small_grid(ny, 6.0, 8);
        Field2D w(g);
        for (int j = 0; j < g.vertical.nodes(); ++j)
            for (int i = 0; i < g.nx; ++i) w(i, j) = std::exp(-g.y(j) * g.y(j));
        const Field2D T = tail_integral(w);
        double e = 0.0;
        for (int j = 0; j < g.vertical.nodes(); ++j) {
            const double exact = -0.5 * std::sqrt(std::numbers::pi) * (std::erfc(g.y(j)) - std::erfc(6.0));
            e = std::max(e, std::abs(T(2, j) - exact));
        }
        return e;
    };
    const double e1 = err(120), e2 = err(240);
    EXPECT_LT(e1, 1e-3);
    EXPECT_NEAR(e1 / e2, 4.0, 0.1);
}

TEST(VerticalFlux, XIndependentGivesZero) {
    const Grid g = small_grid(200, 10.0, 16);
    Field2D w(g), usx(g);
    for (int j = 0; j < g.vertical.nodes(); ++j)
        for (int i = 0; i < g.nx; ++i) w(i, j) = std::exp(-g.y(j));
    for (const auto r = vertical_flux(w, usx); double v : r.values()) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(VerticalFlux, SeparableClosedForm) {
    const double L = 1.3;
    auto err = [&](int ny) {
        const Grid g = small_grid(ny, 8.0, 16, L);
        Field2D w(g), usx(g);
        for (int j = 0; j < g.vertical.nodes(); ++j)
            for (int i = 0; i < g.nx; ++i) w(i, j) = std::sin(g.x(i) / L) * std::exp(-g.y(j));
        const Field2D V = vertical_flux(w, usx);
        double e = 0.0;
        for (int i = 0; i < g.nx; ++i) EXPECT_EQ(V(i, 0), 0.0);
        for (int j = 0; j < g.vertical.nodes(); ++j)
            for (int i = 0; i < g.nx; ++i)
                e = std::max(e, std::abs(V(i, j) + std::cos(g.x(i) / L) / L * (1.0 - std::exp(-g.y(j)))));
        return e;
    };
    const double e1 = err(100), e2 = err(200);
    EXPECT_LT(e1, 1e-3);
    EXPECT_NEAR(e1 / e2, 4.0, 0.1);
}

TEST(Step, ZeroStaysZero) {
    const Grid g = small_grid(200, 20.0, 16);
    SolverConfig2D cfg;
    Stepper2D st(g, cfg, OutflowSpec::zero());
    Field2D w(g);
    double t = 0.0;
    for (int n = 0; n < 20; ++n) {
        w = st.step(w, t, cfg.dt0);
        t += cfg.dt0;
    }
    for (double v : w.values()) EXPECT_EQ(v, 0.0);
}

TEST(Step, OneStepMatchesFineExplicitIntegrator) {
    const Grid g = small_grid(800, 40.0, 8);
    const int n = g.vertical.nodes();
    const double dy = g.dy();
    Field2D w0(g);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < g.nx; ++i) w0(i, j) = 1e-8 * bump_profile(g.y(j), 2.0);
    for (int i = 0; i < g.nx; ++i) w0(i, n - 1) = 0.0;

    // reference: explicit Euler with dt/100 on w_t = w_yy + int_y^Ymax w (x-independent, U = 0)
    auto mismatch = [&](double dt) {
        SolverConfig2D cfg;
        cfg.dt0 = dt;
        const Field2D w1 = step(w0, 0.0, cfg, OutflowSpec::zero());
        std::vector<double> v(n), d2(n), above(n);
        for (int j = 0; j < n; ++j) v[j] = w0(0, j);
        const double h = dt / 100.0;
        for (int s = 0; s < 100; ++s) {
            ops::second_derivative<double>(v, dy, d2);
            ops::upper_trapezoid<double>(v, dy, above);
            for (int j = 1; j + 1 < n; ++j) v[j] += h * (d2[j] + above[j]);
        }
        double diff = 0.0, sup = 0.0;
        for (int j = 0; j < n; ++j) {
            sup = std::max(sup, std::abs(v[j]));
            for (int i = 0; i < g.nx; ++i) diff = std::max(diff, std::abs(w1(i, j) - v[j]));
        }
        return diff / sup;
    };
    // the gap is the O(dt^2) local error of the Euler start
    EXPECT_LT(mismatch(2e-6), 1e-10);
    EXPECT_NEAR(mismatch(1e-5) / mismatch(5e-6), 4.0, 0.4);
}

TEST(Step, DiffusionOnlyModeDecaysByCrankNicolsonFactor) {
    for (int n_reg : {0, 3}) {
        const Grid g = small_grid(400, 20.0, 16, 1.0);
        const double dy = g.dy();
        const int m = 2;
        SolverConfig2D cfg;
        cfg.explicit_terms = false;
        cfg.n_reg = n_reg;
        cfg.dt0 = 1e-2;
        Field2D w(g);
        for (int j = 0; j < g.vertical.nodes(); ++j)
            for (int i = 0; i < g.nx; ++i)
                w(i, j) = std::sin(std::numbers::pi * g.y(j) / 20.0) * (n_reg ? std::cos(m * g.x(i)) : 1.0);
        for (int i = 0; i < g.nx; ++i) w(i, g.vertical.ny) = 0.0;
        double mu = -4.0 / (dy * dy) * std::pow(std::sin(std::numbers::pi * dy / 40.0), 2);
        if (n_reg) mu -= double(m * m) / (n_reg * n_reg);
        const double factor = (1.0 + 0.5 * cfg.dt0 * mu) / (1.0 - 0.5 * cfg.dt0 * mu);
        Stepper2D st(g, cfg, OutflowSpec::zero());
        Field2D cur = w;
        double amp = 1.0;
        for (int s = 0; s < 5; ++s) {
            cur = st.step(cur, s * cfg.dt0, cfg.dt0);
            amp *= factor;
            EXPECT_LT(max_abs_diff(cur, [&] {
                          Field2D e = w;
                          for (double& v : e.values()) v *= amp;
                          return e;
                      }()),
                      1e-12);
        }
    }
}

TEST(Step, BoundaryConditionsAndOddSymmetry) {
    // w -> -w(-x) maps solutions to solutions when U is odd in x
    const Grid g = small_grid(200, 20.0, 16, 1.0);
    SolverConfig2D cfg;
    const OutflowSpec U = OutflowSpec::sine(0.5, 1.0);
    Field2D w = odd_analytic_bump(g, 0.1, 1.5, 2.0);
    Stepper2D st(g, cfg, U);
    double t = 0.0;
    for (int s = 0; s < 30; ++s) {
        st.prepare(w, t);
        const double dt = st.allowed_dt();
        w = st.complete(dt);
        t += dt;
        for (int i = 0; i < g.nx; ++i) {
            EXPECT_EQ(w(i, 0), 0.0);
            EXPECT_EQ(w(i, g.vertical.ny), 0.0);
        }
    }
    double asym = 0.0;
    for (int j = 0; j < g.vertical.nodes(); ++j) {
        asym = std::max(asym, std::abs(w(0, j)));
        for (int i = 1; i < g.nx; ++i) asym = std::max(asym, std::abs(w(i, j) + w(g.nx - i, j)));
    }
    EXPECT_GT(w.sup_abs(), 1e-3);
    EXPECT_LT(asym, 1e-12 * w.sup_abs());
}

TEST(Step, RefinementIsAtLeastFirstOrder) {
    auto solve = [](int ny, double dt) {
        const Grid g = small_grid(ny, 20.0, 16, 1.0);
        SolverConfig2D cfg;
        cfg.dt0 = dt;
        Stepper2D st(g, cfg, OutflowSpec::cosine(0.2, 1.0));
        Field2D w = analytic_bump(g, 0.05, 1.5, 2.0);
        const int steps = static_cast<int>(std::lround(0.1 / dt));
        for (int s = 0; s < steps; ++s) w = st.step(w, s * dt, dt);
        return w;
    };
    const Field2D a = solve(100, 4e-3), b = solve(200, 2e-3), c = solve(400, 1e-3);
    double d1 = 0.0, d2 = 0.0;
    for (int j = 0; j <= 100; ++j)
        for (int i = 0; i < 16; ++i) {
            d1 = std::max(d1, std::abs(a(i, j) - b(i, 2 * j)));
            d2 = std::max(d2, std::abs(b(i, 2 * j) - c(i, 4 * j)));
        }
    EXPECT_GT(d1 / d2, 1.8);
}

TEST(Run, ZeroDataCompletesWithClosedFormTheta) {
    const Grid g = small_grid(200, 20.0, 16);
    SolverConfig2D cfg;
    cfg.Tend = 0.25;
    const RunReport r = run(Field2D(g), cfg, OutflowSpec::zero(), lp::AnalyticityState{});
    EXPECT_EQ(r.reason, StopReason::completed);
    EXPECT_NEAR(r.t_end, 0.25, 1e-12);
    for (const auto& s : r.samples) {
        EXPECT_EQ(s.sup_w, 0.0);
        EXPECT_EQ(s.norm_half, 0.0);
        EXPECT_EQ(s.norm_one, 0.0);
        EXPECT_EQ(s.norm_dy_half, 0.0);
    }
    for (double v : r.final_field.values()) EXPECT_EQ(v, 0.0);
    const double exact = (std::pow(1.25, 3.0) - 1.0) / 3.0;
    // explicit Euler on a monotone integrand: error below dt * (f(T) - f(0))
    EXPECT_NEAR(r.final_state.theta, exact, cfg.dt0 * (1.25 * 1.25 - 1.0));
    EXPECT_LT(r.final_state.theta, exact);
}

TEST(Run, SmallAnalyticDataKeepsPositiveRadius) {
    const Grid g{1.0, 32, VerticalGrid{40.0, 800}, 0.0};
    SolverConfig2D cfg;
    const Field2D w0 = analytic_bump(g, 1e-3, 1.5, 2.0);
    EXPECT_NEAR(lp::estimate_analyticity_radius(w0), 1.5, 0.075);
    const RunReport r = run(w0, cfg, OutflowSpec::zero(), lp::AnalyticityState{});
    EXPECT_EQ(r.reason, StopReason::completed);
    EXPECT_GT(r.final_state.radius(), 0.0);
    double prev = -1.0;
    for (const auto& s : r.samples) {
        EXPECT_GE(s.theta, prev);
        prev = s.theta;
        EXPECT_TRUE(std::isfinite(s.norm_half) && std::isfinite(s.norm_one) && std::isfinite(s.norm_dy_half));
    }
}

TEST(Run, RejectsDataViolatingBoundaryConditions) {
    const Grid g = small_grid(200, 20.0, 16);
    Field2D w(g, 1.0);
    EXPECT_THROW(run(w, SolverConfig2D{}, OutflowSpec::zero(), lp::AnalyticityState{}), ConfigError);
}

TEST(Run, LargeOddDataStopsEarly) {
    const Grid g = small_grid(400, 20.0, 16);
    SolverConfig2D cfg;
    cfg.Tend = 0.25;
    const RunReport r = run(odd_analytic_bump(g, 20.0, 1.5, 2.0), cfg, OutflowSpec::zero(), lp::AnalyticityState{});
    EXPECT_NE(r.reason, StopReason::completed);
    EXPECT_LT(r.t_end, cfg.Tend);
}

TEST(Presets, OddBumpSlopeAndSeededNoise) {
    const Grid g = small_grid(200, 20.0, 32);
    const Field2D w = odd_analytic_bump(g, 2.0, 1.5, 2.0);
    const Field2D d = dx_spectral(w);
    for (int j = 0; j < g.vertical.nodes(); j += 10) {
        EXPECT_NEAR(w(0, j), 0.0, 1e-14);
        EXPECT_NEAR(-d(0, j), 2.0 * bump_profile(g.y(j), 2.0), 1e-6);
    }
    const Field2D a = random_analytic(g, 1e-3, 1.5, 2.0, 7), b = random_analytic(g, 1e-3, 1.5, 2.0, 7);
    EXPECT_EQ(max_abs_diff(a, b), 0.0);
    EXPECT_NEAR(a.sup_abs(), 1e-3, 1e-15);
}

TEST(Convergence, ZeroDataHasZeroDistances) {
    const Grid g = small_grid(100, 20.0, 16);
    SolverConfig2D cfg;
    cfg.Tend = 0.05;
    const std::vector<int> ns = {2, 4};
    for (const auto& r : convergence_study(Field2D(g), cfg, OutflowSpec::zero(), ns)) EXPECT_EQ(r.distance, 0.0);
}

TEST(Convergence, SmallDataDistancesDecrease) {
    const Grid g = small_grid(200, 20.0, 32);
    SolverConfig2D cfg;
    cfg.Tend = 0.1;
    const std::vector<int> ns = {2, 4, 8};
    const auto rows = convergence_study(analytic_bump(g, 1e-3, 1.5, 2.0), cfg, OutflowSpec::zero(), ns);
    ASSERT_EQ(rows.size(), 3u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].distance, rows[i - 1].distance);
    for (const auto& r : rows)
        EXPECT_NEAR(r.ratio, r.distance / (1.0 / (r.n * r.n) + 1.0 / ((r.n + 1.0) * (r.n + 1.0))), 1e-15);
}
