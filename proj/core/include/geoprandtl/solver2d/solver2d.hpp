#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geoprandtl/core/field.hpp"
#include "geoprandtl/core/tridiagonal.hpp"
#include "geoprandtl/core/weights.hpp"
#include "geoprandtl/lp/analyticity.hpp"
#include "geoprandtl/lp/norms.hpp"
#include "geoprandtl/solver2d/outflow.hpp"

namespace geoprandtl::solver2d {

struct SolverConfig2D {
    double dt0 = 1e-3;
    double Tend = 0.25;
    /// 0: unregularized; n >= 1 adds (1/n^2) d_x^2 to the implicit operator.
    int n_reg = 0;
    double gamma_time = 2.0;
    double lambda = 1.0;
    double delta = 1.0;
    /// Log a diagnostics sample every `cadence` steps (theta is advanced every step).
    int cadence = 1;
    double cfl = 0.5;
    double blowup_threshold = 1e6;
    /// false drops every explicit term (nonlinear, nonlocal, forcing): pure CN diffusion.
    bool explicit_terms = true;

    /// Throws ConfigError naming the violated constraint.
    void validate() const;
};

/// Homogenized forcing; the y-integral of (1 - phi) is evaluated in closed form.
Field2D forcing(double t, const Grid& grid, const OutflowSpec& outflow);
/// y -> -int_y^{Ymax} w dy' (trapezoid).
Field2D tail_integral(const Field2D& w);
/// -int_0^y d_x(w + u^s) dy' with a spectral d_x of w (cumulative trapezoid).
Field2D vertical_flux(const Field2D& w, const Field2D& us_x);

/// Sum of every explicitly treated term of the homogenized equation at time t.
/// max_velocity (optional) receives max(|w + u^s|, |v|).
Field2D explicit_tendency(const Field2D& w, double t, const OutflowSpec& outflow, double* max_velocity = nullptr);

/// IMEX stepper: Crank-Nicolson for d_y^2 (+ (1/n^2) d_x^2) per x-wavenumber,
/// explicit Euler on the first step and variable-step AB2 afterwards.
class Stepper2D {
public:
    Stepper2D(const Grid& grid, const SolverConfig2D& cfg, const OutflowSpec& outflow);

    /// Evaluates the explicit terms at (w, t); must precede allowed_dt() and complete().
    void prepare(const Field2D& w, double t);
    /// Step size allowed by dt0 and the CFL guard for the prepared state.
    double allowed_dt() const;
    /// Finishes the prepared step with size dt. Throws NumericalError on a non-finite result.
    Field2D complete(double dt);

    Field2D step(const Field2D& w, double t, double dt) {
        prepare(w, t);
        return complete(dt);
    }

    void reset_history() { have_history_ = false; }

private:
    void factor(double dt);

    Grid grid_;
    SolverConfig2D cfg_;
    OutflowSpec outflow_;
    double factored_dt_ = -1.0;
    std::vector<DirichletTridiagonal> systems_;
    SpectralField2D w_hat_;
    SpectralField2D tendency_;
    SpectralField2D prev_tendency_;
    double max_velocity_ = 0.0;
    double prev_dt_ = 0.0;
    bool have_history_ = false;
    bool prepared_ = false;
};

/// One IMEX step of size cfg.dt0 from a fresh history (explicit Euler start).
Field2D step(const Field2D& w, double t, const SolverConfig2D& cfg, const OutflowSpec& outflow);

enum class StopReason { completed, radius_lost, blowup_detected };
std::string to_string(StopReason r);

struct Diagnostics2D {
    double t = 0.0;
    double dt = 0.0;
    double sup_w = 0.0;
    double radius = 0.0;
    double theta = 0.0;
    double norm_half = 0.0;     ///< ||w_Phi|| in B^{1/2,0}_psi
    double norm_one = 0.0;      ///< ||w_Phi|| in B^{1,0}_psi
    double norm_dy_half = 0.0;  ///< ||d_y w_Phi|| in B^{1/2,0}_psi
    double energy_lhs = 0.0;
    double energy_rhs = 0.0;
};

struct RunReport {
    StopReason reason = StopReason::completed;
    double t_end = 0.0;
    long steps = 0;
    std::vector<Diagnostics2D> samples;
    Field2D final_field;
    lp::AnalyticityState final_state;
};

/// Stateful run with analyticity-radius tracking and energy diagnostics.
class Run2D {
public:
    Run2D(const Field2D& w0, const SolverConfig2D& cfg, const OutflowSpec& outflow,
          const lp::AnalyticityState& state);

    /// Step size the next advance() would take.
    double proposed_dt();
    /// Advances one step (of size dt when dt > 0). Returns false once the run has stopped.
    bool advance(double dt = 0.0);

    bool finished() const { return finished_; }
    StopReason reason() const { return reason_; }
    double time() const { return t_; }
    const Field2D& field() const { return w_; }
    const lp::AnalyticityState& state() const { return state_; }
    const std::vector<Diagnostics2D>& samples() const { return samples_; }
    long steps() const { return steps_; }

    RunReport report() const;

private:
    struct Measured {
        lp::ThetaNorms theta;
        std::vector<double> half_blocks;
        std::vector<double> dy_blocks;
        std::vector<double> diss_blocks;
        std::vector<double> U_data_blocks;  ///< blocks of e^{<D>} U
        double Ut_data_half = 0.0;          ///< ||e^{<D>} U_t|| in B^{1/2}
    };
    Measured measure() const;
    void record(double dt);
    void finish(StopReason r);

    SolverConfig2D cfg_;
    OutflowSpec outflow_;
    PsiWeight psi_;
    lp::DyadicPartition partition_;
    Stepper2D stepper_;
    Field2D w_;
    double t_ = 0.0;
    lp::AnalyticityState state_;
    long steps_ = 0;
    bool finished_ = false;
    bool prepared_ = false;
    StopReason reason_ = StopReason::completed;
    std::vector<Diagnostics2D> samples_;
    Measured current_;

    // energy-inequality diagnostic: Chemin-Lerner accumulators per quantity
    double data_norm_ = 0.0;
    lp::CheminLernerAccumulator w_inf_, w_diss_, w_dy_, w_theta_, U_data_inf_;
    double U_data_half_sup_ = 0.0;
    double Ut_data_half_sup_ = 0.0;
};

/// Throws ConfigError if w0 violates the boundary conditions or is less analytic than delta.
RunReport run(const Field2D& w0, const SolverConfig2D& cfg, const OutflowSpec& outflow,
              const lp::AnalyticityState& state);

struct ConvergenceRow {
    int n = 0;
    double distance = 0.0;
    double ratio = 0.0;
};

/// For each n runs the regularized problem with n and n+1 in lockstep and records
/// d(n) = sup_t ||(w_{n+1} - w_n)_Phi||_{B^{1/2,0}_psi} and d(n) / (1/n^2 + 1/(n+1)^2).
std::vector<ConvergenceRow> convergence_study(const Field2D& w0, const SolverConfig2D& cfg,
                                              const OutflowSpec& outflow, std::span<const int> n_list);

// Initial-data presets (documented closed forms).

/// amplitude * even_analytic_profile(x) * bump_profile(y).
Field2D analytic_bump(const Grid& grid, double amplitude, double radius, double width);
/// -amplitude * odd_analytic_profile(x) * bump_profile(y): vanishes on x = 0 with
/// -d_x w(0, y) = amplitude * bump_profile(y).
Field2D odd_analytic_bump(const Grid& grid, double amplitude, double radius, double width);
/// Seeded white spectral noise damped by e^{-radius <xi>}, times bump_profile(y), scaled to sup = amplitude.
Field2D random_analytic(const Grid& grid, double amplitude, double radius, double width, std::uint64_t seed);

}  // namespace geoprandtl::solver2d
