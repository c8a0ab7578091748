#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geoprandtl/core/field.hpp"

namespace geoprandtl::solver1d {

/// Reduced boundary value U~(t) = amplitude * e^{-decay t}. The reduced problem
/// needs U~ <= 0, i.e. amplitude <= 0.
struct ReducedOutflow {
    double amplitude = 0.0;
    double decay = 0.0;

    double value(double t) const;
    /// sup over [0, T] of |U~|.
    double sup_abs(double T) const;
};

struct ReducedConfig {
    ReducedOutflow Utilde{};
    YProfile w0{};
    double T = 1.0;
    double dt0 = 1e-3;
    double dt_min = 1e-6;
    double blowup_threshold = 1e6;
    /// Advective guard dt <= cfl * dy / max(1, sup |d_y^{-1}(w + U~)|).
    double cfl = 0.5;

    /// Throws ConfigError naming the violated constraint (w0(0) = -U~(0), w0 >= 0, ...).
    void validate() const;
};

/// Standard data: amplitude * bump_profile(y, width) + (-U~(0)) e^{-(y/width)^2},
/// zeroed at Ymax. Nonnegative whenever U~(0) <= 0.
YProfile bump_data(const VerticalGrid& grid, double amplitude, double width, double Utilde0);

/// Tendency w^2 - d_y^{-1}(w + U~) d_y w + 2 U~ w - int_{+inf}^y w + d_y^2 w.
YProfile rhs_reduced(const YProfile& w, double t, const ReducedConfig& cfg);

enum class Outcome { blowup, survived };
std::string to_string(Outcome o);

struct StepRecord {
    double t = 0.0;
    double dt = 0.0;
    double sup_w = 0.0;
    double min_w = 0.0;
    /// sup |d_y^{-1}(w + U~)|, the transport speed.
    double sup_transport = 0.0;
};

struct BlowupReport {
    Outcome outcome = Outcome::survived;
    /// Last stable time (blowup) or the horizon reached (survived).
    double t_star = 0.0;
    /// Time of the step that tripped detection (blowup only).
    double t_bracket = 0.0;
    std::string trigger;
    std::vector<StepRecord> series;
    YProfile final_w;
};

/// Called at t = 0 and after every accepted step with the current state.
using StepObserver = std::function<void(double t, const YProfile& w)>;

/// IMEX integration (CN diffusion, explicit Euler start then variable-step AB2)
/// with dt = min(dt0 / max(1, sup|w|/10), CFL guard). Detects blowup when
/// sup|w| > threshold or dt < dt_min. Throws NumericalError
/// "instability (reduce dt0)" on non-finite values before detection.
BlowupReport run_until_blowup(const ReducedConfig& cfg, const StepObserver& observer = {});

struct PositivityReport {
    double min_w = 0.0;
    double sup_w = 0.0;
    bool pass = true;
};

/// Passes when min w >= -1e-8 sup|w| over the whole history.
PositivityReport positivity_check(const std::vector<StepRecord>& series);

}  // namespace geoprandtl::solver1d
