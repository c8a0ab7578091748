#pragma once

#include <optional>
#include <vector>

#include "geoprandtl/lyapunov/weight.hpp"
#include "geoprandtl/solver1d/solver1d.hpp"

namespace geoprandtl::lyapunov {

struct TraceSample {
    double t = 0.0;
    double sup_w = 0.0;
    double min_w = 0.0;
    double G = 0.0;
    /// Sum of lyapunov_terms (J1..J7 plus the Ymax boundary term).
    double terms_sum = 0.0;
    /// Three-point nonuniform centered difference of G; absent at the first and last sample.
    std::optional<double> dGdt_numeric;
};

struct LyapunovTrace {
    solver1d::BlowupReport run;
    std::vector<TraceSample> samples;
    /// sup |U~| over [0, T].
    double Utilde_sup = 0.0;

    /// dG/dt used for the growth check: numeric where available, else the term sum.
    double dGdt(std::size_t i) const;
};

/// Runs solver1d and evaluates G and the identity terms at every accepted step.
LyapunovTrace trace_reduced_run(const RhoWeight& rho, const solver1d::ReducedConfig& cfg);

}  // namespace geoprandtl::lyapunov
