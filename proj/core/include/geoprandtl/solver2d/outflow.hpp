#pragma once

#include "geoprandtl/core/field.hpp"

namespace geoprandtl::solver2d {

/// Closed-form outflow U(t, x) = amplitude * e^{-decay t} * shape(x / L).
struct OutflowSpec {
    enum class Shape { zero, cosine, sine };

    Shape shape = Shape::zero;
    double amplitude = 0.0;
    double decay = 0.0;
    double L = 1.0;

    static OutflowSpec zero() { return {}; }
    static OutflowSpec cosine(double amplitude, double L, double decay = 0.0) {
        return {Shape::cosine, amplitude, decay, L};
    }
    static OutflowSpec sine(double amplitude, double L, double decay = 0.0) {
        return {Shape::sine, amplitude, decay, L};
    }

    bool is_zero() const { return shape == Shape::zero || amplitude == 0.0; }

    double U(double t, double x) const;
    double U_t(double t, double x) const;
    double U_x(double t, double x) const;

    XSignal sample(double t, int nx) const;
    XSignal sample_t(double t, int nx) const;

    /// Boundary value of the reduced problem on x = 0: U~(t) = -U_x(t, 0).
    double reduced(double t) const { return -U_x(t, 0.0); }
    /// sup over [0, T] of |U~|.
    double reduced_sup(double T) const;
};

}  // namespace geoprandtl::solver2d
