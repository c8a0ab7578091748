#include "geoprandtl/solver2d/outflow.hpp"

#include <algorithm>
#include <cmath>

namespace geoprandtl::solver2d {

namespace {

double shape_value(OutflowSpec::Shape s, double z) {
    switch (s) {
        case OutflowSpec::Shape::cosine: return std::cos(z);
        case OutflowSpec::Shape::sine: return std::sin(z);
        default: return 0.0;
    }
}

double shape_slope(OutflowSpec::Shape s, double z) {
    switch (s) {
        case OutflowSpec::Shape::cosine: return -std::sin(z);
        case OutflowSpec::Shape::sine: return std::cos(z);
        default: return 0.0;
    }
}

}  // namespace

double OutflowSpec::U(double t, double x) const {
    return amplitude * std::exp(-decay * t) * shape_value(shape, x / L);
}

double OutflowSpec::U_t(double t, double x) const { return -decay * U(t, x); }

double OutflowSpec::U_x(double t, double x) const {
    return amplitude * std::exp(-decay * t) * shape_slope(shape, x / L) / L;
}

XSignal OutflowSpec::sample(double t, int nx) const {
    XSignal s(L, nx);
    for (int i = 0; i < nx; ++i) s[i] = U(t, s.x(i));
    return s;
}

XSignal OutflowSpec::sample_t(double t, int nx) const {
    XSignal s(L, nx);
    for (int i = 0; i < nx; ++i) s[i] = U_t(t, s.x(i));
    return s;
}

double OutflowSpec::reduced_sup(double T) const {
    // the envelope is monotone, so the sup sits at an endpoint
    return std::max(std::abs(reduced(0.0)), std::abs(reduced(T)));
}

}  // namespace geoprandtl::solver2d
