#include "geoprandtl/core/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geoprandtl/core/fft.hpp"

namespace geoprandtl {

YProfile::YProfile(VerticalGrid grid, std::vector<double> values)
    : grid_(grid), v_(std::move(values)) {
    if (v_.size() != static_cast<std::size_t>(grid_.nodes()))
        throw std::invalid_argument("YProfile: value count does not match grid");
}

double XSignal::x(int i) const { return 2.0 * std::numbers::pi * L_ * i / nx_; }

double Field2D::sup_abs() const {
    double s = 0.0;
    for (double v : v_) s = std::max(s, std::abs(v));
    return s;
}

bool Field2D::all_finite() const {
    for (double v : v_)
        if (!std::isfinite(v)) return false;
    return true;
}

SpectralField2D to_spectral(const Field2D& f) {
    const Grid& g = f.grid();
    SpectralField2D s(g);
    FftPlan::get(g.nx, g.vertical.nodes()).forward(f.values().data(), s.values().data());
    return s;
}

Field2D to_physical(const SpectralField2D& s) {
    const Grid& g = s.grid();
    Field2D f(g);
    FftPlan::get(g.nx, g.vertical.nodes()).inverse(s.values().data(), f.values().data());
    return f;
}

std::vector<Complex> to_spectral(const XSignal& f) {
    std::vector<Complex> c(static_cast<std::size_t>(f.nx() / 2 + 1));
    FftPlan::get(f.nx(), 1).forward(f.values().data(), c.data());
    return c;
}

XSignal to_physical(const std::vector<Complex>& half_spectrum, double L, int nx) {
    XSignal f(L, nx);
    FftPlan::get(nx, 1).inverse(half_spectrum.data(), f.values().data());
    return f;
}

Field2D dx_spectral(const Field2D& f) {
    SpectralField2D s = to_spectral(f);
    const Grid& g = f.grid();
    const int nm = g.modes();
    for (int j = 0; j < g.vertical.nodes(); ++j) {
        auto r = s.row(j);
        for (int m = 0; m < nm; ++m) r[m] *= Complex(0.0, g.wavenumber(m));
        r[nm - 1] = 0.0;
    }
    return to_physical(s);
}

}  // namespace geoprandtl
