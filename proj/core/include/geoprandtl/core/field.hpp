#pragma once

#include <complex>
#include <span>
#include <vector>

#include "geoprandtl/core/grid.hpp"

namespace geoprandtl {

using Complex = std::complex<double>;

/// Real profile on the nodes of a VerticalGrid.
class YProfile {
public:
    YProfile() = default;
    explicit YProfile(VerticalGrid grid, double value = 0.0)
        : grid_(grid), v_(static_cast<std::size_t>(grid.nodes()), value) {}
    YProfile(VerticalGrid grid, std::vector<double> values);

    const VerticalGrid& grid() const { return grid_; }
    std::size_t size() const { return v_.size(); }
    double& operator[](std::size_t j) { return v_[j]; }
    double operator[](std::size_t j) const { return v_[j]; }
    std::span<double> values() { return v_; }
    std::span<const double> values() const { return v_; }

private:
    VerticalGrid grid_{};
    std::vector<double> v_;
};

/// Real periodic signal of x on nx nodes over [0, 2*pi*L).
class XSignal {
public:
    XSignal() = default;
    XSignal(double L, int nx, double value = 0.0)
        : L_(L), nx_(nx), v_(static_cast<std::size_t>(nx), value) {}

    double L() const { return L_; }
    int nx() const { return nx_; }
    double x(int i) const;
    double& operator[](std::size_t i) { return v_[i]; }
    double operator[](std::size_t i) const { return v_[i]; }
    std::span<double> values() { return v_; }
    std::span<const double> values() const { return v_; }

private:
    double L_ = 1.0;
    int nx_ = 0;
    std::vector<double> v_;
};

/// Physical-space 2-D field; row j holds the nx values at height y_j.
class Field2D {
public:
    Field2D() = default;
    explicit Field2D(const Grid& grid, double value = 0.0)
        : grid_(grid),
          v_(static_cast<std::size_t>(grid.nx) * grid.vertical.nodes(), value) {}

    const Grid& grid() const { return grid_; }
    double& operator()(int i, int j) { return v_[static_cast<std::size_t>(j) * grid_.nx + i]; }
    double operator()(int i, int j) const { return v_[static_cast<std::size_t>(j) * grid_.nx + i]; }
    std::span<double> row(int j) { return {v_.data() + static_cast<std::size_t>(j) * grid_.nx, static_cast<std::size_t>(grid_.nx)}; }
    std::span<const double> row(int j) const { return {v_.data() + static_cast<std::size_t>(j) * grid_.nx, static_cast<std::size_t>(grid_.nx)}; }
    std::span<double> values() { return v_; }
    std::span<const double> values() const { return v_; }

    double sup_abs() const;
    bool all_finite() const;

private:
    Grid grid_{};
    std::vector<double> v_;
};

/// Spectral-in-x field: half spectrum c_m(y_j), m = 0..nx/2, normalized so that
/// f(x) = sum_m c_m e^{i m x / L} over the full (conjugate-symmetric) spectrum.
class SpectralField2D {
public:
    SpectralField2D() = default;
    explicit SpectralField2D(const Grid& grid)
        : grid_(grid),
          c_(static_cast<std::size_t>(grid.modes()) * grid.vertical.nodes()) {}

    const Grid& grid() const { return grid_; }
    int modes() const { return grid_.modes(); }
    Complex& operator()(int m, int j) { return c_[static_cast<std::size_t>(j) * grid_.modes() + m]; }
    Complex operator()(int m, int j) const { return c_[static_cast<std::size_t>(j) * grid_.modes() + m]; }
    std::span<Complex> row(int j) { return {c_.data() + static_cast<std::size_t>(j) * grid_.modes(), static_cast<std::size_t>(grid_.modes())}; }
    std::span<const Complex> row(int j) const { return {c_.data() + static_cast<std::size_t>(j) * grid_.modes(), static_cast<std::size_t>(grid_.modes())}; }
    std::span<Complex> values() { return c_; }
    std::span<const Complex> values() const { return c_; }

private:
    Grid grid_{};
    std::vector<Complex> c_;
};

/// Multiplicity of half-spectrum mode m in the full spectrum (1 for 0 and nx/2, else 2).
inline double mode_multiplicity(int m, int nx) { return (m == 0 || 2 * m == nx) ? 1.0 : 2.0; }

SpectralField2D to_spectral(const Field2D& f);
Field2D to_physical(const SpectralField2D& s);
std::vector<Complex> to_spectral(const XSignal& f);
XSignal to_physical(const std::vector<Complex>& half_spectrum, double L, int nx);

/// Spectral x-derivative (Nyquist mode dropped).
Field2D dx_spectral(const Field2D& f);

}  // namespace geoprandtl
