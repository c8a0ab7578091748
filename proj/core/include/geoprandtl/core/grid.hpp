#pragma once

#include <numbers>

namespace geoprandtl {

/// Uniform vertical axis y_j = j*dy, j = 0..ny, on [0, ymax].
struct VerticalGrid {
    double ymax = 40.0;
    int ny = 800;

    double dy() const { return ymax / ny; }
    /// y(ny) == ymax exactly.
    double y(int j) const { return ymax * (static_cast<double>(j) / ny); }
    int nodes() const { return ny + 1; }

    /// Throws ConfigError unless ny >= 16 and ymax > 0.
    void validate() const;
};

/// Periodic x in [0, 2*pi*L) with nx nodes times a VerticalGrid.
struct Grid {
    double L = 1.0;
    int nx = 32;
    VerticalGrid vertical{};
    double t0 = 0.0;

    double dx() const { return 2.0 * std::numbers::pi * L / nx; }
    double x(int i) const { return dx() * i; }
    /// Number of stored half-spectrum modes (0..nx/2).
    int modes() const { return nx / 2 + 1; }
    /// Frequency of half-spectrum mode m: xi_m = m / L.
    double wavenumber(int m) const { return m / L; }
    double max_wavenumber() const { return wavenumber(nx / 2); }

    int ny() const { return vertical.ny; }
    double dy() const { return vertical.dy(); }
    double y(int j) const { return vertical.y(j); }
    double ymax() const { return vertical.ymax; }

    /// Throws ConfigError unless nx >= 8 is a power of two and the vertical axis is valid.
    void validate() const;
};

}  // namespace geoprandtl
