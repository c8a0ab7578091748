#pragma once

#include <cstddef>
#include <span>

// Vertical finite-difference and quadrature operators on a uniform y grid.
// All are templated on the value type so the same stencils serve real
// profiles and spectral coefficients.

namespace geoprandtl::ops {

template <class T>
T trapezoid(std::span<const T> f, double dy) {
    const std::size_t n = f.size();
    if (n < 2) return T{};
    T s = 0.5 * (f[0] + f[n - 1]);
    for (std::size_t j = 1; j + 1 < n; ++j) s += f[j];
    return s * dy;
}

/// out[j] = int_0^{y_j} f (cumulative trapezoid, out[0] = 0).
template <class T>
void cumulative_trapezoid(std::span<const T> f, double dy, std::span<T> out) {
    out[0] = T{};
    for (std::size_t j = 1; j < f.size(); ++j) out[j] = out[j - 1] + 0.5 * dy * (f[j - 1] + f[j]);
}

/// out[j] = int_{y_j}^{ymax} f (reverse cumulative trapezoid, out[last] = 0).
template <class T>
void upper_trapezoid(std::span<const T> f, double dy, std::span<T> out) {
    const std::size_t n = f.size();
    out[n - 1] = T{};
    for (std::size_t j = n - 1; j-- > 0;) out[j] = out[j + 1] + 0.5 * dy * (f[j] + f[j + 1]);
}

/// Centered first derivative; second-order one-sided at both ends.
template <class T>
void first_derivative(std::span<const T> f, double dy, std::span<T> out) {
    const std::size_t n = f.size();
    const double h2 = 0.5 / dy;
    for (std::size_t j = 1; j + 1 < n; ++j) out[j] = h2 * (f[j + 1] - f[j - 1]);
    out[0] = h2 * (-3.0 * f[0] + 4.0 * f[1] - f[2]);
    out[n - 1] = h2 * (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]);
}

/// Three-point second derivative; second-order one-sided (4-point) at both ends.
template <class T>
void second_derivative(std::span<const T> f, double dy, std::span<T> out) {
    const std::size_t n = f.size();
    const double r = 1.0 / (dy * dy);
    for (std::size_t j = 1; j + 1 < n; ++j) out[j] = r * (f[j + 1] - 2.0 * f[j] + f[j - 1]);
    out[0] = r * (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]);
    out[n - 1] = r * (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]);
}

}  // namespace geoprandtl::ops
