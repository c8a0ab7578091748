#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

namespace oracle {

/// Adaptive Gauss-Kronrod integral of f over [a, b].
template <class F>
double integrate(F&& f, double a, double b) {
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-14);
}

/// erf by quadrature of the Gaussian.
inline double erf(double z) {
    return 2.0 / std::sqrt(std::numbers::pi) * integrate([](double s) { return std::exp(-s * s); }, 0.0, z);
}

/// erfc by quadrature of the Gaussian tail (no cancellation against 1).
inline double erfc(double z) {
    return 2.0 / std::sqrt(std::numbers::pi) * integrate([](double s) { return std::exp(-s * s); }, z, z + 40.0);
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    auto dir = std::filesystem::temp_directory_path() /
               ("geoprandtl_" + tag + "_" + std::to_string(stamp) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace oracle
