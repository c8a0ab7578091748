#include "geoprandtl/core/tridiagonal.hpp"

#include <cmath>

#include "geoprandtl/core/error.hpp"

namespace geoprandtl {

DirichletTridiagonal::DirichletTridiagonal(int n, double off, double diag) : n_(n), off_(off) {
    const int m = n - 2;
    cprime_.resize(static_cast<std::size_t>(m));
    inv_pivot_.resize(static_cast<std::size_t>(m));
    double prev = 0.0;
    for (int i = 0; i < m; ++i) {
        const double pivot = diag + off * prev;
        if (pivot == 0.0 || !std::isfinite(pivot)) throw NumericalError("singular tridiagonal system");
        inv_pivot_[i] = 1.0 / pivot;
        cprime_[i] = -off * inv_pivot_[i];
        prev = cprime_[i];
    }
}

}  // namespace geoprandtl
