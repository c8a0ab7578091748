#pragma once

#include <span>
#include <vector>

namespace geoprandtl {

/// Factored constant-coefficient tridiagonal system for the interior unknowns of a
/// Dirichlet problem:  -r u_{j-1} + d u_j - r u_{j+1} = rhs_j,  j = 1..n-2,
/// with u_0 and u_{n-1} prescribed. Thomas algorithm; factor once, solve many.
class DirichletTridiagonal {
public:
    DirichletTridiagonal() = default;
    /// n = total node count (including both boundaries). Throws NumericalError on a zero pivot.
    DirichletTridiagonal(int n, double off, double diag);

    /// Solves in place: on entry u holds boundary values at 0 and n-1 and the
    /// right-hand side in the interior; on exit the interior holds the solution.
    template <class T>
    void solve(std::span<T> u) const;

    int size() const { return n_; }

private:
    int n_ = 0;
    double off_ = 0.0;
    std::vector<double> cprime_;
    std::vector<double> inv_pivot_;
};

template <class T>
void DirichletTridiagonal::solve(std::span<T> u) const {
    const int m = n_ - 2;
    // boundary contributions move to the right-hand side
    u[1] += off_ * u[0];
    u[m] += off_ * u[n_ - 1];
    // forward sweep on interior index i = 0..m-1 (node i+1)
    u[1] *= inv_pivot_[0];
    for (int i = 1; i < m; ++i) u[i + 1] = (u[i + 1] + off_ * u[i]) * inv_pivot_[i];
    for (int i = m - 2; i >= 0; --i) u[i + 1] -= cprime_[i] * u[i + 2];
}

}  // namespace geoprandtl
