#pragma once

#include <span>
#include <vector>

#include "geoprandtl/core/field.hpp"
#include "geoprandtl/core/weights.hpp"
#include "geoprandtl/lp/partition.hpp"

namespace geoprandtl::lp {

Field2D dyadic_block(const Field2D& u, int k, const DyadicPartition& p);
XSignal dyadic_block(const XSignal& u, int k, const DyadicPartition& p);

/// sum_k 2^{ks} ||Delta_k u||_{L^2(x)}.
double besov_norm(const XSignal& u, double s, const DyadicPartition& p);
double besov_norm(const XSignal& u, double s);

/// sum_{j<=l} sum_k 2^{ks} ||e^psi Delta_k d_y^j u||_{L^2(x,y)}, l in {0, 1}.
double weighted_besov_norm(const Field2D& u, double s, int l, double t, const PsiWeight& psi,
                           const DyadicPartition& p);
double weighted_besov_norm(const Field2D& u, double s, int l, double t, const PsiWeight& psi);

// Building blocks shared by the norms above and the solvers' per-step diagnostics.
// Mode energies hold, per half-spectrum mode m, the full-spectrum contribution
// mult_m * 2 pi L * int weight(y) |c_m(y)|^2 dy, so a block norm is
// sqrt(sum_m multiplier(k, m)^2 * E_m).

/// Energies of e^psi d_y^derivative u, optionally times an extra y-weight
/// (e.g. the dissipation weight) sampled at the y nodes.
std::vector<double> mode_energies(const SpectralField2D& u, double t, const PsiWeight& psi, int derivative,
                                  std::span<const double> extra_weight = {});
/// Energies of an x-signal: mult_m * 2 pi L * |c_m|^2.
std::vector<double> mode_energies(std::span<const Complex> half_spectrum, double L, int nx);

/// ||Delta_k .||_{L^2} for k = -1..kmax (index k+1).
std::vector<double> block_norms(std::span<const double> energies, const DyadicPartition& p);
/// sum_k 2^{ks} norms[k+1].
double besov_sum(std::span<const double> norms, double s);

enum class TimeExponent { two, infinity };

/// Running Chemin-Lerner norm: the dyadic sum is taken outside the time integral.
/// Per block k, p = 2 accumulates the trapezoid of f(t) ||Delta_k .||^2 and
/// p = infinity the sup over t of ||Delta_k .||.
class CheminLernerAccumulator {
public:
    CheminLernerAccumulator() = default;
    explicit CheminLernerAccumulator(int blocks) : integral_(blocks, 0.0), sup_(blocks, 0.0) {}

    void push(double t, double f, std::span<const double> block_norms);
    double value(double s, TimeExponent p) const;
    bool empty() const { return samples_ == 0; }

private:
    std::vector<double> integral_;
    std::vector<double> sup_;
    std::vector<double> last_sq_;
    double last_t_ = 0.0;
    double last_f_ = 0.0;
    long samples_ = 0;
};

struct Snapshot {
    double t;
    Field2D field;
};

/// Chemin-Lerner norm of a time-ordered history. f holds f(t) at the history
/// times (used for p = 2 only). Throws std::invalid_argument on empty history.
double chemin_lerner_norm(std::span<const Snapshot> history, double s, int l, const PsiWeight& psi,
                          std::span<const double> f, TimeExponent p);

}  // namespace geoprandtl::lp
