#include "geoprandtl/lp/norms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geoprandtl/core/ops.hpp"

namespace geoprandtl::lp {

Field2D dyadic_block(const Field2D& u, int k, const DyadicPartition& p) {
    SpectralField2D s = to_spectral(u);
    const int nm = s.modes();
    for (int j = 0; j < u.grid().vertical.nodes(); ++j) {
        auto r = s.row(j);
        for (int m = 0; m < nm; ++m) r[m] *= p.multiplier(k, m);
    }
    return to_physical(s);
}

XSignal dyadic_block(const XSignal& u, int k, const DyadicPartition& p) {
    auto c = to_spectral(u);
    for (std::size_t m = 0; m < c.size(); ++m) c[m] *= p.multiplier(k, static_cast<int>(m));
    return to_physical(c, u.L(), u.nx());
}

std::vector<double> mode_energies(std::span<const Complex> half_spectrum, double L, int nx) {
    std::vector<double> e(half_spectrum.size());
    const double period = 2.0 * std::numbers::pi * L;
    for (std::size_t m = 0; m < e.size(); ++m)
        e[m] = mode_multiplicity(static_cast<int>(m), nx) * period * std::norm(half_spectrum[m]);
    return e;
}

std::vector<double> mode_energies(const SpectralField2D& u, double t, const PsiWeight& psi, int derivative,
                                  std::span<const double> extra_weight) {
    const Grid& g = u.grid();
    const int nm = g.modes();
    const int ny = g.vertical.nodes();
    const double dy = g.dy();
    const double period = 2.0 * std::numbers::pi * g.L;

    std::vector<double> w2(static_cast<std::size_t>(ny));
    for (int j = 0; j < ny; ++j) {
        const double e = std::exp(psi.value(t, g.y(j)));
        w2[j] = e * e * (extra_weight.empty() ? 1.0 : extra_weight[j]);
    }

    std::vector<double> energies(static_cast<std::size_t>(nm));
    std::vector<Complex> col(static_cast<std::size_t>(ny));
    std::vector<Complex> dcol(static_cast<std::size_t>(ny));
    std::vector<double> integrand(static_cast<std::size_t>(ny));
    for (int m = 0; m < nm; ++m) {
        for (int j = 0; j < ny; ++j) col[j] = u(m, j);
        const std::vector<Complex>* src = &col;
        if (derivative == 1) {
            ops::first_derivative<Complex>(col, dy, dcol);
            src = &dcol;
        }
        for (int j = 0; j < ny; ++j) integrand[j] = w2[j] * std::norm((*src)[j]);
        energies[m] = mode_multiplicity(m, g.nx) * period * ops::trapezoid<double>(integrand, dy);
    }
    return energies;
}

std::vector<double> block_norms(std::span<const double> energies, const DyadicPartition& p) {
    std::vector<double> out(static_cast<std::size_t>(p.block_count()));
    for (int k = -1; k <= p.kmax(); ++k) {
        const auto mult = p.block(k);
        double s = 0.0;
        for (std::size_t m = 0; m < energies.size(); ++m) s += mult[m] * mult[m] * energies[m];
        out[static_cast<std::size_t>(k + 1)] = std::sqrt(s);
    }
    return out;
}

double besov_sum(std::span<const double> norms, double s) {
    double total = 0.0;
    for (std::size_t i = 0; i < norms.size(); ++i) total += std::exp2(s * (static_cast<double>(i) - 1.0)) * norms[i];
    return total;
}

double besov_norm(const XSignal& u, double s, const DyadicPartition& p) {
    const auto c = to_spectral(u);
    return besov_sum(block_norms(mode_energies(c, u.L(), u.nx()), p), s);
}

double besov_norm(const XSignal& u, double s) { return besov_norm(u, s, build_partition(u.L(), u.nx())); }

double weighted_besov_norm(const Field2D& u, double s, int l, double t, const PsiWeight& psi,
                           const DyadicPartition& p) {
    if (l < 0 || l > 1) throw std::invalid_argument("weighted_besov_norm: l must be 0 or 1");
    const SpectralField2D c = to_spectral(u);
    double total = 0.0;
    for (int j = 0; j <= l; ++j) total += besov_sum(block_norms(mode_energies(c, t, psi, j), p), s);
    return total;
}

double weighted_besov_norm(const Field2D& u, double s, int l, double t, const PsiWeight& psi) {
    return weighted_besov_norm(u, s, l, t, psi, build_partition(u.grid()));
}

void CheminLernerAccumulator::push(double t, double f, std::span<const double> norms) {
    std::vector<double> sq(norms.size());
    for (std::size_t k = 0; k < norms.size(); ++k) {
        sq[k] = norms[k] * norms[k];
        sup_[k] = std::max(sup_[k], norms[k]);
        if (samples_ > 0) integral_[k] += 0.5 * (t - last_t_) * (last_f_ * last_sq_[k] + f * sq[k]);
    }
    last_sq_ = std::move(sq);
    last_t_ = t;
    last_f_ = f;
    ++samples_;
}

double CheminLernerAccumulator::value(double s, TimeExponent p) const {
    if (p == TimeExponent::infinity) return besov_sum(sup_, s);
    std::vector<double> r(integral_.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = std::sqrt(std::max(0.0, integral_[k]));
    return besov_sum(r, s);
}

double chemin_lerner_norm(std::span<const Snapshot> history, double s, int l, const PsiWeight& psi,
                          std::span<const double> f, TimeExponent p) {
    if (history.empty()) throw std::invalid_argument("chemin_lerner_norm: empty history");
    if (p == TimeExponent::two && f.size() != history.size())
        throw std::invalid_argument("chemin_lerner_norm: f must be sampled at every history time");
    const DyadicPartition part = build_partition(history.front().field.grid());
    double total = 0.0;
    for (int j = 0; j <= l; ++j) {
        CheminLernerAccumulator acc(part.block_count());
        for (std::size_t i = 0; i < history.size(); ++i) {
            const auto c = to_spectral(history[i].field);
            const auto e = mode_energies(c, history[i].t, psi, j);
            acc.push(history[i].t, f.empty() ? 1.0 : f[i], block_norms(e, part));
        }
        total += acc.value(s, p);
    }
    return total;
}

}  // namespace geoprandtl::lp
