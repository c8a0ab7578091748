#include "geoprandtl/core/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace geoprandtl {

namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

const FftPlan& FftPlan::get(int n, int rows) {
    static std::map<std::pair<int, int>, std::unique_ptr<FftPlan>> cache;
    std::lock_guard lock(plan_mutex());
    auto& slot = cache[{n, rows}];
    if (!slot) slot.reset(new FftPlan(n, rows));
    return *slot;
}

FftPlan::FftPlan(int n, int rows) : n_(n), rows_(rows) {
    const int nc = n / 2 + 1;
    std::vector<double> real(static_cast<std::size_t>(n) * rows);
    std::vector<std::complex<double>> cplx(static_cast<std::size_t>(nc) * rows);
    auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
    // ESTIMATE keeps the chosen algorithm, and therefore the rounding, identical run to run.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_plan_ = fftw_plan_many_dft_r2c(1, &n, rows, real.data(), nullptr, 1, n, c, nullptr, 1, nc, flags);
    // c2r overwrites its input, so inverse() always runs on a scratch copy.
    inverse_plan_ = fftw_plan_many_dft_c2r(1, &n, rows, c, nullptr, 1, nc, real.data(), nullptr, 1, n, flags);
}

FftPlan::~FftPlan() {
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void FftPlan::forward(const double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    const double scale = 1.0 / n_;
    const std::size_t total = static_cast<std::size_t>(n_ / 2 + 1) * rows_;
    for (std::size_t i = 0; i < total; ++i) out[i] *= scale;
}

void FftPlan::inverse(const std::complex<double>* in, double* out) const {
    const std::size_t total = static_cast<std::size_t>(n_ / 2 + 1) * rows_;
    std::vector<std::complex<double>> scratch(in, in + total);
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(scratch.data()),
                         out);
}

}  // namespace geoprandtl
