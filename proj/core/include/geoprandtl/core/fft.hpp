#pragma once

#include <complex>

namespace geoprandtl {

/// Batched real<->complex FFT over `rows` contiguous rows of length n.
/// Plans are created once per (n, rows) and shared; execution is thread-safe.
class FftPlan {
public:
    static const FftPlan& get(int n, int rows);

    /// in: rows*n reals; out: rows*(n/2+1) complex, normalized by 1/n.
    void forward(const double* in, std::complex<double>* out) const;
    /// in: rows*(n/2+1) complex (not modified); out: rows*n reals.
    void inverse(const std::complex<double>* in, double* out) const;

    int n() const { return n_; }
    int rows() const { return rows_; }

    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
    ~FftPlan();

private:
    FftPlan(int n, int rows);

    int n_;
    int rows_;
    void* forward_plan_;
    void* inverse_plan_;
};

}  // namespace geoprandtl
