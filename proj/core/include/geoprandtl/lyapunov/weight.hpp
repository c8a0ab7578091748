#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace geoprandtl::lyapunov {

struct RhoParams {
    double A = 2.0;
    double M = 4.5;
    double B = 5.0;
    double gamma_rho = 2.0;
    double h = 400.0;
    double C_f = 1.0;

    /// A = 2, M = 4.5, B = 5, gamma = 2, h = 400, C_f = 1.
    static RhoParams reference() { return {}; }
};

/// Piecewise weight rho = f on [0, B), g on [B, inf):
///   f(y) = k y on [0, A),  a y^2 + b y + c on [A, B);  g(y) = (y + h)^{-gamma}.
/// Coefficients make rho C^1 at A and B.
struct RhoWeight {
    RhoParams p;
    double a = 0.0, b = 0.0, c = 0.0, k = 0.0;
    double beta = 0.0;
    /// ||rho||_{L^1(0, inf)}; +inf when gamma <= 1.
    double rho_L1 = 0.0;

    double f(double y) const;
    double f_prime(double y) const;
    /// One-sided at A: `from_below` selects the linear piece.
    double f_second(double y, bool from_below = false) const;
    double g(double y) const;
    double g_prime(double y) const;
    double g_second(double y) const;
};

/// Throws InfeasibleWeightError "weight matching relations infeasible for these
/// parameters" when k <= 0 or a >= 0, and ConfigError on 0 < A < M < B, h > 0,
/// gamma > 0 violations. gamma <= 1 is accepted (rho_L1 = inf) so that the
/// verifier can report the integrability failure.
RhoWeight build_weight(double A, double M, double B, double gamma_rho, double h, double C_f);
RhoWeight build_weight(const RhoParams& p);

double eval_rho(const RhoWeight& w, double y);
double eval_rho_prime(const RhoWeight& w, double y);
/// rho'' with the one-sided limit chosen by `from_below` at the breakpoints A and B.
double eval_rho_second(const RhoWeight& w, double y, bool from_below = false);
/// int_0^y rho.
double eval_rho_primitive(const RhoWeight& w, double y);
/// int_y^inf rho for y >= B (+inf when gamma <= 1).
double rho_tail_mass(const RhoWeight& w, double y);

/// eta(y) = smooth_ramp((y - M) / (B - M)).
double eval_eta(const RhoWeight& w, double y);
double eval_eta_prime(const RhoWeight& w, double y);

enum class CheckedBy { closed_form, dense_sampling, sufficient_condition };
std::string to_string(CheckedBy c);

struct ConstraintRecord {
    std::string name;
    CheckedBy checked_by = CheckedBy::closed_form;
    /// Smallest slack observed (normalized for sampled properties, raw lhs - rhs for sufficient conditions).
    double margin = 0.0;
    bool pass = false;
};

struct ConstraintReport {
    /// F1-F4, G1-G3, FG1-FG2, each exactly once.
    std::vector<ConstraintRecord> direct;
    /// Sufficient conditions of the hand construction, reported independently.
    std::vector<ConstraintRecord> sufficient;

    bool direct_pass() const;
    bool sufficient_pass() const;
    /// nullptr when absent.
    const ConstraintRecord* find(const std::string& name) const;
};

ConstraintReport verify_constraints(const RhoWeight& w, int samples = 10000);

/// 2(1 - beta) / ||rho||_1, the Riccati growth constant.
double growth_constant(const RhoWeight& w);

struct SearchRange {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;
    std::vector<double> points() const;
};

struct SearchRanges {
    SearchRange A, M, B, gamma_rho, h, C_f;
};

/// Grid search over the ranges (random subset of the grid when it exceeds budget).
/// Returns weights passing every direct property, sorted by growth_constant descending.
std::vector<RhoWeight> search_parameters(const SearchRanges& ranges, long budget, std::uint64_t seed = 1,
                                         int samples = 2000);

}  // namespace geoprandtl::lyapunov
