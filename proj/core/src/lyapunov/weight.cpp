#include "geoprandtl/lyapunov/weight.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <tuple>

#include "geoprandtl/core/error.hpp"
#include "geoprandtl/core/parallel.hpp"
#include "geoprandtl/lp/partition.hpp"

namespace geoprandtl::lyapunov {

double RhoWeight::f(double y) const {
    if (y < p.A) return k * y;
    return (a * y + b) * y + c;
}

double RhoWeight::f_prime(double y) const { return y < p.A ? k : 2.0 * a * y + b; }

double RhoWeight::f_second(double y, bool from_below) const {
    const bool linear = from_below ? y <= p.A : y < p.A;
    return linear ? 0.0 : 2.0 * a;
}

double RhoWeight::g(double y) const { return std::pow(y + p.h, -p.gamma_rho); }

double RhoWeight::g_prime(double y) const { return -p.gamma_rho * std::pow(y + p.h, -p.gamma_rho - 1.0); }

double RhoWeight::g_second(double y) const {
    return p.gamma_rho * (p.gamma_rho + 1.0) * std::pow(y + p.h, -p.gamma_rho - 2.0);
}

RhoWeight build_weight(double A, double M, double B, double gamma_rho, double h, double C_f) {
    if (!(A > 0.0 && A < M && M < B)) throw ConfigError("weight: breakpoints must satisfy 0 < A < M < B");
    if (!(h > 0.0)) throw ConfigError("weight: h must be > 0");
    if (!(gamma_rho > 0.0)) throw ConfigError("weight: gamma_rho must be > 0");
    if (!(C_f > 0.0)) throw ConfigError("weight: C_f must be > 0");

    RhoWeight w;
    w.p = {A, M, B, gamma_rho, h, C_f};
    const double g = gamma_rho;
    const double tail = std::pow(B + h, g + 1.0);
    const double K = (B * (1.0 + g) + h) / tail;
    const double d = B * B - A * A;
    w.a = -K / d;
    w.b = -g / tail + 2.0 * B * K / d;
    w.c = -A * A * K / d;
    w.k = -g / tail + 2.0 * K / (B + A);
    w.beta = (2.0 * g + 1.0) / (2.0 * g + 2.0);
    if (!(w.k > 0.0) || !(w.a < 0.0))
        throw InfeasibleWeightError("weight matching relations infeasible for these parameters (k <= 0 or a >= 0)");

    auto quad_primitive = [&](double y) { return ((w.a / 3.0 * y + w.b / 2.0) * y + w.c) * y; };
    const double head = 0.5 * w.k * A * A + quad_primitive(B) - quad_primitive(A);
    const double tail_mass =
        g > 1.0 ? 1.0 / ((g - 1.0) * std::pow(B + h, g - 1.0)) : std::numeric_limits<double>::infinity();
    w.rho_L1 = head + tail_mass;
    return w;
}

RhoWeight build_weight(const RhoParams& p) { return build_weight(p.A, p.M, p.B, p.gamma_rho, p.h, p.C_f); }

double eval_rho(const RhoWeight& w, double y) { return y < w.p.B ? w.f(y) : w.g(y); }

double eval_rho_prime(const RhoWeight& w, double y) { return y < w.p.B ? w.f_prime(y) : w.g_prime(y); }

double eval_rho_second(const RhoWeight& w, double y, bool from_below) {
    const bool head = from_below ? y <= w.p.B : y < w.p.B;
    return head ? w.f_second(y, from_below) : w.g_second(y);
}

double eval_rho_primitive(const RhoWeight& w, double y) {
    const double A = w.p.A, B = w.p.B;
    auto quad_primitive = [&](double s) { return ((w.a / 3.0 * s + w.b / 2.0) * s + w.c) * s; };
    if (y < A) return 0.5 * w.k * y * y;
    const double upto_A = 0.5 * w.k * A * A;
    if (y < B) return upto_A + quad_primitive(y) - quad_primitive(A);
    const double upto_B = upto_A + quad_primitive(B) - quad_primitive(A);
    const double g = w.p.gamma_rho;
    if (g == 1.0) return upto_B + std::log((y + w.p.h) / (B + w.p.h));
    return upto_B + (std::pow(B + w.p.h, 1.0 - g) - std::pow(y + w.p.h, 1.0 - g)) / (g - 1.0);
}

double rho_tail_mass(const RhoWeight& w, double y) {
    const double g = w.p.gamma_rho;
    if (g <= 1.0) return std::numeric_limits<double>::infinity();
    return std::pow(y + w.p.h, 1.0 - g) / (g - 1.0);
}

double eval_eta(const RhoWeight& w, double y) { return lp::smooth_ramp((y - w.p.M) / (w.p.B - w.p.M)); }

double eval_eta_prime(const RhoWeight& w, double y) {
    const double span = w.p.B - w.p.M;
    return lp::smooth_ramp_derivative((y - w.p.M) / span) / span;
}

std::string to_string(CheckedBy c) {
    switch (c) {
        case CheckedBy::closed_form: return "closed-form";
        case CheckedBy::dense_sampling: return "dense-sampling";
        case CheckedBy::sufficient_condition: return "sufficient-condition";
    }
    return "unknown";
}

bool ConstraintReport::direct_pass() const {
    return std::all_of(direct.begin(), direct.end(), [](const auto& r) { return r.pass; });
}

bool ConstraintReport::sufficient_pass() const {
    return std::all_of(sufficient.begin(), sufficient.end(), [](const auto& r) { return r.pass; });
}

const ConstraintRecord* ConstraintReport::find(const std::string& name) const {
    for (const auto* list : {&direct, &sufficient})
        for (const auto& r : *list)
            if (r.name == name) return &r;
    return nullptr;
}

namespace {

/// Tolerance on normalized sampled slacks; the non-strict properties hold with
/// equality on the linear piece.
constexpr double sample_tol = 1e-12;

template <class Fn>
void sample_segment(double lo, double hi, int n, bool include_lo, Fn&& fn) {
    for (int i = include_lo ? 0 : 1; i <= n; ++i) fn(lo + (hi - lo) * (static_cast<double>(i) / n));
}

ConstraintRecord sampled(const std::string& name, double min_slack, double scale) {
    const double margin = scale > 0.0 ? min_slack / scale : min_slack;
    return {name, CheckedBy::dense_sampling, margin, margin >= -sample_tol};
}

ConstraintRecord sufficient(const std::string& name, double lhs, double rhs, bool strict = false) {
    const double margin = lhs - rhs;
    return {name, CheckedBy::sufficient_condition, margin, strict ? margin > 0.0 : margin >= 0.0};
}

}  // namespace

ConstraintReport verify_constraints(const RhoWeight& w, int samples) {
    const double A = w.p.A, M = w.p.M, B = w.p.B, g = w.p.gamma_rho, h = w.p.h, Cf = w.p.C_f;
    ConstraintReport rep;

    // sampling over [0, A] (linear piece, from below at A) and [A, B] (quadratic piece)
    struct Sample {
        double y;
        bool from_below;
    };
    std::vector<Sample> pts;
    sample_segment(0.0, A, samples, true, [&](double y) { pts.push_back({y, true}); });
    sample_segment(A, B, samples, true, [&](double y) { pts.push_back({y, false}); });
    auto fval = [&](const Sample& s) { return s.from_below && s.y == A ? w.k * A : w.f(s.y); };
    auto fprime = [&](const Sample& s) { return s.from_below && s.y == A ? w.k : w.f_prime(s.y); };

    double fmax = 0.0;
    for (const auto& s : pts) fmax = std::max(fmax, fval(s));

    {  // F1: f(0) = 0 and f > 0 on (0, B]
        double mn = std::numeric_limits<double>::infinity();
        for (const auto& s : pts)
            if (s.y > 0.0) mn = std::min(mn, fval(s));
        const double margin = mn / fmax;
        rep.direct.push_back({"F1", CheckedBy::dense_sampling, margin, w.f(0.0) == 0.0 && margin > 0.0});
    }
    {  // F2: y f' <= C_f f
        double mn = std::numeric_limits<double>::infinity();
        for (const auto& s : pts) mn = std::min(mn, Cf * fval(s) - s.y * fprime(s));
        rep.direct.push_back(sampled("F2", mn, Cf * fmax));
    }
    {  // F3: int_0^y f + f'' >= 0
        double mn = std::numeric_limits<double>::infinity(), scale = 0.0;
        for (const auto& s : pts) {
            const double prim = eval_rho_primitive(w, s.y);
            const double second = w.f_second(s.y, s.from_below);
            mn = std::min(mn, prim + second);
            scale = std::max(scale, std::abs(prim) + std::abs(second));
        }
        rep.direct.push_back(sampled("F3", mn, scale));
    }
    {  // F4: f'' <= 0
        double mn = std::numeric_limits<double>::infinity(), scale = 0.0;
        for (const auto& s : pts) {
            const double second = w.f_second(s.y, s.from_below);
            mn = std::min(mn, -second);
            scale = std::max(scale, std::abs(second));
        }
        rep.direct.push_back(sampled("F4", mn, scale));
    }
    // G1: g > 0 on [M, inf), g -> 0, g integrable: needs gamma > 1 (M + h > 0 holds since h > 0)
    rep.direct.push_back({"G1", CheckedBy::closed_form, g - 1.0, g > 1.0 && M + h > 0.0});
    // G2: g' < 0 < g''
    rep.direct.push_back({"G2", CheckedBy::closed_form, g, g > 0.0});
    // G3: (g')^2 / (g g'') = gamma / (gamma + 1) <= beta < 1
    {
        const double ratio = g / (g + 1.0);
        const double margin = std::min(w.beta - ratio, 1.0 - w.beta);
        rep.direct.push_back({"G3", CheckedBy::closed_form, margin, margin >= 0.0 && w.beta < 1.0});
    }
    {  // FG1: C^1 matching at B (and at A, inside f)
        const double fB = (w.a * B + w.b) * B + w.c;
        const double dfB = 2.0 * w.a * B + w.b;
        const double kA = w.k * A;
        const double qA = (w.a * A + w.b) * A + w.c;
        const double res = std::max({std::abs(fB - w.g(B)) / w.g(B), std::abs(dfB - w.g_prime(B)) / std::abs(w.g_prime(B)),
                                     std::abs(kA - qA) / kA, std::abs(w.k - (2.0 * w.a * A + w.b)) / w.k});
        rep.direct.push_back({"FG1", CheckedBy::closed_form, 1e-10 - res, res <= 1e-10});
    }
    double printed_min = std::numeric_limits<double>::infinity(), printed_scale = 0.0;
    {  // FG2 on [M, B]: eta (g')^2 / (f g'') <= beta and 2 eta' g' + eta g'' - f'' >= 0
        double first = std::numeric_limits<double>::infinity();
        double second = std::numeric_limits<double>::infinity(), scale = 0.0;
        sample_segment(M, B, samples, true, [&](double y) {
            const double eta = eval_eta(w, y), deta = eval_eta_prime(w, y);
            const double gp = w.g_prime(y), gpp = w.g_second(y);
            const double fpp = w.f_second(y);
            first = std::min(first, w.beta - eta * gp * gp / (w.f(y) * gpp));
            second = std::min(second, 2.0 * deta * gp + eta * gpp - fpp);
            scale = std::max(scale, std::abs(2.0 * deta * gp) + std::abs(eta * gpp) + std::abs(fpp));
            printed_min = std::min(printed_min, 2.0 * deta * gp + eta * w.g(y) - fpp);
            printed_scale = std::max(printed_scale, std::abs(2.0 * deta * gp) + std::abs(eta * w.g(y)) + std::abs(fpp));
        });
        const double margin = std::min(first / w.beta, second / scale);
        rep.direct.push_back({"FG2", CheckedBy::dense_sampling, margin, margin >= -sample_tol});
    }

    // sufficient conditions of the hand construction
    const double alpha = (4.0 * g + 1.0) / (4.0 * g);
    const double ratio_cap = (2.0 * g + 1.0) / (2.0 * g);
    auto& s = rep.sufficient;
    s.push_back(sufficient("kA^2/2+a>=0", 0.5 * w.k * A * A + w.a, 0.0));
    s.push_back(sufficient("B>=1/A^2+A", B, 1.0 / (A * A) + A));
    s.push_back(sufficient("h>A*gamma", h, A * g, true));
    s.push_back(sufficient("M/B>=2/alpha^(1/gamma)-1", M / B, 2.0 / std::pow(alpha, 1.0 / g) - 1.0));
    s.push_back(sufficient("M/B>=1-sqrt((1-(A/B)^2)/(2gamma+2))", M / B,
                           1.0 - std::sqrt((1.0 - (A / B) * (A / B)) / (2.0 * g + 2.0))));
    s.push_back(sufficient("h>=(4gamma+4)gamma*B", h, (4.0 * g + 4.0) * g * B));
    s.push_back(sufficient("h>=4gamma(B^2-A^2)/(B-M)", h, 4.0 * g * (B * B - A * A) / (B - M)));
    s.push_back(sufficient("h>=(B-M)/((2gamma+1)/(2gamma))^(1/gamma)", h, (B - M) / std::pow(ratio_cap, 1.0 / g)));
    {
        const double lhs = std::pow(B + h, g + 1.0) / std::pow(M + h, g);
        const double rhs =
            ratio_cap * ((2.0 * B * M - M * M - A * A) * (B * (1.0 + g) + h) / (B * B - A * A) - g * M);
        s.push_back(sufficient("(B+h)^(gamma+1)/(M+h)^gamma<=bound(M,h)", rhs, lhs));
    }
    {
        const double r = std::min(w.g(M) / w.g(B), w.g(M) / w.f(M));
        s.push_back(sufficient("min(g(M)/g(B),g(M)/f(M))<=(2gamma+1)/(2gamma)", ratio_cap, r));
    }
    s.push_back(sufficient("-4gamma/((B-M)(M+h)^(gamma+1))-a>=0",
                           -4.0 * g / ((B - M) * std::pow(M + h, g + 1.0)) - w.a, 0.0));
    {
        ConstraintRecord r = sampled("2eta'g'+eta*g-f''>=0", printed_min, printed_scale);
        s.push_back(r);
    }
    return rep;
}

double growth_constant(const RhoWeight& w) { return 2.0 * (1.0 - w.beta) / w.rho_L1; }

std::vector<double> SearchRange::points() const {
    if (count <= 1) return {lo};
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[i] = i + 1 == count ? hi : lo + (hi - lo) * (static_cast<double>(i) / (count - 1));
    return v;
}

std::vector<RhoWeight> search_parameters(const SearchRanges& ranges, long budget, std::uint64_t seed, int samples) {
    const std::array<std::vector<double>, 6> axes = {ranges.A.points(),         ranges.M.points(),
                                                     ranges.B.points(),         ranges.gamma_rho.points(),
                                                     ranges.h.points(),         ranges.C_f.points()};
    std::size_t total = 1;
    for (const auto& ax : axes) {
        if (ax.empty()) return {};
        total *= ax.size();
    }
    std::vector<std::size_t> picks(total);
    std::iota(picks.begin(), picks.end(), std::size_t{0});
    if (budget > 0 && total > static_cast<std::size_t>(budget)) {
        std::mt19937_64 rng(seed);
        std::shuffle(picks.begin(), picks.end(), rng);
        picks.resize(static_cast<std::size_t>(budget));
        std::sort(picks.begin(), picks.end());
    }

    std::vector<std::optional<RhoWeight>> found(picks.size());
    parallel_for(picks.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::size_t idx = picks[i];
            std::array<double, 6> v{};
            for (int d = 5; d >= 0; --d) {
                v[d] = axes[d][idx % axes[d].size()];
                idx /= axes[d].size();
            }
            if (!(v[0] > 0.0 && v[0] < v[1] && v[1] < v[2]) || !(v[3] > 0.0) || !(v[4] > 0.0) || !(v[5] > 0.0))
                continue;
            try {
                RhoWeight w = build_weight(v[0], v[1], v[2], v[3], v[4], v[5]);
                if (verify_constraints(w, samples).direct_pass()) found[i] = w;
            } catch (const Error&) {
            }
        }
    });

    std::vector<RhoWeight> out;
    for (auto& f : found)
        if (f) out.push_back(*f);
    std::stable_sort(out.begin(), out.end(),
                     [](const RhoWeight& x, const RhoWeight& y) { return growth_constant(x) > growth_constant(y); });
    return out;
}

}  // namespace geoprandtl::lyapunov
