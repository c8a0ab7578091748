#include "geoprandtl/lyapunov/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geoprandtl/lyapunov/functional.hpp"

namespace geoprandtl::lyapunov {

double LyapunovTrace::dGdt(std::size_t i) const {
    const TraceSample& s = samples[i];
    return s.dGdt_numeric ? *s.dGdt_numeric : s.terms_sum;
}

LyapunovTrace trace_reduced_run(const RhoWeight& rho, const solver1d::ReducedConfig& cfg) {
    LyapunovTrace tr;
    tr.run = solver1d::run_until_blowup(cfg, [&](double t, const YProfile& w) {
        TraceSample s;
        s.t = t;
        s.min_w = std::numeric_limits<double>::infinity();
        for (double v : w.values()) {
            s.sup_w = std::max(s.sup_w, std::abs(v));
            s.min_w = std::min(s.min_w, v);
        }
        s.G = functional_G(rho, w);
        s.terms_sum = lyapunov_terms(rho, w, cfg.Utilde.value(t)).sum();
        tr.samples.push_back(s);
    });
    tr.Utilde_sup = cfg.Utilde.sup_abs(cfg.T);

    auto& v = tr.samples;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double h1 = v[i].t - v[i - 1].t, h2 = v[i + 1].t - v[i].t;
        v[i].dGdt_numeric = -h2 / (h1 * (h1 + h2)) * v[i - 1].G + (h2 - h1) / (h1 * h2) * v[i].G +
                            h1 / (h2 * (h1 + h2)) * v[i + 1].G;
    }
    return tr;
}

}  // namespace geoprandtl::lyapunov
