#include "geoprandtl/cli/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "geoprandtl/cli/csv.hpp"
#include "geoprandtl/core/error.hpp"
#include "geoprandtl/lyapunov/functional.hpp"
#include "geoprandtl/lyapunov/trace.hpp"
#include "geoprandtl/lyapunov/weight.hpp"
#include "geoprandtl/solver1d/solver1d.hpp"
#include "geoprandtl/solver2d/solver2d.hpp"

namespace geoprandtl::cli {

namespace {

namespace fs = std::filesystem;

class Summary {
public:
    template <class T>
    void add(const std::string& key, const T& value) {
        std::ostringstream os;
        if constexpr (std::is_floating_point_v<T>) os << format_number(value);
        else os << value;
        lines_.push_back(key + ": " + os.str());
    }
    void write(const fs::path& path) const {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        for (const auto& l : lines_) out << l << '\n';
        out.close();
        if (out.fail()) throw IoError("write failed on '" + path.string() + "'");
    }

private:
    std::vector<std::string> lines_;
};

Grid make_grid(const ExperimentConfig& c) { return Grid{c.L, c.nx, VerticalGrid{c.ymax, c.ny}, 0.0}; }

solver2d::OutflowSpec make_outflow(const ExperimentConfig& c) {
    switch (c.outflow) {
        case OutflowShape::zero: return solver2d::OutflowSpec::zero();
        case OutflowShape::cosine: return solver2d::OutflowSpec::cosine(c.outflow_amplitude, c.L, c.outflow_decay);
        case OutflowShape::sine: return solver2d::OutflowSpec::sine(c.outflow_amplitude, c.L, c.outflow_decay);
    }
    return solver2d::OutflowSpec::zero();
}

Field2D make_data_2d(const ExperimentConfig& c, const Grid& grid) {
    switch (c.data) {
        case DataPreset::zero: return Field2D(grid, 0.0);
        case DataPreset::analytic_bump:
            return solver2d::analytic_bump(grid, c.data_amplitude, c.data_radius, c.data_width);
        case DataPreset::odd_analytic_bump:
            return solver2d::odd_analytic_bump(grid, c.data_amplitude, c.data_radius, c.data_width);
        case DataPreset::random_analytic:
            return solver2d::random_analytic(grid, c.data_amplitude, c.data_radius, c.data_width, c.seed);
        case DataPreset::bump: break;
    }
    throw ConfigError("config: data preset '" + to_string(c.data) + "' is not two-dimensional");
}

solver2d::SolverConfig2D make_solver_config(const ExperimentConfig& c) {
    solver2d::SolverConfig2D s;
    s.dt0 = c.dt0;
    s.Tend = c.T;
    s.n_reg = c.n_reg;
    s.gamma_time = c.gamma_time;
    s.lambda = c.lambda;
    s.delta = c.delta;
    s.cadence = c.cadence;
    s.cfl = c.cfl;
    s.blowup_threshold = c.blowup_threshold;
    return s;
}

void run_wellposed(const ExperimentConfig& c, ExperimentResult& res) {
    const Grid grid = make_grid(c);
    const Field2D w0 = make_data_2d(c, grid);
    const lp::AnalyticityState state{0.0, c.lambda, c.delta, c.gamma_time};
    const solver2d::RunReport rep = solver2d::run(w0, make_solver_config(c), make_outflow(c), state);

    std::vector<DiagnosticsRow> rows;
    double max_growth = 0.0;
    const auto& first = rep.samples.front();
    for (const auto& s : rep.samples) {
        DiagnosticsRow r;
        r.t = s.t;
        r.dt = s.dt;
        r.sup_w = s.sup_w;
        r.radius = s.radius;
        r.theta = s.theta;
        r.norm_half = s.norm_half;
        r.norm_one = s.norm_one;
        r.norm_dy_half = s.norm_dy_half;
        rows.push_back(r);
        auto ratio = [](double now, double then) { return then > 0.0 ? now / then : (now > 0.0 ? INFINITY : 0.0); };
        max_growth = std::max({max_growth, ratio(s.norm_half, first.norm_half), ratio(s.norm_one, first.norm_one),
                               ratio(s.norm_dy_half, first.norm_dy_half)});
    }
    rows.back().flags = to_string(rep.reason);

    const fs::path diag = c.output / "diagnostics.csv";
    write_diagnostics(diag, rows);
    Summary sum;
    sum.add("scenario", to_string(c.scenario));
    sum.add("outcome", to_string(rep.reason));
    sum.add("t_end", rep.t_end);
    sum.add("steps", rep.steps);
    sum.add("final_radius", rep.final_state.radius());
    sum.add("final_theta", rep.final_state.theta);
    sum.add("final_sup_w", rep.samples.back().sup_w);
    sum.add("max_norm_growth", max_growth);
    sum.write(c.output / "summary.txt");
    res.artifacts = {diag, c.output / "summary.txt"};
}

void run_blowup(const ExperimentConfig& c, ExperimentResult& res) {
    const lyapunov::RhoWeight rho = lyapunov::build_weight(c.rho);
    const VerticalGrid grid{c.ymax, c.ny};
    solver1d::ReducedConfig rc;
    rc.Utilde = {c.outflow_amplitude, c.outflow_decay};
    const double amp = c.data == DataPreset::zero ? 0.0 : c.data_amplitude;
    rc.w0 = solver1d::bump_data(grid, amp, c.data_width, rc.Utilde.value(0.0));
    rc.T = c.T;
    rc.dt0 = c.dt0;
    rc.dt_min = c.dt_min;
    rc.blowup_threshold = c.blowup_threshold;
    rc.cfl = c.cfl;

    const lyapunov::LyapunovTrace tr = lyapunov::trace_reduced_run(rho, rc);
    const solver1d::BlowupReport& rep = tr.run;
    const auto& samples = tr.samples;

    const double Usup = tr.Utilde_sup;
    const double G0 = samples.front().G;
    std::vector<DiagnosticsRow> rows;
    long growth_fail = 0, negative = 0;
    double sup_all = 0.0, min_all = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        sup_all = std::max(sup_all, s.sup_w);
        min_all = std::min(min_all, s.min_w);
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        DiagnosticsRow r;
        r.t = s.t;
        r.dt = i ? s.t - samples[i - 1].t : 0.0;
        r.sup_w = s.sup_w;
        r.G = s.G;
        r.dG_dt_terms_sum = s.terms_sum;
        r.dG_dt_numeric = s.dGdt_numeric;
        const auto g = lyapunov::check_growth_inequality(rho, s.G, tr.dGdt(i), Usup);
        r.growth_rhs = g.rhs;
        r.flags = g.holds ? "growth_ok" : "growth_fail";
        if (!g.holds) ++growth_fail;
        if (s.min_w < -1e-8 * sup_all) {
            r.flags += " negative";
            ++negative;
        }
        rows.push_back(r);
    }

    double bound = std::numeric_limits<double>::infinity();
    if (G0 > 0.0) bound = lyapunov::ode_bound(rho, G0, Usup);
    const double threshold = lyapunov::blowup_threshold(rho, Usup, c.T);

    const fs::path diag = c.output / "diagnostics.csv";
    write_diagnostics(diag, rows);
    const fs::path comp = c.output / "comparison.csv";
    {
        CsvWriter w(comp, {"t", "G", "G_comparison", "threshold"});
        for (const auto& s : samples) {
            const double gc = G0 > 0.0 ? lyapunov::riccati_solution(rho, G0, Usup, s.t) : 0.0;
            w.row({format_number(s.t), format_number(s.G), format_number(gc), format_number(threshold)});
        }
        w.close();
    }
    Summary sum;
    sum.add("scenario", to_string(c.scenario));
    sum.add("outcome", solver1d::to_string(rep.outcome));
    sum.add("trigger", rep.trigger.empty() ? std::string("none") : rep.trigger);
    sum.add("t_star", rep.t_star);
    sum.add("t_bracket", rep.t_bracket);
    sum.add("G0", G0);
    sum.add("ode_bound", bound);
    sum.add("blowup_threshold", threshold);
    sum.add("Utilde_sup", Usup);
    sum.add("t_star_within_bound", rep.outcome == solver1d::Outcome::blowup ? (rep.t_star <= bound * 1.05 ? "yes" : "no")
                                                                            : "n/a");
    sum.add("min_w", min_all);
    sum.add("sup_w", sup_all);
    sum.add("positivity", min_all >= -1e-8 * sup_all ? "pass" : "fail");
    sum.add("growth_violations", growth_fail);
    sum.add("negative_rows", negative);
    sum.write(c.output / "summary.txt");
    res.artifacts = {diag, comp, c.output / "summary.txt"};
}

void write_weight_summary(Summary& sum, const lyapunov::RhoWeight& w) {
    sum.add("A", w.p.A);
    sum.add("M", w.p.M);
    sum.add("B", w.p.B);
    sum.add("gamma_rho", w.p.gamma_rho);
    sum.add("h", w.p.h);
    sum.add("C_f", w.p.C_f);
    sum.add("a", w.a);
    sum.add("b", w.b);
    sum.add("c", w.c);
    sum.add("k", w.k);
    sum.add("beta", w.beta);
    sum.add("rho_L1", w.rho_L1);
    sum.add("growth_constant", lyapunov::growth_constant(w));
}

void run_weight_verify(const ExperimentConfig& c, ExperimentResult& res) {
    const lyapunov::RhoWeight w = lyapunov::build_weight(c.rho);
    const lyapunov::ConstraintReport rep = lyapunov::verify_constraints(w, c.rho_samples);

    const fs::path cons = c.output / "constraints.csv";
    {
        CsvWriter out(cons, {"group", "name", "checked_by", "margin", "pass"});
        for (const auto& [group, list] : {std::pair{"direct", &rep.direct}, std::pair{"sufficient", &rep.sufficient}})
            for (const auto& r : *list)
                out.row({group, r.name, lyapunov::to_string(r.checked_by), format_number(r.margin), r.pass ? "1" : "0"});
        out.close();
    }
    const fs::path prof = c.output / "weight_profile.csv";
    {
        CsvWriter out(prof, {"y", "rho", "rho_prime", "eta"});
        const double ytop = 2.0 * w.p.B;
        const int n = 1000;
        for (int i = 0; i <= n; ++i) {
            const double y = ytop * i / n;
            out.row({format_number(y), format_number(lyapunov::eval_rho(w, y)),
                     format_number(lyapunov::eval_rho_prime(w, y)), format_number(lyapunov::eval_eta(w, y))});
        }
        out.close();
    }
    Summary sum;
    sum.add("scenario", to_string(c.scenario));
    write_weight_summary(sum, w);
    sum.add("direct", rep.direct_pass() ? "pass" : "fail");
    sum.add("sufficient", rep.sufficient_pass() ? "pass" : "fail");
    std::string failed;
    for (const auto& r : rep.direct)
        if (!r.pass) failed += (failed.empty() ? "" : " ") + r.name;
    sum.add("failed_direct", failed.empty() ? std::string("none") : failed);
    sum.write(c.output / "summary.txt");
    res.artifacts = {cons, prof, c.output / "summary.txt"};
    if (!rep.direct_pass()) {
        res.exit_code = static_cast<int>(ErrorKind::infeasible_weight);
        res.message = "weight fails direct properties: " + failed;
    }
}

void run_weight_search(const ExperimentConfig& c, ExperimentResult& res) {
    const auto found = lyapunov::search_parameters(c.search, c.search_budget, c.seed, c.search_samples);
    const fs::path feas = c.output / "feasible.csv";
    {
        CsvWriter out(feas, {"rank", "A", "M", "B", "gamma_rho", "h", "C_f", "a", "b", "c", "k", "beta", "rho_L1",
                             "growth_constant"});
        for (std::size_t i = 0; i < found.size(); ++i) {
            const auto& w = found[i];
            out.row({std::to_string(i + 1), format_number(w.p.A), format_number(w.p.M), format_number(w.p.B),
                     format_number(w.p.gamma_rho), format_number(w.p.h), format_number(w.p.C_f), format_number(w.a),
                     format_number(w.b), format_number(w.c), format_number(w.k), format_number(w.beta),
                     format_number(w.rho_L1), format_number(lyapunov::growth_constant(w))});
        }
        out.close();
    }
    Summary sum;
    sum.add("scenario", to_string(c.scenario));
    sum.add("feasible", found.size());
    if (!found.empty()) write_weight_summary(sum, found.front());
    sum.write(c.output / "summary.txt");
    res.artifacts = {feas, c.output / "summary.txt"};
}

void run_convergence(const ExperimentConfig& c, ExperimentResult& res) {
    const Grid grid = make_grid(c);
    const Field2D w0 = make_data_2d(c, grid);
    const auto rows = solver2d::convergence_study(w0, make_solver_config(c), make_outflow(c), c.n_list);
    const fs::path conv = c.output / "convergence.csv";
    {
        CsvWriter out(conv, {"n", "distance", "ratio"});
        for (const auto& r : rows) out.row({std::to_string(r.n), format_number(r.distance), format_number(r.ratio)});
        out.close();
    }
    bool decreasing = true;
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i && !(rows[i].distance < rows[i - 1].distance)) decreasing = false;
        rmin = std::min(rmin, rows[i].ratio);
        rmax = std::max(rmax, rows[i].ratio);
    }
    Summary sum;
    sum.add("scenario", to_string(c.scenario));
    sum.add("distances_decreasing", decreasing ? "yes" : "no");
    sum.add("ratio_spread", rmin > 0.0 ? rmax / rmin : std::numeric_limits<double>::infinity());
    sum.write(c.output / "summary.txt");
    res.artifacts = {conv, c.output / "summary.txt"};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult res;
    try {
        cfg.validate();
        std::error_code ec;
        fs::create_directories(cfg.output, ec);
        if (ec || !fs::is_directory(cfg.output))
            throw IoError("cannot create output directory '" + cfg.output.string() + "'");
        switch (cfg.scenario) {
            case Scenario::wellposed2d: run_wellposed(cfg, res); break;
            case Scenario::blowup1d: run_blowup(cfg, res); break;
            case Scenario::weight_verify: run_weight_verify(cfg, res); break;
            case Scenario::weight_search: run_weight_search(cfg, res); break;
            case Scenario::convergence2d: run_convergence(cfg, res); break;
        }
    } catch (const Error& e) {
        res.exit_code = static_cast<int>(e.kind());
        res.message = e.what();
    } catch (const fs::filesystem_error& e) {
        res.exit_code = static_cast<int>(ErrorKind::io);
        res.message = e.what();
    } catch (const std::invalid_argument& e) {
        res.exit_code = static_cast<int>(ErrorKind::config);
        res.message = e.what();
    } catch (const std::exception& e) {
        res.exit_code = static_cast<int>(ErrorKind::numerical);
        res.message = e.what();
    }
    return res;
}

ExperimentResult run_config_file(const std::filesystem::path& path, std::optional<Scenario> implied) {
    try {
        return run_experiment(parse_config(path, implied));
    } catch (const Error& e) {
        ExperimentResult res;
        res.exit_code = static_cast<int>(e.kind());
        res.message = e.what();
        return res;
    }
}

}  // namespace geoprandtl::cli
