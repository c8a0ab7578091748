#include "geoprandtl/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "geoprandtl/core/error.hpp"

namespace geoprandtl::cli {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "scenario",        "output",          "seed",           "rho",
        "grid.L",          "grid.nx",         "grid.ymax",      "grid.ny",
        "scheme.dt0",      "scheme.T",        "scheme.cfl",     "scheme.dt_min",
        "scheme.blowup_threshold",            "scheme.cadence", "scheme.n_reg",
        "analyticity.lambda", "analyticity.delta", "analyticity.gamma_time",
        "outflow.shape",   "outflow.amplitude", "outflow.decay",
        "data.preset",     "data.amplitude",  "data.radius",    "data.width",
        "rho.preset",      "rho.A",           "rho.M",          "rho.B",
        "rho.gamma",       "rho.h",           "rho.C_f",        "rho.samples",
        "search.A",        "search.M",        "search.B",       "search.gamma",
        "search.h",        "search.C_f",      "search.budget",  "search.samples",
        "convergence.n",
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line = 0;
};

class Values {
public:
    explicit Values(std::map<std::string, Entry> m) : m_(std::move(m)) {}

    bool has(const std::string& key) const { return m_.count(key) != 0; }

    std::string text(const std::string& key) const { return m_.at(key).value; }

    double real(const std::string& key) const {
        const Entry& e = m_.at(key);
        double v = 0.0;
        const char* first = e.value.data();
        const char* last = first + e.value.size();
        if (*first == '+') ++first;
        auto [p, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || p != last || !std::isfinite(v)) fail(key, "expected a finite number");
        return v;
    }

    long integer(const std::string& key) const {
        const Entry& e = m_.at(key);
        long v = 0;
        auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
        if (ec != std::errc() || p != e.value.data() + e.value.size()) fail(key, "expected an integer");
        return v;
    }

    lyapunov::SearchRange range(const std::string& key) const {
        const std::string& s = m_.at(key).value;
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(trim(part));
        if (parts.size() != 1 && parts.size() != 3) fail(key, "expected 'value' or 'lo:hi:count'");
        auto num = [&](const std::string& p) {
            double v = 0.0;
            auto [q, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
            if (ec != std::errc() || q != p.data() + p.size() || !std::isfinite(v)) fail(key, "expected a number");
            return v;
        };
        if (parts.size() == 1) {
            const double v = num(parts[0]);
            return {v, v, 1};
        }
        int count = 0;
        auto [q, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
        if (ec != std::errc() || q != parts[2].data() + parts[2].size()) fail(key, "count must be an integer");
        return {num(parts[0]), num(parts[1]), count};
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError("config line " + std::to_string(m_.at(key).line) + ": '" + key + "': " + what);
    }

private:
    std::map<std::string, Entry> m_;
};

void require(bool ok, const std::string& constraint) {
    if (!ok) throw ConfigError("config: " + constraint);
}

void check_range(const lyapunov::SearchRange& r, const std::string& name) {
    require(r.count >= 1, "search." + name + " count must be >= 1");
    require(r.lo <= r.hi, "search." + name + " needs lo <= hi");
}

}  // namespace

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::wellposed2d: return "wellposed2d";
        case Scenario::blowup1d: return "blowup1d";
        case Scenario::weight_verify: return "weight_verify";
        case Scenario::weight_search: return "weight_search";
        case Scenario::convergence2d: return "convergence2d";
    }
    return "unknown";
}

Scenario parse_scenario(const std::string& name) {
    for (Scenario s : {Scenario::wellposed2d, Scenario::blowup1d, Scenario::weight_verify, Scenario::weight_search,
                       Scenario::convergence2d})
        if (to_string(s) == name) return s;
    throw ConfigError("config: unknown scenario '" + name + "'");
}

std::string to_string(DataPreset p) {
    switch (p) {
        case DataPreset::zero: return "zero";
        case DataPreset::bump: return "bump";
        case DataPreset::analytic_bump: return "analytic_bump";
        case DataPreset::odd_analytic_bump: return "odd_analytic_bump";
        case DataPreset::random_analytic: return "random_analytic";
    }
    return "unknown";
}

std::string to_string(OutflowShape s) {
    switch (s) {
        case OutflowShape::zero: return "zero";
        case OutflowShape::cosine: return "cosine";
        case OutflowShape::sine: return "sine";
    }
    return "unknown";
}

void ExperimentConfig::validate() const {
    require(L > 0.0, "grid.L must be > 0");
    require(nx >= 8 && (nx & (nx - 1)) == 0, "grid.nx must be a power of two >= 8");
    require(ymax > 0.0, "grid.ymax must be > 0");
    require(ny >= 16, "grid.ny must be >= 16");
    require(dt0 > 0.0, "scheme.dt0 must be > 0");
    require(T > 0.0, "scheme.T must be > 0");
    require(cfl > 0.0, "scheme.cfl must be > 0");
    require(dt_min > 0.0 && dt_min <= dt0, "scheme.dt_min must lie in (0, dt0]");
    require(blowup_threshold > 0.0, "scheme.blowup_threshold must be > 0");
    require(cadence >= 1, "scheme.cadence must be >= 1");
    require(n_reg >= 0, "scheme.n_reg must be >= 0");
    require(lambda > 0.0, "analyticity.lambda must be > 0");
    require(delta > 0.0 && delta <= 1.0, "analyticity.delta must lie in (0, 1]");
    require(gamma_time >= 2.0, "analyticity.gamma_time must be >= 2");
    require(outflow_decay >= 0.0, "outflow.decay must be >= 0");
    require(data_radius > 0.0, "data.radius must be > 0");
    require(data_width > 0.0, "data.width must be > 0");
    require(rho.A > 0.0 && rho.A < rho.M && rho.M < rho.B, "rho needs 0 < A < M < B");
    require(rho.gamma_rho > 0.0, "rho.gamma must be > 0");
    require(rho.h > 0.0, "rho.h must be > 0");
    require(rho.C_f > 0.0, "rho.C_f must be > 0");
    require(rho_samples >= 10, "rho.samples must be >= 10");
    check_range(search.A, "A");
    check_range(search.M, "M");
    check_range(search.B, "B");
    check_range(search.gamma_rho, "gamma");
    check_range(search.h, "h");
    check_range(search.C_f, "C_f");
    require(search_budget >= 1, "search.budget must be >= 1");
    require(search_samples >= 10, "search.samples must be >= 10");
    require(n_list.size() >= 2, "convergence.n must list at least two values");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        require(n_list[i] >= 1, "convergence.n values must be >= 1");
        require(i == 0 || n_list[i] > n_list[i - 1], "convergence.n must be strictly increasing");
    }
    if (scenario == Scenario::blowup1d) {
        require(outflow_amplitude <= 0.0, "outflow.amplitude must be <= 0 for blowup1d (U~ <= 0)");
        require(data == DataPreset::bump || data == DataPreset::zero, "blowup1d data.preset must be bump or zero");
        require(data_amplitude >= 0.0, "data.amplitude must be >= 0 for blowup1d");
    } else if (scenario == Scenario::wellposed2d || scenario == Scenario::convergence2d) {
        require(data != DataPreset::bump, "data.preset bump is one-dimensional; use analytic_bump");
    }
}

ExperimentConfig parse_config_text(const std::string& text, std::optional<Scenario> implied) {
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string section;
    int lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("config line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string full = section.empty() ? key : section + "." + key;
        if (!known_keys().count(full))
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + full + "'");
        if (entries.count(full))
            throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + full + "'");
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty value for '" + full + "'");
        entries[full] = {value, lineno};
    }
    const Values v(std::move(entries));

    ExperimentConfig c;
    if (v.has("scenario")) {
        c.scenario = parse_scenario(v.text("scenario"));
        if (implied && *implied != c.scenario)
            throw ConfigError("config: scenario '" + to_string(c.scenario) + "' conflicts with the command (" +
                              to_string(*implied) + ")");
    } else if (implied) {
        c.scenario = *implied;
    } else {
        throw ConfigError("config: scenario required");
    }

    const bool two_d = c.scenario == Scenario::wellposed2d || c.scenario == Scenario::convergence2d;
    c.T = two_d ? 0.25 : 1.0;
    c.data = two_d ? DataPreset::analytic_bump : DataPreset::bump;
    c.data_amplitude = two_d ? 1e-3 : 20.0;
    c.search = {{1.5, 2.5, 5}, {4.0, 4.8, 5}, {5.0, 6.0, 3}, {1.5, 3.0, 4}, {300.0, 500.0, 5}, {1.0, 1.0, 1}};

    if (v.has("output")) c.output = v.text("output");
    if (v.has("seed")) {
        const long s = v.integer("seed");
        if (s < 0) v.fail("seed", "must be >= 0");
        c.seed = static_cast<std::uint64_t>(s);
    }

    auto real = [&](const char* key, double& dst) {
        if (v.has(key)) dst = v.real(key);
    };
    auto integer = [&](const char* key, auto& dst) {
        if (v.has(key)) dst = static_cast<std::remove_reference_t<decltype(dst)>>(v.integer(key));
    };

    real("grid.L", c.L);
    integer("grid.nx", c.nx);
    real("grid.ymax", c.ymax);
    integer("grid.ny", c.ny);
    real("scheme.dt0", c.dt0);
    real("scheme.T", c.T);
    real("scheme.cfl", c.cfl);
    real("scheme.dt_min", c.dt_min);
    real("scheme.blowup_threshold", c.blowup_threshold);
    integer("scheme.cadence", c.cadence);
    integer("scheme.n_reg", c.n_reg);
    real("analyticity.lambda", c.lambda);
    real("analyticity.delta", c.delta);
    real("analyticity.gamma_time", c.gamma_time);

    if (v.has("outflow.shape")) {
        const std::string s = v.text("outflow.shape");
        if (s == "zero") c.outflow = OutflowShape::zero;
        else if (s == "cosine") c.outflow = OutflowShape::cosine;
        else if (s == "sine") c.outflow = OutflowShape::sine;
        else v.fail("outflow.shape", "expected zero, cosine or sine");
    }
    real("outflow.amplitude", c.outflow_amplitude);
    real("outflow.decay", c.outflow_decay);

    if (v.has("data.preset")) {
        const std::string s = v.text("data.preset");
        bool found = false;
        for (DataPreset p : {DataPreset::zero, DataPreset::bump, DataPreset::analytic_bump, DataPreset::odd_analytic_bump,
                             DataPreset::random_analytic})
            if (to_string(p) == s) {
                c.data = p;
                found = true;
            }
        if (!found) v.fail("data.preset", "unknown preset");
    }
    real("data.amplitude", c.data_amplitude);
    real("data.radius", c.data_radius);
    real("data.width", c.data_width);

    for (const char* key : {"rho", "rho.preset"})
        if (v.has(key)) {
            if (v.text(key) != "reference") v.fail(key, "the only preset is 'reference'");
            c.rho = lyapunov::RhoParams::reference();
        }
    real("rho.A", c.rho.A);
    real("rho.M", c.rho.M);
    real("rho.B", c.rho.B);
    real("rho.gamma", c.rho.gamma_rho);
    real("rho.h", c.rho.h);
    real("rho.C_f", c.rho.C_f);
    integer("rho.samples", c.rho_samples);

    auto range = [&](const char* key, lyapunov::SearchRange& dst) {
        if (v.has(key)) dst = v.range(key);
    };
    range("search.A", c.search.A);
    range("search.M", c.search.M);
    range("search.B", c.search.B);
    range("search.gamma", c.search.gamma_rho);
    range("search.h", c.search.h);
    range("search.C_f", c.search.C_f);
    integer("search.budget", c.search_budget);
    integer("search.samples", c.search_samples);

    if (v.has("convergence.n")) {
        c.n_list.clear();
        std::stringstream ss(v.text("convergence.n"));
        for (std::string part; std::getline(ss, part, ',');) {
            part = trim(part);
            int n = 0;
            auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), n);
            if (part.empty() || ec != std::errc() || p != part.data() + part.size())
                v.fail("convergence.n", "expected a comma-separated list of integers");
            c.n_list.push_back(n);
        }
    }

    c.validate();
    return c;
}

ExperimentConfig parse_config(const std::filesystem::path& path, std::optional<Scenario> implied) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading config file '" + path.string() + "'");
    return parse_config_text(ss.str(), implied);
}

}  // namespace geoprandtl::cli
