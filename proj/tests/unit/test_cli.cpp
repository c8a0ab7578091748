#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "geoprandtl/cli/config.hpp"
#include "geoprandtl/cli/csv.hpp"
#include "geoprandtl/cli/experiment.hpp"
#include "geoprandtl/core/error.hpp"
#include "oracles.hpp"

using namespace geoprandtl;
using namespace geoprandtl::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

std::string config_error(const std::string& text, std::optional<Scenario> implied = std::nullopt) {
    try {
        parse_config_text(text, implied);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::map<std::string, std::string> summary(const fs::path& p) {
    std::map<std::string, std::string> out;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(':');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

int column(const CsvTable& t, const std::string& name) {
    for (std::size_t i = 0; i < t.header.size(); ++i)
        if (t.header[i] == name) return static_cast<int>(i);
    return -1;
}

}  // namespace

TEST(ParseConfig, ScenarioRequired) {
    EXPECT_EQ(config_error(""), "config: scenario required");
    EXPECT_EQ(config_error("# only a comment\n"), "config: scenario required");
}

TEST(ParseConfig, ImpliedScenario) {
    EXPECT_EQ(parse_config_text("rho = reference\n", Scenario::weight_verify).scenario, Scenario::weight_verify);
    EXPECT_NE(config_error("scenario = blowup1d\n", Scenario::weight_search).find("conflicts"), std::string::npos);
}

TEST(ParseConfig, ReferenceWeight) {
    const ExperimentConfig c = parse_config_text("scenario = weight_verify\nrho = reference\n");
    EXPECT_EQ(c.rho.A, 2.0);
    EXPECT_EQ(c.rho.M, 4.5);
    EXPECT_EQ(c.rho.B, 5.0);
    EXPECT_EQ(c.rho.gamma_rho, 2.0);
    EXPECT_EQ(c.rho.h, 400.0);
    EXPECT_EQ(c.rho.C_f, 1.0);
}

TEST(ParseConfig, SectionsAndDefaults) {
    const ExperimentConfig c = parse_config_text(
        "scenario = blowup1d\n[grid]\nny = 400\n[scheme]\ndt0 = 5e-4\n[outflow]\namplitude = -0.5\ndecay = 1\n");
    EXPECT_EQ(c.ny, 400);
    EXPECT_EQ(c.dt0, 5e-4);
    EXPECT_EQ(c.outflow_amplitude, -0.5);
    EXPECT_EQ(c.outflow_decay, 1.0);
    EXPECT_EQ(c.T, 1.0);
    EXPECT_EQ(c.data, DataPreset::bump);
}

TEST(ParseConfig, Errors) {
    EXPECT_NE(config_error("scenario = blowup1d\n[scheme]\ndt0 = -1\n").find("dt0"), std::string::npos);
    EXPECT_NE(config_error("scenario = blowup1d\ncolour = red\n").find("unknown key 'colour'"), std::string::npos);
    EXPECT_NE(config_error("scenario = blowup1d\n[grid]\nwidth = 3\n").find("'grid.width'"), std::string::npos);
    EXPECT_NE(config_error("scenario = blowup1d\nseed = 1\nseed = 2\n").find("duplicate"), std::string::npos);
    EXPECT_NE(config_error("scenario = blowup1d\nseed =\n").find("empty value"), std::string::npos);
    EXPECT_NE(config_error("scenario = teleport\n").find("unknown scenario"), std::string::npos);
    EXPECT_NE(config_error("scenario = wellposed2d\n[grid]\nnx = 12\n").find("nx"), std::string::npos);
    EXPECT_NE(config_error("scenario = blowup1d\n[outflow]\namplitude = 1\n"), "");
    EXPECT_NE(config_error("scenario = convergence2d\n[convergence]\nn = 4,2\n"), "");
}

TEST(ParseConfig, MissingFileIsIoError) {
    EXPECT_THROW(parse_config("/nonexistent/geoprandtl.conf"), IoError);
}

TEST(Csv, FormatAndQuote) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(quote_field("plain"), "plain");
    EXPECT_EQ(quote_field("a,b"), "\"a,b\"");
    EXPECT_EQ(quote_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    const CsvTable t = parse_csv("# schema=1\r\nx,y\r\n\"a,b\",\"q\"\"\"\r\n");
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][0], "a,b");
    EXPECT_EQ(t.rows[0][1], "q\"");
    EXPECT_THROW(parse_csv("x\n\"open\n"), ConfigError);
}

TEST(Csv, EmptyDiagnosticsHasHeaderOnly) {
    const fs::path dir = oracle::temp_dir("csv_empty");
    write_diagnostics(dir / "d.csv", {});
    const CsvTable t = read_csv(dir / "d.csv");
    ASSERT_EQ(t.comments.size(), 1u);
    EXPECT_EQ(t.comments[0], schema_line);
    EXPECT_EQ(t.header, diagnostics_columns());
    EXPECT_TRUE(t.rows.empty());
    fs::remove_all(dir);
}

TEST(Csv, RowRoundTrips) {
    const fs::path dir = oracle::temp_dir("csv_row");
    DiagnosticsRow r;
    r.t = 0.125;
    r.dt = 1e-3;
    r.sup_w = 1.0 / 3.0;
    r.G = 2.5e-7;
    r.flags = "growth_ok";
    write_diagnostics(dir / "d.csv", {r});
    const std::string text = slurp(dir / "d.csv");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
    const CsvTable t = read_csv(dir / "d.csv");
    ASSERT_EQ(t.rows.size(), 1u);
    const auto& row = t.rows[0];
    EXPECT_EQ(std::stod(row[column(t, "t")]), 0.125);
    EXPECT_EQ(std::stod(row[column(t, "sup_w")]), 1.0 / 3.0);
    EXPECT_EQ(std::stod(row[column(t, "G")]), 2.5e-7);
    EXPECT_EQ(row[column(t, "radius")], "");
    EXPECT_EQ(row[column(t, "flags")], "growth_ok");
    fs::remove_all(dir);
}

TEST(Csv, RejectsBadTime) {
    const fs::path dir = oracle::temp_dir("csv_bad");
    DiagnosticsRow a, b;
    a.t = 1.0;
    b.t = 0.5;
    EXPECT_THROW(write_diagnostics(dir / "d.csv", {a, b}), NumericalError);
    a.t = std::nan("");
    EXPECT_THROW(write_diagnostics(dir / "e.csv", {a}), NumericalError);
    EXPECT_THROW(write_diagnostics(dir / "missing" / "x" / "f.csv", {}), IoError);
    fs::remove_all(dir);
}

TEST(Csv, LargeWriteIsDeterministic) {
    const fs::path dir = oracle::temp_dir("csv_large");
    std::vector<DiagnosticsRow> rows(100000);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].t = 1e-4 * static_cast<double>(i);
        rows[i].dt = 1e-4;
        rows[i].sup_w = std::sin(static_cast<double>(i));
        rows[i].norm_half = std::exp(-1e-5 * static_cast<double>(i));
    }
    write_diagnostics(dir / "a.csv", rows);
    write_diagnostics(dir / "b.csv", rows);
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    EXPECT_EQ(read_csv(dir / "a.csv").rows.size(), rows.size());
    fs::remove_all(dir);
}

TEST(RunExperiment, WeightVerify) {
    const fs::path dir = oracle::temp_dir("run_wv");
    ExperimentConfig c = parse_config_text("scenario = weight_verify\nrho = reference\n");
    c.output = dir;
    const ExperimentResult r = run_experiment(c);
    ASSERT_EQ(r.exit_code, 0) << r.message;
    const CsvTable t = read_csv(dir / "constraints.csv");
    int direct = 0;
    for (const auto& row : t.rows) {
        EXPECT_EQ(row[column(t, "pass")], "1") << row[column(t, "name")];
        direct += row[column(t, "group")] == "direct";
    }
    EXPECT_EQ(direct, 9);
    EXPECT_TRUE(fs::exists(dir / "weight_profile.csv"));
    fs::remove_all(dir);
}

TEST(RunExperiment, WeightVerifyFailureExitCode) {
    const fs::path dir = oracle::temp_dir("run_wv_fail");
    ExperimentConfig c = parse_config_text("scenario = weight_verify\nrho = reference\n[rho]\ngamma = 1\n");
    c.output = dir;
    EXPECT_EQ(run_experiment(c).exit_code, 3);
    fs::remove_all(dir);
}

TEST(RunExperiment, Blowup1d) {
    const fs::path dir = oracle::temp_dir("run_b1");
    const fs::path conf = write_file(dir / "b.conf", "scenario = blowup1d\noutput = " + (dir / "out").string() +
                                                         "\nrho = reference\n[grid]\nny = 400\n[data]\namplitude = 20\n");
    const ExperimentResult r = run_config_file(conf);
    ASSERT_EQ(r.exit_code, 0) << r.message;
    const auto s = summary(dir / "out" / "summary.txt");
    ASSERT_TRUE(s.count("t_star"));
    EXPECT_LE(std::stod(s.at("t_star")), 1.05 * std::stod(s.at("ode_bound")));
    EXPECT_EQ(s.at("positivity"), "pass");
    EXPECT_EQ(s.at("growth_violations"), "0");
    const CsvTable cmp = read_csv(dir / "out" / "comparison.csv");
    EXPECT_FALSE(cmp.rows.empty());
    fs::remove_all(dir);
}

TEST(RunExperiment, WellposedZeroData) {
    const fs::path dir = oracle::temp_dir("run_wp0");
    ExperimentConfig c = parse_config_text(
        "scenario = wellposed2d\n[grid]\nnx = 16\nny = 200\n[scheme]\nT = 0.05\n[data]\npreset = zero\n");
    c.output = dir;
    const ExperimentResult r = run_experiment(c);
    ASSERT_EQ(r.exit_code, 0) << r.message;
    const CsvTable t = read_csv(dir / "diagnostics.csv");
    ASSERT_GT(t.rows.size(), 1u);
    for (const char* name : {"sup_w", "norm_half", "norm_one", "norm_dy_half"}) {
        const int i = column(t, name);
        ASSERT_GE(i, 0) << name;
        for (const auto& row : t.rows) EXPECT_EQ(std::stod(row[i]), 0.0) << name;
    }
    fs::remove_all(dir);
}

TEST(RunExperiment, ExitCodes) {
    const fs::path dir = oracle::temp_dir("run_codes");
    EXPECT_EQ(run_config_file(write_file(dir / "bad.conf", "scenario = blowup1d\n[scheme]\ndt0 = -1\n")).exit_code, 1);
    EXPECT_EQ(run_config_file(dir / "absent.conf").exit_code, 4);
    write_file(dir / "blocker", "x");
    ExperimentConfig c = parse_config_text("scenario = weight_verify\nrho = reference\n");
    c.output = dir / "blocker" / "sub";
    EXPECT_EQ(run_experiment(c).exit_code, 4);
    fs::remove_all(dir);
}

#ifdef GEOPRANDTL_CLI_PATH
TEST(CliBinary, SubcommandsAndDeterminism) {
    const fs::path dir = oracle::temp_dir("cli_bin");
    const std::string exe = GEOPRANDTL_CLI_PATH;
    auto conf = [&](const std::string& name, const std::string& out) {
        return write_file(dir / name, "rho = reference\noutput = " + (dir / out).string() + "\n");
    };
    auto run = [&](const std::string& args) {
        const int s = std::system((exe + " " + args + " > " + (dir / "log.txt").string() + " 2>&1").c_str());
        return WEXITSTATUS(s);
    };
    EXPECT_EQ(run("verify-weight " + conf("a.conf", "a").string()), 0);
    EXPECT_EQ(run("verify-weight " + conf("b.conf", "b").string()), 0);
    EXPECT_EQ(slurp(dir / "a" / "constraints.csv"), slurp(dir / "b" / "constraints.csv"));
    EXPECT_EQ(slurp(dir / "a" / "weight_profile.csv"), slurp(dir / "b" / "weight_profile.csv"));
    EXPECT_EQ(run("run " + write_file(dir / "c.conf", "scenario = blowup1d\n[scheme]\ndt0 = -1\n").string()), 1);
    EXPECT_NE(slurp(dir / "log.txt").find("error: "), std::string::npos);
    EXPECT_NE(run("teleport x.conf"), 0);
    fs::remove_all(dir);
}
#endif
