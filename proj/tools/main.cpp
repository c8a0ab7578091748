#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "geoprandtl/cli/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"geoprandtl: boundary-layer well-posedness and blowup lab"};
    app.require_subcommand(1);

    std::string run_path, verify_path, search_path;
    auto* run = app.add_subcommand("run", "Run the scenario named in the config");
    run->add_option("config", run_path, "Config file")->required();
    auto* verify = app.add_subcommand("verify-weight", "Build and verify the Lyapunov weight");
    verify->add_option("config", verify_path, "Config file")->required();
    auto* search = app.add_subcommand("search-weight", "Search for feasible weight parameters");
    search->add_option("config", search_path, "Config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    using geoprandtl::cli::Scenario;
    std::string path;
    std::optional<Scenario> implied;
    if (*run) {
        path = run_path;
    } else if (*verify) {
        path = verify_path;
        implied = Scenario::weight_verify;
    } else {
        path = search_path;
        implied = Scenario::weight_search;
    }

    const auto res = geoprandtl::cli::run_config_file(path, implied);
    for (const auto& a : res.artifacts) std::cout << a.string() << '\n';
    if (res.exit_code != 0) std::cerr << "error: " << res.message << '\n';
    return res.exit_code;
}
