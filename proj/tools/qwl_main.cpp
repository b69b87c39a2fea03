// qwl: command-line frontend for the worldline quantum toolkit.
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qworldline/config.hpp"
#include "qworldline/runner.hpp"
#include "qworldline/version.hpp"

namespace {

struct SubcommandArgs {
    std::string config_path;
    std::string out_path;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qwl::cli::ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_command(const std::string& name, const SubcommandArgs& args) {
    const auto config = qwl::cli::parse_config(read_file(args.config_path));
    if (config.command != name)
        throw qwl::cli::ConfigError("config sets command '" + config.command +
                                    "' but the subcommand is '" + name + "'");
    const auto table = qwl::cli::run(config);
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + args.out_path + "'");
    out << table.to_string();
    if (!out) throw std::runtime_error("failed writing output file '" + args.out_path + "'");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Localized quantum systems on accelerated worldlines"};
    app.set_version_flag("--version", qwl::version);
    app.require_subcommand(1);
    app.footer(qwl::cli::config_reference());

    const char* names[] = {"bound", "spectrum", "respond", "validate", "sweep"};
    const char* blurbs[] = {
        "localization radius along a trajectory",
        "corrected oscillator spectrum on a 1-D grid",
        "detector response and noise probabilities",
        "localization and nonrelativistic validity checks",
        "Cartesian parameter sweep over another command",
    };
    SubcommandArgs args[5];
    for (int i = 0; i < 5; ++i) {
        auto* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("--config", args[i].config_path, "run configuration file")
            ->required();
        sub->add_option("--out", args[i].out_path, "output CSV path")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help/--version exit 0; every usage error folds into exit 1.
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        for (int i = 0; i < 5; ++i)
            if (app.get_subcommand(names[i])->parsed()) return run_command(names[i], args[i]);
        std::cerr << "qwl: no subcommand selected\n";
        return 1;
    } catch (const qwl::cli::ConfigError& e) {
        std::cerr << "qwl: config error: " << e.what() << "\n";
        return 1;
    } catch (const qwl::cli::NonConvergenceError& e) {
        std::cerr << "qwl: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qwl: " << e.what() << "\n";
        return 2;
    }
}
