#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "commands.hpp"
#include "errors.hpp"
#include "pexgaf/error.hpp"

namespace {

struct Leaf {
    std::string command;
    CLI::App* app = nullptr;
    std::map<std::string, std::string> flags;
    std::string config;
};

void add_leaf(CLI::App* app, const std::string& command, std::vector<std::unique_ptr<Leaf>>& leaves) {
    auto leaf = std::make_unique<Leaf>();
    leaf->command = command;
    leaf->app = app;
    for (const auto& [key, def] : pexgaf::cli::default_settings(command)) {
        app->add_option("--" + key, leaf->flags[key], key + " (default: " + (def.empty() ? "none" : def) + ")");
    }
    app->add_option("--config", leaf->config, "settings file with 'key: value' lines");
    leaves.push_back(std::move(leaf));
}

int run(const Leaf& leaf) {
    using namespace pexgaf::cli;
    Settings settings(default_settings(leaf.command));
    if (!leaf.config.empty()) settings.apply(read_config(leaf.config), false);
    std::map<std::string, std::string> given;
    for (const auto& [key, value] : leaf.flags) {
        if (leaf.app->count("--" + key) > 0) given[key] = value;
    }
    settings.apply(given, true);

    const auto out = run_command(leaf.command, settings);
    const std::string& path = settings.raw("out");
    const std::string text = leaf.command == "table" ? out.csv : write_record(out.record);
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw IoError("cannot write " + path);
        f << text;
        if (leaf.command == "table") save_record(out.record, path + ".record");
    }
    if (!out.check_passed) {
        std::cerr << "check failed: " << leaf.command << "\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pexgaf-cli: power-exponential Gaussian analytic function laboratory"};
    app.require_subcommand(1);
    std::vector<std::unique_ptr<Leaf>> leaves;
    add_leaf(app.add_subcommand("table", "q(p), Z_p and regime as CSV"), "table", leaves);
    add_leaf(app.add_subcommand("measure", "constrained minimizer and its energy report"), "measure", leaves);
    add_leaf(app.add_subcommand("varopt", "numerical minimization over radial grid measures"), "varopt", leaves);
    auto* sim = app.add_subcommand("simulate", "Monte Carlo experiments");
    sim->require_subcommand(1);
    add_leaf(sim->add_subcommand("hole", "hole probability and forbidden-band depletion"), "simulate hole", leaves);
    add_leaf(sim->add_subcommand("conditional", "conditional linear statistic"), "simulate conditional", leaves);
    add_leaf(sim->add_subcommand("dominant", "dominant-monomial events"), "simulate dominant", leaves);
    auto* chk = app.add_subcommand("check", "self-checks; exit code 3 when a property fails");
    chk->require_subcommand(1);
    for (const char* name : {"density", "intensity", "stirling", "tail", "potential"}) {
        add_leaf(chk->add_subcommand(name), std::string("check ") + name, leaves);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (const auto& leaf : leaves) {
        if (!leaf->app->parsed()) continue;
        try {
            return run(*leaf);
        } catch (const pexgaf::ParameterError& e) {
            std::cerr << "parameter error: " << e.what() << "\n";
            return 2;
        } catch (const pexgaf::DomainError& e) {
            std::cerr << "domain error: " << e.what() << "\n";
            return 2;
        } catch (const pexgaf::cli::ParseError& e) {
            std::cerr << "parse error: " << e.what() << "\n";
            return 2;
        } catch (const pexgaf::cli::IoError& e) {
            std::cerr << "io error: " << e.what() << "\n";
            return 2;
        } catch (const pexgaf::ConvergenceError& e) {
            std::cerr << "convergence error: " << e.what() << "\n";
            return 3;
        } catch (const pexgaf::CoverageError& e) {
            std::cerr << "coverage error: " << e.what() << "\n";
            return 3;
        } catch (const pexgaf::ContourError& e) {
            std::cerr << "contour error: " << e.what() << "\n";
            return 3;
        } catch (const pexgaf::DegenerateDegreeError& e) {
            std::cerr << "degenerate polynomial: " << e.what() << "\n";
            return 3;
        }
    }
    return 2;
}
