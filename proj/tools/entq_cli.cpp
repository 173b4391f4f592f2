// entq_cli.cpp
// Command-line surface: run scenario files, replay the built-in paper
// scenarios, emit text or JSON reports.

#include "entq/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct CommonFlags {
    std::optional<std::uint64_t> seed;
    std::optional<long long> shots;
    std::optional<int> restarts;
    std::string report = "text";
    std::string out;
};

void apply_overrides(entq::Scenario& s, const CommonFlags& f) {
    if (f.seed) {
        s.opts.seed = *f.seed;
        s.tomography.seed = *f.seed;
        for (auto& sim : s.simulations) sim.seed = *f.seed;
    }
    if (f.shots) {
        s.tomography.shots = *f.shots;
        for (auto& sim : s.simulations) sim.shots = *f.shots;
    }
    if (f.restarts) s.opts.restarts = *f.restarts;
}

int emit(const entq::Report& rep, const CommonFlags& f) {
    const std::string body =
        f.report == "json" ? rep.to_json_string() : rep.to_text();
    if (f.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(f.out);
        if (!out) {
            std::cerr << "error: cannot write '" << f.out << "'\n";
            return 2;
        }
        out << body;
    }
    return 0;
}

int execute(entq::Scenario s, const CommonFlags& f) {
    apply_overrides(s, f);
    const entq::Report rep = entq::run_scenario(s);
    return emit(rep, f);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement evidence toolkit: decide whether measured "
                 "expectation values force every compatible state to be "
                 "entangled."};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string scenario_file, demo_name;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", flags.seed, "Master RNG seed override");
        cmd->add_option("--shots", flags.shots, "Shot-count override");
        cmd->add_option("--restarts", flags.restarts, "Optimizer restart count");
        cmd->add_option("--report", flags.report, "Report format")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--out", flags.out, "Write the report to this path");
    };

    CLI::App* run = app.add_subcommand("run", "Run a scenario JSON file");
    run->add_option("file", scenario_file, "Scenario file")->required();
    add_common(run);

    CLI::App* demo = app.add_subcommand("demo", "Run a built-in scenario");
    demo->add_option("name", demo_name, "Scenario name (see 'list')")->required();
    add_common(demo);

    app.add_subcommand("list", "List built-in scenarios");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list")) {
            for (const auto& n : entq::builtin_scenario_names())
                std::cout << n << "\n";
            return 0;
        }
        if (app.got_subcommand("run"))
            return execute(entq::scenario_from_file(scenario_file), flags);
        return execute(entq::builtin_scenario(demo_name), flags);
    } catch (const entq::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const entq::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const entq::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const entq::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const entq::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
