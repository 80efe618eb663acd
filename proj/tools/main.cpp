#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using cbd::cli::CommandOptions;

    CLI::App app{"Exact simulator for innovation diffusion among case-based decision-makers"};
    app.require_subcommand(1);

    CommandOptions options;
    std::string mode;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", options.configs, "YAML config file")->check(CLI::ExistingFile);
        cmd->add_option("--seed", options.seed, "generator seed (overrides generator.seed)");
        cmd->add_option("--horizon", options.horizon, "maximum number of periods (default 1000)");
        cmd->add_flag("--no-fast-forward", options.no_fast_forward, "step every period instead of skipping stalls");
        cmd->add_option("--mode", mode, "evaluation mode")->check(CLI::IsMember({"sum", "average"}));
        cmd->add_option("--out", options.out, "output directory");
    };

    auto* run = app.add_subcommand("run", "simulate one instance; writes trace.csv and summary.json");
    auto* compare = app.add_subcommand("compare", "compare two configs (--config A --config B); writes report.json");
    auto* sweep = app.add_subcommand("sweep", "one run per sweep value; writes sweep.csv");
    auto* validate = app.add_subcommand("validate", "check a config without simulating");
    for (auto* cmd : {run, compare, sweep, validate}) add_common(cmd);
    sweep->add_option("--jobs", options.jobs, "parallel runs")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (!mode.empty()) options.mode = mode == "sum" ? cbd::EvaluationMode::kSum : cbd::EvaluationMode::kAverage;

    if (run->parsed()) return cbd::cli::run_command(options, std::cout, std::cerr);
    if (compare->parsed()) return cbd::cli::compare_command(options, std::cout, std::cerr);
    if (sweep->parsed()) return cbd::cli::sweep_command(options, std::cout, std::cerr);
    return cbd::cli::validate_command(options, std::cout, std::cerr);
}
