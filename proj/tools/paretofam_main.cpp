#include <cstdio>
#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "paretofam/runner.hpp"

namespace {

void add_common_options(CLI::App* cmd, paretofam::ExperimentConfig& cfg) {
    cmd->add_option("--alpha", cfg.alpha, "Pareto tail index");
    cmd->add_option("--n", cfg.n_grid, "population size (repeatable for a grid)");
    cmd->add_option("--replicates", cfg.replicates, "independent realizations");
    cmd->add_option("--iterations", cfg.iterations, "recursion iterations");
    cmd->add_option("--burn-in", cfg.burn_in, "recursion burn-in steps");
    cmd->add_option("--thin", cfg.thinning, "keep every k-th chain sample");
    cmd->add_option("--chains", cfg.chains, "independent chains to merge");
    cmd->add_option("--seed", cfg.seed, "master seed (default 20260808)");
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--bins-per-decade", cfg.bins_per_decade, "log-histogram resolution");
    cmd->add_flag("--paper-scale", cfg.paper_scale,
                  "use the figure-scale settings (N up to 1e6, 2e8 iterations)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pareto family-weight simulator: sampling, recursions, and asymptotic laws"};
    app.require_subcommand(1);

    paretofam::ExperimentConfig cfg;
    int (*entry)(const paretofam::ExperimentConfig&) = nullptr;

    const struct {
        const char* name;
        const char* help;
        int (*fn)(const paretofam::ExperimentConfig&);
    } commands[] = {
        {"simulate", "draw Pareto populations and write per-replicate records + histograms",
         &paretofam::run_simulate},
        {"recursion", "run the insert-and-shrink chain and write coordinate histograms",
         &paretofam::run_recursion},
        {"analytic", "tabulate the closed-form laws and moment reports",
         &paretofam::run_analytic},
        {"figure1", "bundle sampling + recursion + analytic densities per panel",
         &paretofam::run_figure1},
        {"figure2", "bundle binned Y2 vs recruitment with the sweepstakes relation",
         &paretofam::run_figure2},
        {"validate", "run the acceptance checks and write a JSON report",
         &paretofam::run_validate},
    };
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common_options(sub, cfg);
        sub->callback([&entry, fn = c.fn] { entry = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage errors exit 2
    }

    try {
        return entry(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
