#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "paretofam/alpha_param.hpp"
#include "paretofam/sampling.hpp"
#include "paretofam/stats.hpp"

namespace paretofam {

struct ExperimentConfig {
    std::string command;
    double alpha = 1.2;
    std::vector<std::size_t> n_grid = {10000};
    std::size_t replicates = 10000;
    std::uint64_t iterations = 10000000;
    std::uint64_t burn_in = 10000;
    std::uint64_t thinning = 1;
    std::uint64_t chains = 1;
    std::uint64_t seed = 20260808;
    int threads = 0;  // 0 = hardware concurrency
    std::string out_dir = "out";
    int bins_per_decade = 10;
    bool paper_scale = false;

    void validate_common() const;
    int resolved_threads() const;
};

/// Runs `body(i)` for i in [0, count) on up to `threads` workers. Work items
/// are independent; callers merge results by index so thread count never
/// changes output.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

/// One stats record per replicate, replicate i drawn from stream
/// (seed, stream_offset + i). Order of the result is by replicate index.
std::vector<ReplicateStats> simulate_replicates(const AlphaParam& params,
                                                std::size_t replicates,
                                                std::uint64_t seed,
                                                std::uint64_t stream_offset,
                                                int threads);

/// Histograms of the four chain coordinates plus run diagnostics.
struct ChainHistograms {
    HistogramGrid w1;
    HistogramGrid w2;
    HistogramGrid y2;    // raw y
    HistogramGrid n_e;   // raw 1/y
    double mean_y = 0.0;
    double acceptance_rate = 0.0;
    std::uint64_t samples = 0;
};

/// Runs `chains` independent chains (stream = offset + chain index) and
/// merges their histograms in index order.
ChainHistograms run_chain_histograms(const AlphaParam& params,
                                     std::uint64_t iterations,
                                     std::uint64_t burn_in,
                                     std::uint64_t thinning,
                                     std::uint64_t chains,
                                     std::uint64_t seed,
                                     std::uint64_t stream_offset, int threads,
                                     const HistogramGrid& w1_grid,
                                     const HistogramGrid& w2_grid,
                                     const HistogramGrid& y2_grid,
                                     const HistogramGrid& ne_grid);

// CLI entry points. Each writes CSV outputs plus one JSON manifest listing
// every file it produced, and returns a process exit code.
int run_simulate(const ExperimentConfig& cfg);
int run_recursion(const ExperimentConfig& cfg);
int run_analytic(const ExperimentConfig& cfg);
int run_figure1(const ExperimentConfig& cfg);
int run_figure2(const ExperimentConfig& cfg);
int run_validate(const ExperimentConfig& cfg);

/// One acceptance check outcome. `measured` vs `expected` at `tolerance`
/// (relative unless the name says otherwise).
struct CheckResult {
    int criterion = 0;
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string note;
};

/// Runs the full acceptance suite at desk scale (criteria 1-9). Progress
/// lines go to `log` as each criterion finishes.
std::vector<CheckResult> run_acceptance(std::uint64_t seed, int threads,
                                        bool paper_scale, std::ostream& log);

void print_acceptance_report(const std::vector<CheckResult>& results,
                             std::ostream& os);
bool all_passed(const std::vector<CheckResult>& results);

/// JSON report consumed by tooling; returns the all_pass verdict.
bool write_validation_report(const std::vector<CheckResult>& results,
                             std::uint64_t seed, bool paper_scale,
                             const std::string& path);

}  // namespace paretofam
