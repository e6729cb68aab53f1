#include "paretofam/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "paretofam/analytic_laws.hpp"
#include "paretofam/quadrature.hpp"
#include "paretofam/recursion_engine.hpp"
#include "paretofam/special_functions.hpp"

namespace paretofam {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Round-trip exact decimal formatting keeps CSV output byte-stable.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

struct Manifest {
    json doc;
    fs::path dir;

    Manifest(const ExperimentConfig& cfg, const std::string& command) {
        dir = cfg.out_dir;
        doc["command"] = command;
        doc["alpha"] = cfg.alpha;
        doc["seed"] = cfg.seed;
        doc["threads"] = cfg.resolved_threads();
        doc["bins_per_decade"] = cfg.bins_per_decade;
        doc["paper_scale"] = cfg.paper_scale;
        doc["version"] = "0.1.0";
        doc["runs"] = json::array();
    }

    json& new_run() {
        doc["runs"].push_back(json{{"outputs", json::array()}});
        return doc["runs"].back();
    }

    void add_output(json& run, const std::string& filename) {
        run["outputs"].push_back(filename);
    }

    void write(const std::string& name = "manifest.json") {
        std::ofstream os(dir / name);
        os << doc.dump(2) << "\n";
    }
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw std::runtime_error("cannot write " + path.string());
    }
    os << text;
}

std::string replicates_csv(const std::vector<ReplicateStats>& stats) {
    std::ostringstream os;
    os << "replicate,r_n,w1,w2,y2,n_e,u2\n";
    for (std::size_t i = 0; i < stats.size(); ++i) {
        const ReplicateStats& s = stats[i];
        os << i << ',' << fmt(s.r_n) << ',' << fmt(s.w1()) << ',' << fmt(s.w2())
           << ',' << fmt(s.y2()) << ',' << fmt(s.n_e()) << ',' << fmt(s.u2())
           << '\n';
    }
    return os.str();
}

std::string histogram_csv(const HistogramGrid& grid) {
    std::ostringstream os;
    os << "edge_lo,edge_hi,count,density\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << fmt(grid.edges[i]) << ',' << fmt(grid.edges[i + 1]) << ','
           << grid.counts[i] << ',' << fmt(grid.density(i)) << '\n';
    }
    return os.str();
}

std::string curve_csv(const CurveTable& table) {
    std::ostringstream os;
    os << "x,f,law_id,in_domain\n";
    for (std::size_t i = 0; i < table.xs.size(); ++i) {
        os << fmt(table.xs[i]) << ',' << fmt(table.fs[i]) << ','
           << law_name(table.law) << ',' << int(table.in_domain[i]) << '\n';
    }
    return os.str();
}

HistogramGrid histogram_of(const std::vector<ReplicateStats>& stats,
                           double (ReplicateStats::*field)() const,
                           const HistogramGrid& grid_spec) {
    HistogramGrid grid = grid_spec;
    for (const ReplicateStats& s : stats) {
        grid.accumulate((s.*field)());
    }
    return grid;
}

}  // namespace

void ExperimentConfig::validate_common() const {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("config: alpha must be positive");
    }
    if (n_grid.empty()) {
        throw std::invalid_argument("config: need at least one population size");
    }
    for (std::size_t n : n_grid) {
        if (n < 2) throw std::invalid_argument("config: n must be >= 2");
    }
    if (replicates < 1) {
        throw std::invalid_argument("config: replicates must be >= 1");
    }
    if (iterations <= burn_in) {
        throw std::invalid_argument("config: iterations must exceed burn_in");
    }
    if (thinning == 0) {
        throw std::invalid_argument("config: thinning must be >= 1");
    }
}

int ExperimentConfig::resolved_threads() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    const int workers = std::min<std::size_t>(threads, count);
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

std::vector<ReplicateStats> simulate_replicates(const AlphaParam& params,
                                                std::size_t replicates,
                                                std::uint64_t seed,
                                                std::uint64_t stream_offset,
                                                int threads) {
    std::vector<ReplicateStats> out(replicates);
    parallel_for(replicates, threads, [&](std::size_t i) {
        RngStream rng(seed, stream_offset + i);
        out[i] = draw_replicate_stats(params, rng);
    });
    return out;
}

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
                                     const HistogramGrid& ne_grid) {
    if (chains == 0) chains = 1;
    if (thinning == 0) thinning = 1;
    struct ChainOut {
        HistogramGrid w1, w2, y2, ne;
        KahanSum y_sum;
        std::uint64_t samples = 0;
        double acceptance = 0.0;
    };
    std::vector<ChainOut> partial(chains);
    parallel_for(chains, threads, [&](std::size_t c) {
        ChainOut& o = partial[c];
        o.w1 = w1_grid;
        o.w2 = w2_grid;
        o.y2 = y2_grid;
        o.ne = ne_grid;
        RngStream rng(seed, stream_offset + c);
        RhoWeightSampler draw_weight(params);
        RecursionState state = initial_state(rng);
        for (std::uint64_t k = 0; k < iterations; ++k) {
            state = step(state, draw_weight(rng));
            if (k >= burn_in && (k - burn_in) % thinning == 0) {
                o.w1.accumulate(state.w_max);
                o.w2.accumulate(state.w_max2);
                o.y2.accumulate(state.y);
                o.ne.accumulate(1.0 / state.y);
                o.y_sum.add(state.y);
                ++o.samples;
            }
        }
        o.acceptance = draw_weight.acceptance_rate();
    });

    ChainHistograms merged;
    merged.w1 = w1_grid;
    merged.w2 = w2_grid;
    merged.y2 = y2_grid;
    merged.n_e = ne_grid;
    KahanSum mean_acc;
    double acc_rate = 0.0;
    for (const ChainOut& o : partial) {  // fixed merge order by chain index
        merged.w1.merge(o.w1);
        merged.w2.merge(o.w2);
        merged.y2.merge(o.y2);
        merged.n_e.merge(o.ne);
        mean_acc.add(o.y_sum.value());
        merged.samples += o.samples;
        acc_rate += o.acceptance;
    }
    merged.mean_y = merged.samples > 0
                        ? mean_acc.value() / static_cast<double>(merged.samples)
                        : 0.0;
    merged.acceptance_rate = acc_rate / static_cast<double>(chains);
    return merged;
}

namespace {

ExperimentConfig apply_paper_scale(const ExperimentConfig& cfg) {
    ExperimentConfig scaled = cfg;
    if (!cfg.paper_scale) return scaled;
    if (cfg.command == "simulate" || cfg.command == "figure2") {
        scaled.n_grid = {1000000};
        scaled.replicates = 100000;
    } else if (cfg.command == "recursion" || cfg.command == "figure1") {
        scaled.n_grid = {10000, 100000, 1000000};
        scaled.iterations = 200000000;
        if (cfg.command == "figure1") {
            scaled.replicates = 100000;
        }
    }
    return scaled;
}

struct FigureGrids {
    HistogramGrid w1, w2, y2, ne;
};

FigureGrids figure_grids(const AlphaParam& params, int bins_per_decade) {
    FigureGrids g;
    const double w_soft = std::pow(static_cast<double>(params.n), 1.0 / params.alpha - 1.0);
    const double w_lo = std::max(params.eps_n, w_soft / params.mu / 100.0);
    g.w1 = HistogramGrid::make_log(w_lo, 1.0, bins_per_decade);
    g.w2 = HistogramGrid::make_log(w_lo / 10.0, 1.0, bins_per_decade);
    const double y_lo = std::max(params.eps_n * params.eps_n,
                                 std::pow(w_soft / params.mu, 2.0) / 100.0);
    g.y2 = HistogramGrid::make_log(y_lo, 1.0, bins_per_decade);
    g.ne = HistogramGrid::make_log(1.0, 100.0 / (w_soft * w_soft), bins_per_decade);
    return g;
}

}  // namespace

int run_simulate(const ExperimentConfig& raw_cfg) {
    ExperimentConfig cfg = apply_paper_scale(raw_cfg);
    cfg.validate_common();
    fs::create_directories(cfg.out_dir);
    Manifest manifest(cfg, "simulate");

    std::uint64_t stream_offset = 0;
    for (std::size_t n : cfg.n_grid) {
        const AlphaParam params = AlphaParam::make(cfg.alpha, n);
        const auto stats = simulate_replicates(params, cfg.replicates, cfg.seed,
                                               stream_offset, cfg.resolved_threads());
        stream_offset += cfg.replicates;

        json& run = manifest.new_run();
        run["n"] = n;
        run["replicates"] = cfg.replicates;
        const std::string tag = "n" + std::to_string(n);

        const std::string rep_file = "replicates_" + tag + ".csv";
        write_text(fs::path(cfg.out_dir) / rep_file, replicates_csv(stats));
        manifest.add_output(run, rep_file);

        const FigureGrids grids = figure_grids(params, cfg.bins_per_decade);
        const std::pair<std::string, HistogramGrid> hists[] = {
            {"hist_w1_" + tag + ".csv", histogram_of(stats, &ReplicateStats::w1, grids.w1)},
            {"hist_w2_" + tag + ".csv", histogram_of(stats, &ReplicateStats::w2, grids.w2)},
            {"hist_y2_" + tag + ".csv", histogram_of(stats, &ReplicateStats::y2, grids.y2)},
            {"hist_ne_" + tag + ".csv", histogram_of(stats, &ReplicateStats::n_e, grids.ne)},
        };
        for (const auto& [name, grid] : hists) {
            write_text(fs::path(cfg.out_dir) / name, histogram_csv(grid));
            manifest.add_output(run, name);
        }
    }
    manifest.write();
    return 0;
}

int run_recursion(const ExperimentConfig& raw_cfg) {
    ExperimentConfig cfg = apply_paper_scale(raw_cfg);
    cfg.validate_common();
    fs::create_directories(cfg.out_dir);
    Manifest manifest(cfg, "recursion");

    std::uint64_t stream_offset = 0;
    for (std::size_t n : cfg.n_grid) {
        const AlphaParam params = AlphaParam::make(cfg.alpha, n);
        params.require_heavy_regime("recursion");
        const FigureGrids raw = figure_grids(params, cfg.bins_per_decade);
        // Fig. 1 coordinates: y scaled by 1/c_N, N_e scaled by c_N.
        HistogramGrid y_scaled = HistogramGrid::make_log(
            raw.y2.edges.front() / params.c_n, raw.y2.edges.back() / params.c_n,
            cfg.bins_per_decade);
        HistogramGrid ne_scaled = HistogramGrid::make_log(
            raw.ne.edges.front() * params.c_n, raw.ne.edges.back() * params.c_n,
            cfg.bins_per_decade);

        HistogramGrid w1 = raw.w1, w2 = raw.w2;
        HistogramGrid y2g = y_scaled, neg = ne_scaled;

        // Accumulate scaled coordinates chain-by-chain.
        struct ChainOut {
            HistogramGrid w1, w2, y2, ne;
            double acceptance = 0.0;
        };
        std::vector<ChainOut> partial(cfg.chains == 0 ? 1 : cfg.chains);
        parallel_for(partial.size(), cfg.resolved_threads(), [&](std::size_t c) {
            ChainOut& o = partial[c];
            o.w1 = raw.w1;
            o.w2 = raw.w2;
            o.y2 = y_scaled;
            o.ne = ne_scaled;
            RngStream rng(cfg.seed, stream_offset + c);
            RhoWeightSampler draw_weight(params);
            RecursionState state = initial_state(rng);
            for (std::uint64_t k = 0; k < cfg.iterations; ++k) {
                state = step(state, draw_weight(rng));
                if (k >= cfg.burn_in && (k - cfg.burn_in) % cfg.thinning == 0) {
                    o.w1.accumulate(state.w_max);
                    o.w2.accumulate(state.w_max2);
                    o.y2.accumulate(state.y / params.c_n);
                    o.ne.accumulate(params.c_n / state.y);
                }
            }
            o.acceptance = draw_weight.acceptance_rate();
        });
        stream_offset += partial.size();
        double acceptance = 0.0;
        for (const ChainOut& o : partial) {
            w1.merge(o.w1);
            w2.merge(o.w2);
            y2g.merge(o.y2);
            neg.merge(o.ne);
            acceptance += o.acceptance;
        }
        acceptance /= static_cast<double>(partial.size());

        json& run = manifest.new_run();
        run["n"] = n;
        run["iterations"] = cfg.iterations;
        run["burn_in"] = cfg.burn_in;
        run["thinning"] = cfg.thinning;
        run["chains"] = partial.size();
        run["rho_sampler_acceptance_rate"] = acceptance;
        const std::string tag = "n" + std::to_string(n);
        const std::pair<std::string, const HistogramGrid*> hists[] = {
            {"chain_w1_" + tag + ".csv", &w1},
            {"chain_w2_" + tag + ".csv", &w2},
            {"chain_y2_scaled_" + tag + ".csv", &y2g},
            {"chain_ne_scaled_" + tag + ".csv", &neg},
        };
        for (const auto& [name, grid] : hists) {
            write_text(fs::path(cfg.out_dir) / name, histogram_csv(*grid));
            manifest.add_output(run, name);
        }
    }
    manifest.write();
    return 0;
}

int run_analytic(const ExperimentConfig& cfg) {
    cfg.validate_common();
    fs::create_directories(cfg.out_dir);
    Manifest manifest(cfg, "analytic");

    for (std::size_t n : cfg.n_grid) {
        const AlphaParam params = AlphaParam::make(cfg.alpha, n);
        json& run = manifest.new_run();
        run["n"] = n;
        const std::string tag = "n" + std::to_string(n);
        for (LawId law : {LawId::rho, LawId::pi_w1, LawId::pi_w2, LawId::pi_y2, LawId::pi_ne}) {
            const CurveTable table = make_curve_table(law, params, 200);
            const std::string name = std::string("curve_") + law_name(law) + "_" + tag + ".csv";
            write_text(fs::path(cfg.out_dir) / name, curve_csv(table));
            manifest.add_output(run, name);
        }
        json moments;
        moments["c_n"] = params.c_n;
        moments["eps_n"] = params.eps_n;
        moments["mu"] = params.mu;
        for (int k = 2; k <= 4; ++k) {
            const MomentReport r = expected_yk(params, k);
            moments["E_Y" + std::to_string(k)] = {{"value", r.value},
                                                  {"regime", regime_name(r.regime)}};
        }
        if (params.alpha > 1.0 && params.alpha < 2.0) {
            moments["cv_y2"] = cv_y2(params);
            const OrderStatMoments osm = order_stat_moments(params);
            moments["E_X1"] = osm.e_x1;
            moments["E_X2"] = osm.e_x2;
            moments["E_X2_sq"] = osm.e_x2_sq;
            moments["E_X1X2"] = osm.e_x1_x2;
            moments["E_R2"] = osm.e_r2;
        }
        const std::string name = "moments_" + tag + ".json";
        std::ofstream os(fs::path(cfg.out_dir) / name);
        os << moments.dump(2) << "\n";
        manifest.add_output(run, name);
    }

    // CV[Y_2] scaling fit across the population-size grid
    if (cfg.n_grid.size() >= 3 && cfg.alpha > 1.0 && cfg.alpha < 2.0) {
        std::vector<std::pair<double, double>> points;
        for (std::size_t n : cfg.n_grid) {
            points.emplace_back(static_cast<double>(n),
                                cv_y2(AlphaParam::make(cfg.alpha, n)));
        }
        const ScalingFit fit = fit_power_law(points);
        json fit_doc;
        fit_doc["statistic"] = "cv_y2";
        fit_doc["slope"] = fit.slope;
        fit_doc["stderr_slope"] = fit.stderr_slope;
        fit_doc["intercept"] = fit.intercept;
        fit_doc["r2"] = fit.r2;
        fit_doc["log_points"] = json::array();
        for (const auto& [x, y] : fit.log_points) {
            fit_doc["log_points"].push_back({{"ln_n", x}, {"ln_cv", y}});
        }
        json& run = manifest.new_run();
        run["fit"] = "cv_y2";
        std::ofstream os(fs::path(cfg.out_dir) / "fit_cv_y2.json");
        os << fit_doc.dump(2) << "\n";
        manifest.add_output(run, "fit_cv_y2.json");
    }
    manifest.write();
    return 0;
}

int run_figure1(const ExperimentConfig& raw_cfg) {
    ExperimentConfig cfg = apply_paper_scale(raw_cfg);
    cfg.validate_common();
    fs::create_directories(cfg.out_dir);
    Manifest manifest(cfg, "figure1");

    std::uint64_t stream_offset = 0;
    for (std::size_t n : cfg.n_grid) {
        const AlphaParam params = AlphaParam::make(cfg.alpha, n);
        params.require_heavy_regime("figure1");
        const FigureGrids grids = figure_grids(params, cfg.bins_per_decade);

        const auto stats = simulate_replicates(params, cfg.replicates, cfg.seed,
                                               stream_offset, cfg.resolved_threads());
        stream_offset += cfg.replicates;
        const ChainHistograms chain = run_chain_histograms(
            params, cfg.iterations, cfg.burn_in, cfg.thinning,
            cfg.chains == 0 ? 1 : cfg.chains, cfg.seed, stream_offset,
            cfg.resolved_threads(), grids.w1, grids.w2, grids.y2, grids.ne);
        stream_offset += cfg.chains == 0 ? 1 : cfg.chains;

        struct Panel {
            const char* file_tag;
            const char* x_name;
            LawId law;
            HistogramGrid mc;
            const HistogramGrid* chain;
        };
        Panel panels[] = {
            {"a_w1", "w", LawId::pi_w1, histogram_of(stats, &ReplicateStats::w1, grids.w1), &chain.w1},
            {"b_w2", "w", LawId::pi_w2, histogram_of(stats, &ReplicateStats::w2, grids.w2), &chain.w2},
            {"c_y2", "y", LawId::pi_y2, histogram_of(stats, &ReplicateStats::y2, grids.y2), &chain.y2},
            {"d_ne", "y", LawId::pi_ne, histogram_of(stats, &ReplicateStats::n_e, grids.ne), &chain.n_e},
        };

        json& run = manifest.new_run();
        run["n"] = n;
        run["replicates"] = cfg.replicates;
        run["iterations"] = cfg.iterations;
        const std::string tag = "n" + std::to_string(n);
        std::vector<std::string> panel_files;
        for (const Panel& p : panels) {
            const LawDomain domain = law_domain(p.law, params);
            std::ostringstream os;
            os << p.x_name << ",empirical_density,analytic_" << law_name(p.law)
               << ",chain_density,in_domain\n";
            for (std::size_t i = 0; i < p.mc.size(); ++i) {
                const double x = p.mc.center(i);
                os << fmt(x) << ',' << fmt(p.mc.density(i)) << ','
                   << fmt(law_eval(p.law, params, x)) << ','
                   << fmt(p.chain->density(i)) << ','
                   << int(domain.contains(x)) << '\n';
            }
            const std::string name =
                std::string("figure1_") + p.file_tag + "_" + tag + ".csv";
            write_text(fs::path(cfg.out_dir) / name, os.str());
            manifest.add_output(run, name);
            panel_files.push_back(name);
        }

        std::ostringstream gp;
        gp << "# gnuplot stub for figure 1 panels (" << tag << ")\n"
           << "set logscale xy\nset datafile separator ','\n";
        const char* titles[] = {"P(W1)", "P(W2)", "P(Y2)", "P(Ne)"};
        for (int i = 0; i < 4; ++i) {
            gp << "plot '" << panel_files[i] << "' using 1:2 with steps title 'sampling', \\\n"
               << "     '" << panel_files[i] << "' using 1:4 with points title 'recursion', \\\n"
               << "     '" << panel_files[i] << "' using 1:3 with lines title '" << titles[i] << "'\n"
               << "pause -1\n";
        }
        const std::string gp_name = "figure1_" + tag + ".gp";
        write_text(fs::path(cfg.out_dir) / gp_name, gp.str());
        manifest.add_output(run, gp_name);
    }
    manifest.write();
    return 0;
}

int run_figure2(const ExperimentConfig& raw_cfg) {
    ExperimentConfig cfg = apply_paper_scale(raw_cfg);
    cfg.validate_common();
    fs::create_directories(cfg.out_dir);
    Manifest manifest(cfg, "figure2");

    std::uint64_t stream_offset = 0;
    for (std::size_t n : cfg.n_grid) {
        const AlphaParam params = AlphaParam::make(cfg.alpha, n);
        params.require_heavy_regime("figure2");
        const auto stats = simulate_replicates(params, cfg.replicates, cfg.seed,
                                               stream_offset, cfg.resolved_threads());
        stream_offset += cfg.replicates;

        std::vector<double> scaled_y2(stats.size());
        std::vector<double> scaled_rn(stats.size());
        const double mu_n = params.mu * static_cast<double>(n);
        for (std::size_t i = 0; i < stats.size(); ++i) {
            scaled_y2[i] = stats[i].y2() / params.c_n;
            scaled_rn[i] = stats[i].r_n / mu_n;
        }
        std::vector<double> edges;
        for (double e = 0.7; e <= 2.5 + 1e-9; e += 0.05) edges.push_back(e);
        const BinnedCurve curve = binned_conditional(scaled_y2, scaled_rn, edges);

        std::ostringstream os;
        os << "rn_over_mun,mean_y2_over_cn,q025,q975,count,low_confidence,"
              "sweepstakes_curve\n";
        for (std::size_t b = 0; b < curve.centers.size(); ++b) {
            if (!curve.occupied[b]) continue;  // flagged gap, not a zero row
            os << fmt(curve.centers[b]) << ',' << fmt(curve.means[b]) << ','
               << fmt(curve.q_lo[b]) << ',' << fmt(curve.q_hi[b]) << ','
               << curve.counts[b] << ',' << int(curve.low_confidence[b]) << ','
               << fmt(sweepstakes_curve(params, curve.centers[b] * mu_n) / params.c_n)
               << '\n';
        }
        json& run = manifest.new_run();
        run["n"] = n;
        run["replicates"] = cfg.replicates;
        const std::string tag = "n" + std::to_string(n);
        const std::string name = "figure2_" + tag + ".csv";
        write_text(fs::path(cfg.out_dir) / name, os.str());
        manifest.add_output(run, name);

        std::ostringstream gp;
        gp << "# gnuplot stub for figure 2 (" << tag << ")\n"
           << "set datafile separator ','\nset logscale y\n"
           << "plot '" << name << "' using 1:2:3:4 with yerrorbars title 'binned Y2/cN', \\\n"
           << "     '" << name << "' using 1:7 with lines title 'sweepstakes relation'\n"
           << "pause -1\n";
        const std::string gp_name = "figure2_" + tag + ".gp";
        write_text(fs::path(cfg.out_dir) / gp_name, gp.str());
        manifest.add_output(run, gp_name);
    }
    manifest.write();
    return 0;
}

// ---------------------------------------------------------------------------
// Acceptance suite
// ---------------------------------------------------------------------------

namespace {

struct CheckBuilder {
    std::vector<CheckResult>& out;
    std::ostream& log;

    void add(int criterion, const std::string& name, double measured,
             double expected, double tolerance, bool pass,
             const std::string& note = "") {
        out.push_back({criterion, name, measured, expected, tolerance, pass, false, note});
        log << "  [" << criterion << "] " << (pass ? "pass" : "FAIL") << "  "
            << name << "  measured=" << measured << " expected=" << expected
            << " tol=" << tolerance;
        if (!note.empty()) log << "  (" << note << ")";
        log << "\n";
    }

    void add_relative(int criterion, const std::string& name, double measured,
                      double expected, double rel_tol, const std::string& note = "") {
        const double rel = std::abs(measured - expected) /
                           std::max(std::abs(expected), 1e-300);
        add(criterion, name, measured, expected, rel_tol, rel <= rel_tol, note);
    }

    void skip(int criterion, const std::string& name, const std::string& note) {
        out.push_back({criterion, name, 0.0, 0.0, 0.0, true, true, note});
        log << "  [" << criterion << "] skip  " << name << "  (" << note << ")\n";
    }
};

// Worst relative deviation of empirical density vs the law over qualifying
// bins (>= min_count counts, geometric center inside the trust window).
struct BinComparison {
    double worst = 0.0;
    int bins = 0;
};

BinComparison compare_histogram_to_law(const HistogramGrid& hist, LawId law,
                                       const AlphaParam& params,
                                       std::uint64_t min_count) {
    const LawDomain domain = law_domain(law, params);
    BinComparison cmp;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        const double x = hist.center(i);
        if (hist.counts[i] < min_count || !domain.trusted(x)) continue;
        const double ana = law_eval(law, params, x);
        if (ana <= 0.0) continue;
        const double dev = std::abs(hist.density(i) / ana - 1.0);
        cmp.worst = std::max(cmp.worst, dev);
        ++cmp.bins;
    }
    return cmp;
}

BinComparison compare_histograms(const HistogramGrid& a, const HistogramGrid& b,
                                 LawId law, const AlphaParam& params,
                                 std::uint64_t min_count) {
    const LawDomain domain = law_domain(law, params);
    BinComparison cmp;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a.center(i);
        if (a.counts[i] < min_count || b.counts[i] < min_count ||
            !domain.trusted(x)) {
            continue;
        }
        const double db = b.density(i);
        if (db <= 0.0) continue;
        const double dev = std::abs(a.density(i) / db - 1.0);
        cmp.worst = std::max(cmp.worst, dev);
        ++cmp.bins;
    }
    return cmp;
}

std::string bins_note(const BinComparison& cmp) {
    return std::to_string(cmp.bins) + " qualifying bins";
}

double mean_of(const std::vector<double>& v) {
    KahanSum s;
    for (double x : v) s.add(x);
    return s.value() / static_cast<double>(v.size());
}

}  // namespace

std::vector<CheckResult> run_acceptance(std::uint64_t seed, int threads,
                                        bool paper_scale, std::ostream& log) {
    std::vector<CheckResult> results;
    CheckBuilder check{results, log};
    const double t0 = now_seconds();

    // ---- criterion 1: exact identities --------------------------------
    {
        log << "criterion 1: exact identities\n";
        const AlphaParam params = AlphaParam::make(1.2, 100000);
        double worst = 0.0;
        RngStream rng(seed, 9001);
        for (int rep = 0; rep < 5; ++rep) {
            const PopulationDraw draw = draw_population(params, rng);
            worst = std::max(worst, std::abs(draw.y.at(1) - 1.0));
            const double w1 = draw.x_sorted[0] / draw.r_n;
            const double rebuilt = reconstruct_y2_from_parts(w1, draw.u2);
            worst = std::max(worst,
                             std::abs(rebuilt / draw.y.at(2) - 1.0));
            if (draw.y.at(0) != static_cast<double>(params.n)) worst = 1.0;
        }
        check.add(1, "draws: sum(w)=1, Y0=N, Y2 = W1^2+(1-W1)^2 U2", worst, 0.0,
                  1e-12, worst <= 1e-12);

        double worst_cov = 0.0;
        const LawDomain y_dom = law_domain(LawId::pi_y2, params);
        for (int i = 0; i <= 40; ++i) {
            const double y = y_dom.lo * std::pow(0.98 / y_dom.lo, i / 40.0);
            const double lhs = pi_y2(params, y);
            const double rhs = pi_w1(params, std::sqrt(y)) / (2.0 * std::sqrt(y));
            worst_cov = std::max(worst_cov, std::abs(lhs / rhs - 1.0));
            const double ne = 1.0 / y;
            const double lhs2 = pi_ne(params, ne);
            const double rhs2 = pi_y2(params, 1.0 / ne) / (ne * ne);
            worst_cov = std::max(worst_cov, std::abs(lhs2 / rhs2 - 1.0));
        }
        check.add(1, "change of variables: pi_y2 vs pi_w1, pi_ne vs pi_y2",
                  worst_cov, 0.0, 1e-12, worst_cov <= 1e-12);

        const double beta_ratio_dev =
            std::abs(expected_yk(params, 2).value / params.c_n - 1.0);
        check.add(1, "E[Y_2] = c_n (Beta ratio 1 at k=2)", beta_ratio_dev, 0.0,
                  1e-12, beta_ratio_dev <= 1e-12);
    }

    // ---- criterion 2: normalization suite ------------------------------
    {
        log << "criterion 2: normalization integrals (alpha=1.2, N=1e6)\n";
        const double t_start = now_seconds();
        const AlphaParam params = AlphaParam::make(1.2, 1000000);
        const double nd = 1e6;
        check.add_relative(2, "int rho dw over [eps,1] = N",
                           law_mass(LawId::rho, params), nd, 0.01);
        check.add_relative(2, "int w rho dw over [eps,1] = 1",
                           law_moment(LawId::rho, params, 1), 1.0, 0.01,
                           "exact finite-N value 0.95281; the asymptotic claim "
                           "converges as eps_n^(alpha-1), 1% needs N >~ 3e9");
        check.add_relative(2, "int pi_y2 dy = 1", law_mass(LawId::pi_y2, params),
                           1.0, 0.02);
        check.add_relative(2, "int y pi_y2 dy = c_n",
                           law_moment(LawId::pi_y2, params, 1), params.c_n, 0.02,
                           "exact value 0.9558 c_n: the first moment loses "
                           "O(domain_lo^(1-alpha/2)) mass below the cut");
        check.add_relative(2, "int pi_ne dy = 1", law_mass(LawId::pi_ne, params),
                           1.0, 0.02);
        const double elapsed = now_seconds() - t_start;
        check.add(2, "quadrature runtime < 60 s", elapsed, 60.0, 0.0,
                  elapsed < 60.0, "seconds");
    }

    // ---- criterion 3: Y moment reproduction ----------------------------
    {
        log << "criterion 3: Monte Carlo Y2/Y3 moments (alpha=1.2, N=1e4)\n";
        const AlphaParam params = AlphaParam::make(1.2, 10000);
        const std::size_t reps = 30000;
        std::vector<double> y2(reps), y3(reps);
        parallel_for(reps, threads, [&](std::size_t i) {
            RngStream rng(seed, 100000 + i);
            const double inv_alpha = 1.0 / params.alpha;
            KahanSum sum, sum_sq, sum_cu;
            for (std::size_t j = 0; j < params.n; ++j) {
                const double x = std::pow(1.0 - rng.next_unit(), -inv_alpha);
                sum.add(x);
                sum_sq.add(x * x);
                sum_cu.add(x * x * x);
            }
            const double r = sum.value();
            y2[i] = sum_sq.value() / (r * r);
            y3[i] = sum_cu.value() / (r * r * r);
        });
        check.add_relative(3, "mean Y2 vs c_n", mean_of(y2), params.c_n, 0.10,
                           "30000 replicates; exact finite-N mean is 1.1734 c_n "
                           "at this N (moment-integral oracle), converging as "
                           "N^(1-alpha)");
        check.add_relative(3, "mean Y3 vs c_n (2-alpha)/2", mean_of(y3),
                           params.c_n * (2.0 - params.alpha) / 2.0, 0.15,
                           "exact finite-N mean is 1.1736x the target here");
    }

    // ---- criterion 4: CV[Y_2] scaling ----------------------------------
    {
        log << "criterion 4: CV[Y2] scaling (alpha=1.5)\n";
        const double alpha = 1.5;
        const std::size_t n_grid[] = {1000, 10000, 100000};
        const std::size_t reps_grid[] = {40000, 40000, 20000};
        std::vector<std::pair<double, double>> mc_points;
        std::uint64_t offset = 200000;
        for (int g = 0; g < 3; ++g) {
            const AlphaParam params = AlphaParam::make(alpha, n_grid[g]);
            const std::size_t reps = reps_grid[g];
            std::vector<double> y2(reps);
            parallel_for(reps, threads, [&](std::size_t i) {
                RngStream rng(seed, offset + i);
                const double inv_alpha = 1.0 / alpha;
                KahanSum sum, sum_sq;
                for (std::size_t j = 0; j < params.n; ++j) {
                    const double x = std::pow(1.0 - rng.next_unit(), -inv_alpha);
                    sum.add(x);
                    sum_sq.add(x * x);
                }
                const double r = sum.value();
                y2[i] = sum_sq.value() / (r * r);
            });
            offset += reps;
            const double mean = mean_of(y2);
            double var = 0.0;
            for (double v : y2) var += (v - mean) * (v - mean);
            var /= static_cast<double>(reps - 1);
            mc_points.emplace_back(static_cast<double>(n_grid[g]),
                                   std::sqrt(var) / mean);
        }
        const ScalingFit mc_fit = fit_power_law(mc_points);
        const double target = (alpha - 1.0) / 2.0;
        check.add(4, "MC CV[Y2] slope vs (alpha-1)/2", mc_fit.slope, target, 0.05,
                  std::abs(mc_fit.slope - target) <= 0.05,
                  "stderr " + fmt(mc_fit.stderr_slope));

        std::vector<std::pair<double, double>> ana_points;
        for (std::size_t n : {std::size_t(10000), std::size_t(100000), std::size_t(1000000)}) {
            ana_points.emplace_back(static_cast<double>(n),
                                    cv_y2(AlphaParam::make(alpha, n)));
        }
        const ScalingFit ana_fit = fit_power_law(ana_points);
        check.add(4, "analytic cv_y2 slope (top grid)", ana_fit.slope, target,
                  0.02, std::abs(ana_fit.slope - target) <= 0.02);
    }

    // ---- criteria 5 and 6: figure-1 reproduction + modes ---------------
    {
        log << "criterion 5: figure-1 desk-scale reproduction (alpha=1.2, N=1e4)\n";
        const double t_start = now_seconds();
        const AlphaParam params = AlphaParam::make(1.2, 10000);
        const int bins_per_decade = 10;
        const FigureGrids grids = figure_grids(params, bins_per_decade);

        const auto stats = simulate_replicates(params, 10000, seed, 400000, threads);
        HistogramGrid mc_w1 = histogram_of(stats, &ReplicateStats::w1, grids.w1);
        HistogramGrid mc_w2 = histogram_of(stats, &ReplicateStats::w2, grids.w2);
        HistogramGrid mc_y2 = histogram_of(stats, &ReplicateStats::y2, grids.y2);
        HistogramGrid mc_ne = histogram_of(stats, &ReplicateStats::n_e, grids.ne);

        const ChainHistograms chain = run_chain_histograms(
            params, 10000000, 10000, 1, 1, seed, 500000, threads, grids.w1,
            grids.w2, grids.y2, grids.ne);

        struct PanelCase {
            const char* name;
            LawId law;
            const HistogramGrid* mc;
            const HistogramGrid* ch;
        };
        const PanelCase cases[] = {
            {"W1", LawId::pi_w1, &mc_w1, &chain.w1},
            {"W2", LawId::pi_w2, &mc_w2, &chain.w2},
            {"Y2", LawId::pi_y2, &mc_y2, &chain.y2},
            {"Ne", LawId::pi_ne, &mc_ne, &chain.n_e},
        };
        const std::string chain_note =
            "; the chain's stationary density carries an extra (1-x)/alpha "
            "factor vs the law (insert-and-shrink flux balance), strongest "
            "toward x = 1";
        const std::string summand_note =
            "; largest-summand approximation: the neglected lower-order-"
            "statistic term shifts the abscissa by ~11% at the domain edge, "
            "independent of N";
        for (const PanelCase& c : cases) {
            const bool y_like = c.law == LawId::pi_y2 || c.law == LawId::pi_ne;
            const BinComparison mc_vs_law =
                compare_histogram_to_law(*c.mc, c.law, params, 100);
            check.add(5, std::string(c.name) + ": sampling vs analytic",
                      mc_vs_law.worst, 0.0, 0.25, mc_vs_law.worst <= 0.25,
                      bins_note(mc_vs_law) +
                          (mc_vs_law.worst > 0.25 && y_like ? summand_note : ""));
            const BinComparison ch_vs_law =
                compare_histogram_to_law(*c.ch, c.law, params, 100);
            check.add(5, std::string(c.name) + ": recursion vs analytic",
                      ch_vs_law.worst, 0.0, 0.25, ch_vs_law.worst <= 0.25,
                      bins_note(ch_vs_law) +
                          (ch_vs_law.worst > 0.25 ? chain_note : ""));
            const BinComparison ch_vs_mc =
                compare_histograms(*c.ch, *c.mc, c.law, params, 100);
            check.add(5, std::string(c.name) + ": recursion vs sampling",
                      ch_vs_mc.worst, 0.0, 0.25, ch_vs_mc.worst <= 0.25,
                      bins_note(ch_vs_mc) +
                          (ch_vs_mc.worst > 0.25 ? chain_note : ""));
        }
        const double elapsed = now_seconds() - t_start;
        check.add(5, "figure-1 runtime < 600 s", elapsed, 600.0, 0.0,
                  elapsed < 600.0, "seconds");

        log << "criterion 6: mode checks\n";
        // Finer grids for mode location; same chain stream reproduces the path.
        HistogramGrid fine_y2 = HistogramGrid::make_log(1e-6, 1.0, 20);
        HistogramGrid fine_ne = HistogramGrid::make_log(1.0, 1e4, 20);
        const ChainHistograms fine = run_chain_histograms(
            params, 10000000, 10000, 1, 1, seed, 500000, threads, grids.w1,
            grids.w2, fine_y2, fine_ne);

        const double ne_mode =
            empirical_mode(fine.n_e, ModeConvention::linear_density);
        const double ne_target = std::pow(2.0 - params.alpha, -2.0);
        const double ne_factor = std::max(ne_mode / ne_target, ne_target / ne_mode);
        check.add(6, "N_e chain mode vs (2-alpha)^-2", ne_mode, ne_target, 2.0,
                  ne_factor <= 2.0,
                  "factor " + fmt(ne_factor) +
                      "; the chain's stationary law flattens the interior "
                      "mode toward 4/(2-alpha)^2 and beyond");

        const double y2_mode =
            empirical_mode(fine.y2, ModeConvention::log_density);
        const double y2_target =
            std::pow(static_cast<double>(params.n), 2.0 * (1.0 / params.alpha - 1.0)) /
            (params.mu * params.mu);
        const double y2_factor = std::max(y2_mode / y2_target, y2_target / y2_mode);
        check.add(6, "Y_2 chain mode vs N^(2(1/alpha-1))/mu^2", y2_mode,
                  y2_target, 3.0, y2_factor <= 3.0, "factor " + fmt(y2_factor));

        const AlphaParam params5 = AlphaParam::make(1.2, 100000);
        HistogramGrid fine_ne5 = HistogramGrid::make_log(1.0, 1e5, 20);
        const ChainHistograms fine5 = run_chain_histograms(
            params5, 10000000, 10000, 1, 1, seed, 600000, threads, grids.w1,
            grids.w2, fine_y2, fine_ne5);
        const double ne_mode5 =
            empirical_mode(fine5.n_e, ModeConvention::linear_density);
        const double stability = std::max(ne_mode / ne_mode5, ne_mode5 / ne_mode);
        check.add(6, "N_e mode N-independence (N=1e4 vs 1e5)", ne_mode5, ne_mode,
                  1.5, stability <= 1.5, "factor " + fmt(stability));
    }

    // ---- criterion 7: figure-2 reproduction ----------------------------
    {
        log << "criterion 7: figure-2 desk-scale reproduction (alpha=1.2, N=1e5)\n";
        const AlphaParam params = AlphaParam::make(1.2, 100000);
        const auto stats = simulate_replicates(params, 10000, seed, 700000, threads);
        const double mu_n = params.mu * static_cast<double>(params.n);
        std::vector<double> scaled_y2(stats.size()), scaled_rn(stats.size());
        for (std::size_t i = 0; i < stats.size(); ++i) {
            scaled_y2[i] = stats[i].y2() / params.c_n;
            scaled_rn[i] = stats[i].r_n / mu_n;
        }
        std::vector<double> edges;
        for (double e = 0.7; e <= 2.5 + 1e-9; e += 0.05) edges.push_back(e);
        const BinnedCurve curve = binned_conditional(scaled_y2, scaled_rn, edges);
        int qualifying = 0, outside = 0;
        for (std::size_t b = 0; b < curve.centers.size(); ++b) {
            if (!curve.occupied[b] || curve.counts[b] < 100) continue;
            ++qualifying;
            const double predicted =
                sweepstakes_curve(params, curve.centers[b] * mu_n) / params.c_n;
            if (predicted < curve.q_lo[b] || predicted > curve.q_hi[b]) ++outside;
        }
        check.add(7, "sweepstakes curve inside 95% bands (bins >= 100 samples)",
                  outside, 0.0, 0.0, outside == 0,
                  std::to_string(qualifying) +
                      " qualifying bins; violations sit at R_N <= mu N, where "
                      "the (1 - mu N/R_N)^2 term does not describe the "
                      "conditional Y_2, and just above mu N where the "
                      "E[R_2,N] shift Gamma(1-1/alpha) N^(1/alpha) dominates");

        if (paper_scale) {
            const AlphaParam big = AlphaParam::make(1.2, 1000000);
            const auto big_stats = simulate_replicates(big, 1000, seed, 800000, threads);
            std::vector<double> big_y2(big_stats.size());
            for (std::size_t i = 0; i < big_stats.size(); ++i) {
                big_y2[i] = big_stats[i].y2() / big.c_n;
            }
            const double typical = nearest_rank_quantile(big_y2, 0.5);
            const double measured_log = std::log10(typical);
            check.add(7, "typical Y2/c_n at paper scale, log10 vs -0.8",
                      measured_log, -0.8, 0.5,
                      std::abs(measured_log + 0.8) <= 0.5, "N=1e6, median");
        } else {
            check.skip(7, "typical Y2/c_n at paper scale",
                       "paper scale only; run validate --paper-scale");
        }
    }

    // ---- criterion 8: order statistics ---------------------------------
    {
        log << "criterion 8: order-statistic suite (alpha=1.5)\n";
        const AlphaParam params = AlphaParam::make(1.5, 1000);
        const OrderStatMoments m = order_stat_moments(params);
        const double ratio_dev =
            std::abs(m.e_x2 / m.e_x1 - (params.alpha - 1.0) / params.alpha);
        check.add(8, "exact E[X2]/E[X1] = (alpha-1)/alpha", m.e_x2 / m.e_x1,
                  (params.alpha - 1.0) / params.alpha, 1e-12,
                  ratio_dev <= 1e-12);

        const std::size_t reps = 200000;
        std::vector<double> x2(reps), x2sq(reps);
        parallel_for(reps, threads, [&](std::size_t i) {
            RngStream rng(seed, 900000 + i);
            const ReplicateStats s = draw_replicate_stats(params, rng);
            x2[i] = s.x2;
            x2sq[i] = s.x2 * s.x2;
        });
        check.add_relative(8, "MC E[X2] vs exact (N=1e3, 2e5 reps)", mean_of(x2),
                           m.e_x2, 0.05);
        check.add_relative(8, "MC E[X2^2] vs exact", mean_of(x2sq), m.e_x2_sq,
                           0.05);
    }

    // ---- criterion 9: determinism --------------------------------------
    {
        log << "criterion 9: thread-count determinism\n";
        const AlphaParam params = AlphaParam::make(1.2, 1000);
        std::string reference;
        bool identical = true;
        for (int t : {1, 2, 8}) {
            const auto stats = simulate_replicates(params, 200, seed, 950000, t);
            const std::string csv = replicates_csv(stats);
            if (reference.empty()) {
                reference = csv;
            } else if (csv != reference) {
                identical = false;
            }
        }
        check.add(9, "identical CSV bytes across 1/2/8 threads",
                  identical ? 0.0 : 1.0, 0.0, 0.0, identical);
    }

    log << "acceptance suite finished in " << (now_seconds() - t0) << " s\n";
    return results;
}

void print_acceptance_report(const std::vector<CheckResult>& results,
                             std::ostream& os) {
    for (int criterion = 1; criterion <= 9; ++criterion) {
        int total = 0, passed = 0, skipped = 0;
        for (const CheckResult& r : results) {
            if (r.criterion != criterion) continue;
            ++total;
            if (r.skipped) ++skipped;
            else if (r.pass) ++passed;
        }
        if (total == 0) continue;
        const bool ok = passed + skipped == total;
        os << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " ("
           << passed << "/" << (total - skipped) << " checks";
        if (skipped > 0) os << ", " << skipped << " skipped";
        os << ")\n";
    }
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results) {
        if (!r.skipped && !r.pass) return false;
    }
    return true;
}

bool write_validation_report(const std::vector<CheckResult>& results,
                             std::uint64_t seed, bool paper_scale,
                             const std::string& path) {
    json report;
    report["seed"] = seed;
    report["paper_scale"] = paper_scale;
    report["checks"] = json::array();
    for (const CheckResult& r : results) {
        report["checks"].push_back({{"criterion", r.criterion},
                                    {"name", r.name},
                                    {"measured", r.measured},
                                    {"expected", r.expected},
                                    {"tolerance", r.tolerance},
                                    {"pass", r.pass},
                                    {"skipped", r.skipped},
                                    {"note", r.note}});
    }
    const bool ok = all_passed(results);
    report["all_pass"] = ok;
    std::ofstream os(path);
    os << report.dump(2) << "\n";
    return ok;
}

int run_validate(const ExperimentConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    const auto results =
        run_acceptance(cfg.seed, cfg.resolved_threads(), cfg.paper_scale, std::cout);
    print_acceptance_report(results, std::cout);
    const bool ok = write_validation_report(
        results, cfg.seed, cfg.paper_scale,
        (fs::path(cfg.out_dir) / "validation_report.json").string());
    return ok ? 0 : 1;
}

}  // namespace paretofam
