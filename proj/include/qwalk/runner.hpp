// Experiment runners behind the CLI subcommands. Each run writes its data
// files plus manifest.json (config echo, per-file FNV-1a checksums, wall
// time). Data CSVs are byte-deterministic for a given config; the manifest
// carries the wall time and is not.
#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <json.hpp>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "qwalk/config.hpp"
#include "qwalk/io.hpp"
#include "qwalk/metrics.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

struct RunOutput {
    std::string file;
    std::string content;
};

namespace detail {

inline Eigen::VectorXcd initial_vector(const ExperimentConfig& cfg, int dim) {
    if (cfg.initial.empty())
        throw config_error("config is missing 'initial' coin amplitudes");
    if (static_cast<int>(cfg.initial.size()) != dim)
        throw config_error("initial has " + std::to_string(cfg.initial.size()) +
                           " amplitudes but the coin needs " + std::to_string(dim));
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = cfg.initial[i];
    return v;
}

inline WalkSpec build_walk_spec(const ExperimentConfig& cfg) {
    WalkSpec spec;
    spec.coin = parse_coin(cfg.coin);
    spec.shift = cfg.walk;
    spec.initial_coin = initial_vector(cfg, spec.coin.dim);
    spec.steps = cfg.steps;
    return spec;
}

inline int occupancy_n_at(const ExperimentConfig& cfg, ShiftKind shift, int t) {
    return cfg.occupancy_n > 0 ? cfg.occupancy_n : range(shift, t);
}

// Scalar metric tokens (everything except distribution/bands/vdensity).
inline double eval_scalar_metric(const std::string& tok, const ProbabilityDistribution& dist,
                                 const WalkState* state, const ExperimentConfig& cfg,
                                 ShiftKind shift, int t) {
    if (tok == "occ")
        return occupancy_number(dist, occupancy_n_at(cfg, shift, t));
    if (tok == "occrate")
        return occupancy_rate(dist, occupancy_n_at(cfg, shift, t));
    if (tok == "entropy") {
        if (!state) throw config_error("metric 'entropy' is not available for classical walks");
        return entanglement_entropy(*state);
    }
    if (tok.rfind("moment:", 0) == 0)
        return moment(dist, std::stoi(tok.substr(7)));
    if (tok.rfind("genocc:", 0) == 0) {
        OccupancyParams p{parse_double_strict(tok.substr(7)),
                          occupancy_n_at(cfg, shift, t)};
        return general_occupancy_rate(dist, p);
    }
    throw config_error("metric '" + tok + "' is not a scalar series metric");
}

inline std::string metric_filename(const std::string& tok) {
    std::string name = tok;
    for (char& c : name)
        if (c == ':') c = '_';
    return "metric_" + name + ".csv";
}

inline nlohmann::ordered_json config_echo_json(const ExperimentConfig& cfg) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.echo) j[k] = v;
    return j;
}

inline nlohmann::ordered_json write_run(const std::filesystem::path& outdir,
                                        const std::string& command,
                                        const ExperimentConfig& cfg,
                                        const std::vector<RunOutput>& outputs,
                                        const nlohmann::ordered_json& results,
                                        std::chrono::steady_clock::time_point t0) {
    std::filesystem::create_directories(outdir);
    nlohmann::ordered_json manifest;
    manifest["command"] = command;
    manifest["config"] = config_echo_json(cfg);
    manifest["outputs"] = nlohmann::ordered_json::array();
    for (const auto& out : outputs) {
        write_file(outdir / out.file, out.content);
        manifest["outputs"].push_back({{"file", out.file},
                                       {"bytes", out.content.size()},
                                       {"fnv1a64", fnv1a64_hex(out.content)}});
    }
    if (!results.is_null()) manifest["results"] = results;
    const auto dt = std::chrono::steady_clock::now() - t0;
    manifest["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::microseconds>(dt).count() / 1000.0;
    write_file(outdir / "manifest.json", manifest.dump(2) + "\n");
    return manifest;
}

} // namespace detail

inline nlohmann::ordered_json run_simulate(const ExperimentConfig& cfg,
                                           const std::filesystem::path& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    WalkSpec spec = detail::build_walk_spec(cfg);
    std::vector<RunOutput> outputs;
    for (const WalkState& s : evolve(spec, cfg.record_every))
        outputs.push_back({"dist_t" + std::to_string(s.t) + ".csv",
                           distribution_csv(distribution(s))});
    return detail::write_run(outdir, "simulate", cfg, outputs, nullptr, t0);
}

inline nlohmann::ordered_json run_metrics(const ExperimentConfig& cfg,
                                          const std::filesystem::path& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    WalkSpec spec = detail::build_walk_spec(cfg);
    std::vector<std::string> tokens = cfg.metrics;
    if (tokens.empty()) tokens = {"occrate"};
    for (const auto& tok : tokens)
        if (tok == "bands" || tok == "vdensity")
            throw config_error("metric '" + tok + "' requires the spectral subcommand");

    std::vector<MetricSeries> series;
    for (const auto& tok : tokens)
        if (tok != "distribution") series.push_back({{}, {}, tok});
    std::vector<RunOutput> outputs;

    WalkState s = init_state(spec);
    auto record = [&](const WalkState& st) {
        const ProbabilityDistribution dist = distribution(st);
        size_t si = 0;
        for (const auto& tok : tokens) {
            if (tok == "distribution") {
                outputs.push_back({"dist_t" + std::to_string(st.t) + ".csv",
                                   distribution_csv(dist)});
                continue;
            }
            series[si].times.push_back(st.t);
            series[si].values.push_back(
                detail::eval_scalar_metric(tok, dist, &st, cfg, spec.shift, st.t));
            ++si;
        }
    };
    record(s);
    for (int t = 1; t <= spec.steps; ++t) {
        s = step(s, spec.coin, spec.shift);
        if (t % cfg.record_every == 0 || t == spec.steps) record(s);
    }
    for (const auto& ms : series)
        outputs.push_back({detail::metric_filename(ms.label), metric_series_csv(ms)});
    return detail::write_run(outdir, "metrics", cfg, outputs, nullptr, t0);
}

inline nlohmann::ordered_json run_spectral(const ExperimentConfig& cfg,
                                           const std::filesystem::path& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    CoinOperator coin = parse_coin(cfg.coin);
    Eigen::VectorXcd psi0 = detail::initial_vector(cfg, coin.dim);
    const KGrid grid = KGrid::make(cfg.kgrid_m);
    const SpectralDecomposition sd = band_structure(coin, cfg.walk, grid, psi0);
    const VelocityDensity vd = velocity_density(sd, cfg.vbins);

    bool want_bands = cfg.metrics.empty(), want_vd = cfg.metrics.empty();
    for (const auto& tok : cfg.metrics) {
        if (tok == "bands") want_bands = true;
        else if (tok == "vdensity") want_vd = true;
        else throw config_error("spectral supports metrics 'bands' and 'vdensity'; got '" + tok + "'");
    }
    std::vector<RunOutput> outputs;
    if (want_bands) outputs.push_back({"bands.csv", bands_csv(sd)});
    if (want_vd) outputs.push_back({"vdensity.csv", velocity_density_csv(vd)});

    const LocalizationResult loc = detect_localization(sd);
    nlohmann::ordered_json results;
    results["localized"] = loc.localized;
    results["flat_bands"] = loc.flat_bands;
    for (int n = 1; n <= 4; ++n)
        results["c" + std::to_string(n)] = asymptotic_moment_coefficient(sd, n);
    results["atom_at_zero"] = vd.atom_at_zero;
    results["asymptotic_occupancy_rate"] = asymptotic_occupancy_rate(vd);
    results["min_band_overlap"] = sd.min_overlap;
    return detail::write_run(outdir, "spectral", cfg, outputs, results, t0);
}

inline nlohmann::ordered_json run_classical(const ExperimentConfig& cfg,
                                            const std::filesystem::path& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    validate(cfg.law);
    std::vector<std::string> tokens = cfg.metrics;
    if (tokens.empty()) tokens = {"occrate"};
    for (const auto& tok : tokens)
        if (tok == "bands" || tok == "vdensity" || tok == "entropy")
            throw config_error("metric '" + tok + "' is not available for classical walks");

    std::vector<MetricSeries> series;
    for (const auto& tok : tokens)
        if (tok != "distribution") series.push_back({{}, {}, "classical " + tok});
    std::vector<RunOutput> outputs;

    // Incremental DP over the full window [-steps, steps].
    const int T = cfg.steps;
    std::vector<double> p(2 * T + 1, 0.0), q(2 * T + 1, 0.0);
    p[T] = 1.0;
    auto record = [&](int t) {
        ProbabilityDistribution dist;
        dist.x0 = -t;
        dist.probs.resize(2 * t + 1);
        for (int i = 0; i <= 2 * t; ++i) dist.probs[i] = p[T - t + i];
        size_t si = 0;
        for (const auto& tok : tokens) {
            if (tok == "distribution") {
                outputs.push_back({"classical_dist_t" + std::to_string(t) + ".csv",
                                   distribution_csv(dist)});
                continue;
            }
            series[si].times.push_back(t);
            series[si].values.push_back(
                detail::eval_scalar_metric(tok, dist, nullptr, cfg, cfg.walk, t));
            ++si;
        }
    };
    record(0);
    for (int t = 1; t <= T; ++t) {
        std::fill(q.begin(), q.end(), 0.0);
        for (int i = T - t + 1; i <= T + t - 1; ++i) {
            if (p[i] == 0.0) continue;
            q[i + 1] += cfg.law.p_right * p[i];
            q[i] += cfg.law.p_stay * p[i];
            q[i - 1] += cfg.law.p_left * p[i];
        }
        std::swap(p, q);
        if (t % cfg.record_every == 0 || t == T) record(t);
    }
    for (const auto& ms : series)
        outputs.push_back({detail::metric_filename(ms.label.substr(10)), metric_series_csv(ms)});

    nlohmann::ordered_json results;
    if (T >= 1) {
        results["x_star"] = x_star(T);
        results["occ_rate_asymptotic"] = classical_occ_rate_asymptotic(T);
    }
    return detail::write_run(outdir, "classical", cfg, outputs, results, t0);
}

inline nlohmann::ordered_json run_sweep(const ExperimentConfig& cfg,
                                        const std::filesystem::path& outdir) {
    const auto t0 = std::chrono::steady_clock::now();
    if (cfg.sweep_param.empty())
        throw config_error("sweep requires 'sweep_param' (rho, delta, or steps)");
    if (cfg.sweep_values.empty()) throw config_error("sweep requires a non-empty 'sweep_values'");
    if (cfg.sweep_param == "rho" && cfg.walk != ShiftKind::lazy)
        throw config_error("rho sweep requires walk = lazy");

    // One sweep point: build the walk, evolve to its final time, evaluate.
    auto eval_point = [&](double value) -> double {
        ExperimentConfig point = cfg;
        if (cfg.sweep_param == "rho") {
            point.coin = "g:" + fmt_g17(value);
        } else if (cfg.sweep_param == "steps") {
            const int t = static_cast<int>(std::llround(value));
            if (t < 0 || std::abs(value - t) > 1e-9)
                throw config_error("steps sweep values must be nonnegative integers");
            point.steps = t;
        }
        WalkSpec spec = detail::build_walk_spec(point);
        WalkState s = init_state(spec);
        for (int t = 1; t <= spec.steps; ++t) s = step(s, spec.coin, spec.shift);
        const ProbabilityDistribution dist = distribution(s);
        if (cfg.sweep_param == "delta") {
            OccupancyParams p{value, detail::occupancy_n_at(cfg, spec.shift, spec.steps)};
            return general_occupancy_rate(dist, p);
        }
        return detail::eval_scalar_metric(cfg.sweep_metric, dist, &s, point, spec.shift,
                                          spec.steps);
    };

    const int npoints = static_cast<int>(cfg.sweep_values.size());
    std::vector<double> results(npoints);
    unsigned nworkers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
    nworkers = std::min<unsigned>(nworkers, static_cast<unsigned>(npoints));
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= npoints) return;
            try {
                results[i] = eval_point(cfg.sweep_values[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    if (nworkers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nworkers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    // Rows follow the input order regardless of completion order.
    std::string csv = "param,value,metric\n";
    for (int i = 0; i < npoints; ++i)
        csv += cfg.sweep_param + "," + fmt_g17(cfg.sweep_values[i]) + "," +
               fmt_g17(results[i]) + "\n";
    std::vector<RunOutput> outputs{{"sweep.csv", csv}};
    return detail::write_run(outdir, "sweep", cfg, outputs, nullptr, t0);
}

} // namespace qwalk
