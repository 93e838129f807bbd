// Command-line front end: scenario validation, SNR / back-off sweeps with
// analytic and Monte Carlo engines, diversity-slope reports, and single-point
// simulation. Results land in plot-ready CSV plus a JSON metadata sidecar.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "noma/asymptotics.hpp"
#include "noma/config.hpp"
#include "noma/errors.hpp"
#include "noma/montecarlo.hpp"
#include "noma/outage.hpp"
#include "noma/sweep.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

json config_json(const noma::ValidatedConfig& cfg) {
    return {
        {"M", cfg.num_users}, {"a", cfg.a},           {"rates", cfg.rates},
        {"phi", cfg.phi},     {"p", cfg.noise.p},     {"gamma", cfg.noise.gamma},
        {"rho_w_db", cfg.rho_w_db}, {"rho_w", cfg.rho_w}, {"rho_i", cfg.rho_i},
    };
}

void write_sidecar(const std::string& out_path, const std::string& command,
                   const noma::ValidatedConfig& cfg, const noma::SweepSpec& spec) {
    json meta = {
        {"command", command},
        {"version", kVersion},
        {"config", config_json(cfg)},
        {"grid", spec.grid},
        {"trials", spec.trials},
        {"seed", spec.seed},
        {"tdma_rate_scaling",
         spec.tdma_scaling == noma::TdmaRateScaling::slots ? "slots" : "none"},
        {"workers", noma::worker_count()},
    };
    json engines = json::array();
    for (const auto engine : spec.engines) engines.push_back(noma::engine_name(engine));
    meta["engines"] = engines;

    std::ofstream out(out_path + ".meta.json");
    if (!out) throw std::runtime_error("cannot write '" + out_path + ".meta.json'");
    out << meta.dump(2) << '\n';
}

std::vector<noma::SweepEngine> parse_engines(const std::string& list) {
    std::vector<noma::SweepEngine> engines;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) engines.push_back(noma::engine_from_name(item));
    if (engines.empty()) throw std::invalid_argument("--engines: empty list");
    return engines;
}

std::pair<double, double> parse_window(const std::string& text) {
    double lo = 0.0, hi = 0.0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf%c", &lo, &hi, &extra) != 2)
        throw std::invalid_argument("--window must be LO:HI, got '" + text + "'");
    return {lo, hi};
}

noma::SystemConfig load_system_config(const std::string& path) {
    return noma::make_system_config(noma::load_config_file(path));
}

int cmd_validate(const std::string& config_path) {
    const noma::ValidatedConfig cfg = noma::validate(load_system_config(config_path));
    std::printf("M = %d\n", cfg.num_users);
    std::printf("rho_w = %.10g (%.6g dB), rho_I = %.10g\n", cfg.rho_w, cfg.rho_w_db, cfg.rho_i);
    std::printf("p = %g, gamma = %g\n", cfg.noise.p, cfg.noise.gamma);
    for (int user = 1; user <= cfg.num_users; ++user) {
        const auto idx = static_cast<std::size_t>(user - 1);
        std::printf("user %d: a = %.10g, R = %.6g, phi = %.10g, closed_form_valid = %s\n", user,
                    cfg.a[idx], cfg.rates[idx], cfg.phi[idx],
                    noma::closed_form_valid(cfg, user) ? "true" : "false");
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, noma::SweepSpec spec, const std::string& out_path,
              bool backoff) {
    const noma::ConfigFile file = noma::load_config_file(config_path);
    noma::SystemConfig base;
    if (backoff) {
        // Back-off sweeps only need a1 (default 1) and the operating SNR
        // (default 15 dB); beta comes from the grid.
        noma::ConfigFile patched = file;
        if (patched.a) throw noma::ConfigError({"sweep-backoff: use a1 (not an explicit power list)"});
        if (!patched.a1) patched.a1 = 1.0;
        if (!patched.rho_w_db) patched.rho_w_db = 15.0;
        base = noma::make_system_config(patched);
    } else {
        base = noma::make_system_config(file);
    }

    const auto rows = backoff ? noma::run_backoff_sweep(base, spec) : noma::run_snr_sweep(base, spec);
    noma::write_csv(out_path, rows);

    noma::SystemConfig echo = base;
    if (backoff) echo.powers = noma::BackoffPowers{std::get<noma::BackoffPowers>(base.powers).a1, 0.0};
    write_sidecar(out_path, backoff ? "sweep-backoff" : "sweep-snr", noma::validate(echo), spec);
    std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
    return 0;
}

int cmd_diversity(const std::string& config_path, const std::string& window_text,
                  const std::string& grid_text, const std::string& out_path) {
    const auto [lo, hi] = parse_window(window_text);
    noma::SweepSpec spec;
    spec.grid = noma::parse_grid(grid_text);
    spec.engines = {noma::SweepEngine::analytic};
    const noma::SystemConfig base = load_system_config(config_path);
    const auto rows = noma::run_snr_sweep(base, spec);

    const int users = noma::validate(base).num_users;
    std::string report;
    for (int user = 1; user <= users; ++user) {
        const auto curve = noma::extract_curve(rows, user, noma::SweepEngine::analytic);
        const double slope = noma::diversity_slope(curve, lo, hi);
        std::printf("user %d: slope = %.4f over [%g, %g] dB (asymptotic order %d)\n", user, slope,
                    lo, hi, noma::asymptotic_diversity(user));
        report += std::to_string(user) + "," + std::to_string(slope) + "," +
                  std::to_string(noma::asymptotic_diversity(user)) + "\n";
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        out << "user,slope_fit,asymptotic_order\n" << report;
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, std::uint64_t trials, std::uint64_t seed,
                 const std::string& scheme, noma::TdmaRateScaling scaling,
                 const std::string& out_path) {
    const noma::ValidatedConfig cfg = noma::validate(load_system_config(config_path));
    const bool tdma = scheme == "tdma";
    const noma::OutageEstimate est = tdma ? noma::estimate_tdma_outage(cfg, trials, seed, scaling)
                                          : noma::estimate_outage(cfg, trials, seed);
    std::vector<noma::SweepRow> rows;
    for (int user = 1; user <= cfg.num_users; ++user) {
        const auto& e = est[static_cast<std::size_t>(user - 1)];
        std::printf("user %d: op_hat = %.6g  [%.6g, %.6g]  (%llu/%llu)\n", user, e.op_hat, e.ci_low,
                    e.ci_high, static_cast<unsigned long long>(e.outage_count),
                    static_cast<unsigned long long>(e.trials));
        rows.push_back({cfg.rho_w_db, user,
                        tdma ? noma::SweepEngine::tdma : noma::SweepEngine::montecarlo, e.op_hat,
                        e.ci_low, e.ci_high, true});
    }
    if (!out_path.empty()) {
        noma::write_csv(out_path, rows);
        noma::SweepSpec spec;
        spec.grid = {cfg.rho_w_db};
        spec.engines = {tdma ? noma::SweepEngine::tdma : noma::SweepEngine::montecarlo};
        spec.trials = trials;
        spec.seed = seed;
        spec.tdma_scaling = scaling;
        write_sidecar(out_path, "simulate", cfg, spec);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uplink NOMA outage analysis under Bernoulli-Gaussian impulsive noise"};
    app.require_subcommand(1);

    std::string config_path, out_path = "sweep.csv", engines = "analytic", grid, window = "35:50";
    std::string scheme = "noma", scaling_text = "slots";
    std::uint64_t trials = 1'000'000, seed = 1;

    auto* validate_cmd = app.add_subcommand("validate", "check a config and print derived quantities");
    validate_cmd->add_option("--config", config_path, "scenario file")->required();

    auto* snr = app.add_subcommand("sweep-snr", "outage versus average background SNR");
    snr->add_option("--config", config_path)->required();
    snr->add_option("--grid", grid, "START:STOP:STEP in dB (default 0:45:1)");
    snr->add_option("--engines", engines, "comma list of analytic,montecarlo,tdma");
    snr->add_option("--trials", trials);
    snr->add_option("--seed", seed);
    snr->add_option("--out", out_path);
    snr->add_option("--tdma-rate-scaling", scaling_text)->check(CLI::IsMember({"slots", "none"}));

    auto* backoff = app.add_subcommand("sweep-backoff", "outage versus power back-off coefficient");
    backoff->add_option("--config", config_path)->required();
    backoff->add_option("--grid", grid, "START:STOP:STEP in dB (default 0:10:0.5)");
    backoff->add_option("--engines", engines);
    backoff->add_option("--trials", trials);
    backoff->add_option("--seed", seed);
    backoff->add_option("--out", out_path);
    backoff->add_option("--tdma-rate-scaling", scaling_text)->check(CLI::IsMember({"slots", "none"}));

    auto* diversity = app.add_subcommand("diversity", "least-squares diversity slopes per user");
    diversity->add_option("--config", config_path)->required();
    diversity->add_option("--window", window, "LO:HI fit window in dB");
    diversity->add_option("--grid", grid, "curve grid, default 0:60:1");
    diversity->add_option("--out", out_path, "optional slope CSV");

    auto* simulate = app.add_subcommand("simulate", "single-point Monte Carlo estimate");
    simulate->add_option("--config", config_path)->required();
    simulate->add_option("--trials", trials);
    simulate->add_option("--seed", seed);
    simulate->add_option("--scheme", scheme)->check(CLI::IsMember({"noma", "tdma"}));
    simulate->add_option("--tdma-rate-scaling", scaling_text)->check(CLI::IsMember({"slots", "none"}));
    simulate->add_option("--out", out_path, "optional CSV output");

    CLI11_PARSE(app, argc, argv);

    const noma::TdmaRateScaling scaling =
        scaling_text == "none" ? noma::TdmaRateScaling::none : noma::TdmaRateScaling::slots;

    try {
        if (validate_cmd->parsed()) return cmd_validate(config_path);
        if (snr->parsed() || backoff->parsed()) {
            const bool is_backoff = backoff->parsed();
            noma::SweepSpec spec;
            spec.kind = is_backoff ? noma::SweepSpec::Kind::backoff : noma::SweepSpec::Kind::snr;
            spec.grid = noma::parse_grid(grid.empty() ? (is_backoff ? "0:10:0.5" : "0:45:1") : grid);
            spec.engines = parse_engines(engines);
            spec.trials = trials;
            spec.seed = seed;
            spec.tdma_scaling = scaling;
            return cmd_sweep(config_path, spec, out_path, is_backoff);
        }
        if (diversity->parsed())
            return cmd_diversity(config_path, window, grid.empty() ? "0:60:1" : grid,
                                 diversity->count("--out") ? out_path : "");
        if (simulate->parsed())
            return cmd_simulate(config_path, trials, seed, scheme, scaling,
                                simulate->count("--out") ? out_path : "");
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
