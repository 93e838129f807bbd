#pragma once
// Sweep orchestration shared by the CLI and the Python bindings: grids over
// average SNR or the power back-off coefficient, per-engine outage columns,
// plot-ready CSV emission and parsing, and level-crossing readout.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noma/asymptotics.hpp"
#include "noma/config.hpp"
#include "noma/outage.hpp"

namespace noma {

enum class SweepEngine { analytic, montecarlo, tdma };

const char* engine_name(SweepEngine engine);
SweepEngine engine_from_name(const std::string& name);

struct SweepRow {
    double sweep_db = 0.0;
    int user = 0;
    SweepEngine engine = SweepEngine::analytic;
    double op = 0.0;
    double ci_low = 0.0;   // meaningful only when has_ci
    double ci_high = 0.0;
    bool has_ci = false;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepSpec {
    enum class Kind { snr, backoff };
    Kind kind = Kind::snr;
    std::vector<double> grid;  // dB values, strictly increasing, non-empty
    std::vector<SweepEngine> engines{SweepEngine::analytic};
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    TdmaRateScaling tdma_scaling = TdmaRateScaling::slots;
};

/// Grid over rho_w_db; base config supplies everything else.
std::vector<SweepRow> run_snr_sweep(const SystemConfig& base, const SweepSpec& spec);

/// Grid over the back-off coefficient beta; powers expand per grid point from
/// the base config's a1. The base must use the a1/beta_db power form.
std::vector<SweepRow> run_backoff_sweep(const SystemConfig& base, const SweepSpec& spec);

void write_csv(const std::string& path, std::span<const SweepRow> rows);
std::vector<SweepRow> read_csv(const std::string& path);

/// Analytic rows of one (user, engine) as an OutageCurve, ordered by dB.
OutageCurve extract_curve(std::span<const SweepRow> rows, int user, SweepEngine engine);

/// dB abscissa where the curve crosses the given OP level, by log-linear
/// interpolation between grid points; empty when the curve never crosses.
std::optional<double> crossing_db(std::span<const CurvePoint> curve, double level);

/// START:STOP:STEP (dB) to an inclusive, strictly increasing grid.
std::vector<double> parse_grid(const std::string& text);

}  // namespace noma
