#include "noma/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "noma/errors.hpp"
#include "noma/montecarlo.hpp"

namespace noma {

const char* engine_name(SweepEngine engine) {
    switch (engine) {
        case SweepEngine::analytic: return "analytic";
        case SweepEngine::montecarlo: return "montecarlo";
        case SweepEngine::tdma: return "tdma";
    }
    return "?";
}

SweepEngine engine_from_name(const std::string& name) {
    if (name == "analytic") return SweepEngine::analytic;
    if (name == "montecarlo") return SweepEngine::montecarlo;
    if (name == "tdma") return SweepEngine::tdma;
    throw std::invalid_argument("unknown engine '" + name + "' (expected analytic, montecarlo or tdma)");
}

namespace {

void check_spec(const SweepSpec& spec) {
    if (spec.grid.empty()) throw std::invalid_argument("sweep: grid must be non-empty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i)
        if (!(spec.grid[i] > spec.grid[i - 1]))
            throw std::invalid_argument("sweep: grid must be strictly increasing");
    if (spec.engines.empty()) throw std::invalid_argument("sweep: select at least one engine");
    const bool wants_mc =
        std::find(spec.engines.begin(), spec.engines.end(), SweepEngine::montecarlo) !=
        spec.engines.end();
    if (wants_mc && spec.trials == 0)
        throw std::invalid_argument("sweep: montecarlo engine needs trials >= 1");
}

// Every grid point gets its own block of chunk stream ids so that one seed
// never reuses randomness across points.
std::uint64_t point_stream_base(std::size_t point_index) {
    return static_cast<std::uint64_t>(point_index) << 32;
}

void append_point_rows(std::vector<SweepRow>& rows, const SweepSpec& spec,
                       const ValidatedConfig& cfg, double sweep_db, std::size_t point_index) {
    for (const SweepEngine engine : spec.engines) {
        try {
            switch (engine) {
                case SweepEngine::analytic:
                    for (int user = 1; user <= cfg.num_users; ++user)
                        rows.push_back({sweep_db, user, engine, outage(cfg, user), 0.0, 0.0, false});
                    break;
                case SweepEngine::montecarlo: {
                    const OutageEstimate est =
                        estimate_outage(cfg, spec.trials, spec.seed, point_stream_base(point_index));
                    for (int user = 1; user <= cfg.num_users; ++user) {
                        const auto& e = est[static_cast<std::size_t>(user - 1)];
                        rows.push_back({sweep_db, user, engine, e.op_hat, e.ci_low, e.ci_high, true});
                    }
                    break;
                }
                case SweepEngine::tdma:
                    for (int user = 1; user <= cfg.num_users; ++user)
                        rows.push_back({sweep_db, user, engine,
                                        tdma_outage(cfg, user, spec.tdma_scaling), 0.0, 0.0, false});
                    break;
            }
        } catch (const std::exception& err) {
            std::ostringstream msg;
            msg << "engine '" << engine_name(engine) << "' failed at grid point " << sweep_db
                << " dB: " << err.what();
            throw std::runtime_error(msg.str());
        }
    }
}

}  // namespace

std::vector<SweepRow> run_snr_sweep(const SystemConfig& base, const SweepSpec& spec) {
    check_spec(spec);
    std::vector<SweepRow> rows;
    for (std::size_t idx = 0; idx < spec.grid.size(); ++idx) {
        SystemConfig point = base;
        point.rho_w_db = spec.grid[idx];
        point.noise.sigma_w2 = std::pow(10.0, -point.rho_w_db / 10.0);
        append_point_rows(rows, spec, validate(point), spec.grid[idx], idx);
    }
    return rows;
}

std::vector<SweepRow> run_backoff_sweep(const SystemConfig& base, const SweepSpec& spec) {
    check_spec(spec);
    const auto* backoff = std::get_if<BackoffPowers>(&base.powers);
    if (backoff == nullptr)
        throw std::invalid_argument(
            "sweep-backoff: config must use the a1/beta_db power form (beta comes from the grid)");
    std::vector<SweepRow> rows;
    for (std::size_t idx = 0; idx < spec.grid.size(); ++idx) {
        SystemConfig point = base;
        point.powers = BackoffPowers{backoff->a1, spec.grid[idx]};
        append_point_rows(rows, spec, validate(point), spec.grid[idx], idx);
    }
    return rows;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_csv(const std::string& path, std::span<const SweepRow> rows) {
    std::ofstream out(path, std::ios::binary);  // binary: one byte layout on every platform
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "sweep_var,user,engine,op,ci_low,ci_high\n";
    for (const auto& row : rows) {
        out << format_double(row.sweep_db) << ',' << row.user << ',' << engine_name(row.engine)
            << ',' << format_double(row.op) << ',';
        if (row.has_ci) out << format_double(row.ci_low) << ',' << format_double(row.ci_high);
        else out << ',';
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

std::vector<SweepRow> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV '" + path + "'");
    if (line != "sweep_var,user,engine,op,ci_low,ci_high")
        throw std::runtime_error("unexpected CSV header in '" + path + "'");

    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        while (fields.size() < 6) fields.emplace_back();
        if (fields.size() != 6) throw std::runtime_error("malformed CSV row: " + line);
        SweepRow row;
        row.sweep_db = std::stod(fields[0]);
        row.user = std::stoi(fields[1]);
        row.engine = engine_from_name(fields[2]);
        row.op = std::stod(fields[3]);
        row.has_ci = !fields[4].empty() || !fields[5].empty();
        if (row.has_ci) {
            row.ci_low = std::stod(fields[4]);
            row.ci_high = std::stod(fields[5]);
        }
        rows.push_back(row);
    }
    return rows;
}

OutageCurve extract_curve(std::span<const SweepRow> rows, int user, SweepEngine engine) {
    OutageCurve curve;
    for (const auto& row : rows)
        if (row.user == user && row.engine == engine) curve.push_back({row.sweep_db, row.op});
    std::sort(curve.begin(), curve.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.rho_w_db < b.rho_w_db; });
    return curve;
}

std::optional<double> crossing_db(std::span<const CurvePoint> curve, double level) {
    if (!(level > 0.0)) throw std::invalid_argument("crossing_db: level must be positive");
    const double target = std::log10(level);
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        if (!(curve[i].op > 0.0) || !(curve[i + 1].op > 0.0)) continue;
        const double l1 = std::log10(curve[i].op);
        const double l2 = std::log10(curve[i + 1].op);
        if ((l1 - target) * (l2 - target) > 0.0 || l1 == l2) continue;
        const double t = (target - l1) / (l2 - l1);
        return curve[i].rho_w_db + t * (curve[i + 1].rho_w_db - curve[i].rho_w_db);
    }
    return std::nullopt;
}

std::vector<double> parse_grid(const std::string& text) {
    double start = 0.0, stop = 0.0, step = 0.0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra) != 3)
        throw std::invalid_argument("grid must be START:STOP:STEP, got '" + text + "'");
    if (!(step > 0.0) || stop < start)
        throw std::invalid_argument("grid requires STOP >= START and STEP > 0");
    std::vector<double> grid;
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9));
    grid.reserve(static_cast<std::size_t>(count) + 1);
    for (int k = 0; k <= count; ++k) grid.push_back(start + step * k);
    return grid;
}

}  // namespace noma
