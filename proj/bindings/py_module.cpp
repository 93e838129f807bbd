// Python bindings for the main operations: scenario validation, analytic
// outage, Monte Carlo estimation, sweeps and diversity utilities.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "noma/asymptotics.hpp"
#include "noma/channel.hpp"
#include "noma/config.hpp"
#include "noma/errors.hpp"
#include "noma/montecarlo.hpp"
#include "noma/outage.hpp"
#include "noma/rng.hpp"
#include "noma/sweep.hpp"

namespace py = pybind11;
using namespace noma;

namespace {

ValidatedConfig config_from_args(int num_users, std::optional<std::vector<double>> a,
                                 std::optional<double> a1, double beta_db,
                                 std::vector<double> rates, double p, double gamma,
                                 double rho_w_db) {
    SystemConfig cfg;
    cfg.num_users = num_users;
    if (a && a1) throw std::invalid_argument("pass either a or a1, not both");
    if (a)
        cfg.powers = std::move(*a);
    else
        cfg.powers = BackoffPowers{a1.value_or(1.0), beta_db};
    cfg.target_rates = std::move(rates);
    cfg.noise.p = p;
    cfg.noise.gamma = gamma;
    cfg.rho_w_db = rho_w_db;
    cfg.noise.sigma_w2 = std::pow(10.0, -rho_w_db / 10.0);
    return validate(cfg);
}

NoiseState state_from_name(const std::string& name) {
    if (name == "background" || name == "w") return NoiseState::background;
    if (name == "impulsive" || name == "I") return NoiseState::impulsive;
    throw std::invalid_argument("noise state must be 'background' or 'impulsive'");
}

TdmaRateScaling scaling_from_name(const std::string& name) {
    if (name == "slots") return TdmaRateScaling::slots;
    if (name == "none") return TdmaRateScaling::none;
    throw std::invalid_argument("rate scaling must be 'slots' or 'none'");
}

std::vector<SweepEngine> engines_from_names(const std::vector<std::string>& names) {
    std::vector<SweepEngine> engines;
    engines.reserve(names.size());
    for (const auto& name : names) engines.push_back(engine_from_name(name));
    return engines;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Uplink NOMA outage analysis under Bernoulli-Gaussian impulsive noise";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ConditionViolated>(m, "ConditionViolated", PyExc_ValueError);
    py::register_exception<WrongEngine>(m, "WrongEngine", PyExc_ValueError);
    py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_RuntimeError);

    py::class_<ValidatedConfig>(m, "Config")
        .def_readonly("num_users", &ValidatedConfig::num_users)
        .def_readonly("a", &ValidatedConfig::a)
        .def_readonly("rates", &ValidatedConfig::rates)
        .def_readonly("phi", &ValidatedConfig::phi)
        .def_readonly("rho_w_db", &ValidatedConfig::rho_w_db)
        .def_readonly("rho_w", &ValidatedConfig::rho_w)
        .def_readonly("rho_i", &ValidatedConfig::rho_i)
        .def_property_readonly("p", [](const ValidatedConfig& c) { return c.noise.p; })
        .def_property_readonly("gamma", [](const ValidatedConfig& c) { return c.noise.gamma; })
        .def("closed_form_valid",
             [](const ValidatedConfig& c, int user) { return closed_form_valid(c, user); },
             py::arg("user"))
        .def("__repr__", [](const ValidatedConfig& c) {
            return "Config(M=" + std::to_string(c.num_users) +
                   ", rho_w_db=" + std::to_string(c.rho_w_db) + ", p=" + std::to_string(c.noise.p) +
                   ", gamma=" + std::to_string(c.noise.gamma) + ")";
        });

    py::class_<UserOutageEstimate>(m, "UserOutageEstimate")
        .def_readonly("op_hat", &UserOutageEstimate::op_hat)
        .def_readonly("trials", &UserOutageEstimate::trials)
        .def_readonly("ci_low", &UserOutageEstimate::ci_low)
        .def_readonly("ci_high", &UserOutageEstimate::ci_high)
        .def_readonly("outage_count", &UserOutageEstimate::outage_count)
        .def("__repr__", [](const UserOutageEstimate& e) {
            return "UserOutageEstimate(op_hat=" + std::to_string(e.op_hat) + ")";
        });

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("sweep_db", &SweepRow::sweep_db)
        .def_readonly("user", &SweepRow::user)
        .def_property_readonly("engine",
                               [](const SweepRow& r) { return std::string(engine_name(r.engine)); })
        .def_readonly("op", &SweepRow::op)
        .def_readonly("ci_low", &SweepRow::ci_low)
        .def_readonly("ci_high", &SweepRow::ci_high)
        .def_readonly("has_ci", &SweepRow::has_ci);

    m.def("rate_threshold", &rate_threshold, py::arg("rate"), "2^R - 1");
    m.def("powers_from_backoff", &powers_from_backoff, py::arg("a1"), py::arg("beta_db"),
          py::arg("num_users"));
    m.def(
        "noise_precisions",
        [](double p, double gamma, double rho_w_db) {
            return noise_precisions({.p = p, .gamma = gamma, .sigma_w2 = 1.0}, rho_w_db);
        },
        py::arg("p"), py::arg("gamma"), py::arg("rho_w_db"));

    m.def("make_config", &config_from_args, py::arg("num_users"), py::arg("a") = std::nullopt,
          py::arg("a1") = std::nullopt, py::arg("beta_db") = 0.0, py::arg("rates"),
          py::arg("p") = 0.0, py::arg("gamma") = 0.0, py::arg("rho_w_db") = 10.0);
    m.def(
        "load_config",
        [](const std::string& path) { return validate(make_system_config(load_config_file(path))); },
        py::arg("path"));

    m.def(
        "outage", [](const ValidatedConfig& cfg, int user) { return outage(cfg, user); },
        py::arg("config"), py::arg("user"));
    m.def(
        "success_probability",
        [](int user, const ValidatedConfig& cfg, const std::string& state) {
            return success_probability(user, cfg, state_from_name(state));
        },
        py::arg("user"), py::arg("config"), py::arg("state") = "background");
    m.def(
        "tdma_outage",
        [](const ValidatedConfig& cfg, int user, const std::string& scaling) {
            return tdma_outage(cfg, user, scaling_from_name(scaling));
        },
        py::arg("config"), py::arg("user"), py::arg("rate_scaling") = "slots");
    m.def(
        "mixture_sinr",
        [](int user, const std::vector<double>& gains, const ValidatedConfig& cfg) {
            return mixture_sinr(user, OrderedGains{gains}, cfg);
        },
        py::arg("user"), py::arg("gains"), py::arg("config"));
    m.def(
        "high_snr_outage_approx",
        [](int user, const ValidatedConfig& cfg) { return high_snr_outage_approx(user, cfg); },
        py::arg("user"), py::arg("config"));
    m.def("asymptotic_diversity", [](int user) { return asymptotic_diversity(user); },
          py::arg("user"));

    m.def(
        "diversity_slope",
        [](const std::vector<std::pair<double, double>>& points, double lo_db, double hi_db) {
            OutageCurve curve;
            curve.reserve(points.size());
            for (const auto& [db, op] : points) curve.push_back({db, op});
            return diversity_slope(curve, lo_db, hi_db);
        },
        py::arg("points"), py::arg("window_lo_db"), py::arg("window_hi_db"),
        "least-squares slope of -log10(OP) vs log10(rho_w) inside the window");

    m.def(
        "estimate_outage",
        [](const ValidatedConfig& cfg, std::uint64_t trials, std::uint64_t seed) {
            py::gil_scoped_release release;
            return estimate_outage(cfg, trials, seed);
        },
        py::arg("config"), py::arg("trials"), py::arg("seed") = 1);
    m.def(
        "estimate_tdma_outage",
        [](const ValidatedConfig& cfg, std::uint64_t trials, std::uint64_t seed,
           const std::string& scaling) {
            py::gil_scoped_release release;
            return estimate_tdma_outage(cfg, trials, seed, scaling_from_name(scaling));
        },
        py::arg("config"), py::arg("trials"), py::arg("seed") = 1,
        py::arg("rate_scaling") = "slots");

    m.def(
        "sample_ordered_gains",
        [](int num_users, std::uint64_t seed, std::uint64_t stream_id, const std::string& method) {
            RandomStream stream(seed, stream_id);
            if (method == "sort") return sample_ordered_gains_sort(num_users, stream).g;
            if (method == "decomposition")
                return sample_ordered_gains_decomposition(num_users, stream).g;
            throw std::invalid_argument("method must be 'sort' or 'decomposition'");
        },
        py::arg("num_users"), py::arg("seed") = 1, py::arg("stream_id") = 0,
        py::arg("method") = "sort");
    m.def(
        "noise_pdf",
        [](std::complex<double> n, double p, double gamma, double sigma_w2) {
            return noise_pdf(n, {.p = p, .gamma = gamma, .sigma_w2 = sigma_w2});
        },
        py::arg("n"), py::arg("p"), py::arg("gamma"), py::arg("sigma_w2") = 1.0);

    m.def(
        "run_snr_sweep",
        [](const ValidatedConfig& cfg, const std::vector<double>& grid,
           const std::vector<std::string>& engines, std::uint64_t trials, std::uint64_t seed,
           const std::string& scaling) {
            SystemConfig base;
            base.num_users = cfg.num_users;
            base.powers = cfg.a;
            base.target_rates = cfg.rates;
            base.noise = cfg.noise;
            base.rho_w_db = cfg.rho_w_db;
            SweepSpec spec;
            spec.kind = SweepSpec::Kind::snr;
            spec.grid = grid;
            spec.engines = engines_from_names(engines);
            spec.trials = trials;
            spec.seed = seed;
            spec.tdma_scaling = scaling_from_name(scaling);
            py::gil_scoped_release release;
            return run_snr_sweep(base, spec);
        },
        py::arg("config"), py::arg("grid"), py::arg("engines") = std::vector<std::string>{"analytic"},
        py::arg("trials") = 1000000, py::arg("seed") = 1, py::arg("rate_scaling") = "slots");

    m.def(
        "run_backoff_sweep",
        [](double a1, const ValidatedConfig& cfg, const std::vector<double>& grid,
           const std::vector<std::string>& engines, std::uint64_t trials, std::uint64_t seed,
           const std::string& scaling) {
            SystemConfig base;
            base.num_users = cfg.num_users;
            base.powers = BackoffPowers{a1, 0.0};
            base.target_rates = cfg.rates;
            base.noise = cfg.noise;
            base.rho_w_db = cfg.rho_w_db;
            SweepSpec spec;
            spec.kind = SweepSpec::Kind::backoff;
            spec.grid = grid;
            spec.engines = engines_from_names(engines);
            spec.trials = trials;
            spec.seed = seed;
            spec.tdma_scaling = scaling_from_name(scaling);
            py::gil_scoped_release release;
            return run_backoff_sweep(base, spec);
        },
        py::arg("a1"), py::arg("config"), py::arg("grid"),
        py::arg("engines") = std::vector<std::string>{"analytic"}, py::arg("trials") = 1000000,
        py::arg("seed") = 1, py::arg("rate_scaling") = "slots");

    m.def(
        "write_csv",
        [](const std::string& path, const std::vector<SweepRow>& rows) { write_csv(path, rows); },
        py::arg("path"), py::arg("rows"));
    m.def("read_csv", &read_csv, py::arg("path"));

    m.attr("__version__") = "0.1.0";
}
