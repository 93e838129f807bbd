#include "noma/config.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "noma/errors.hpp"

namespace noma {

double rate_threshold(double rate_bits) {
    if (rate_bits < 0.0 || !std::isfinite(rate_bits))
        throw std::invalid_argument("rate_threshold: target rate must be >= 0");
    return std::exp2(rate_bits) - 1.0;
}

std::vector<double> powers_from_backoff(double a1, double beta_db, int num_users) {
    if (!(a1 > 0.0)) throw std::invalid_argument("powers_from_backoff: a1 must be > 0");
    if (num_users < 1) throw std::invalid_argument("powers_from_backoff: need at least one user");
    std::vector<double> a(static_cast<std::size_t>(num_users));
    for (int i = 0; i < num_users; ++i)
        a[static_cast<std::size_t>(i)] = a1 * std::pow(10.0, beta_db * i / 10.0);
    a[0] = a1;  // exact, independent of pow rounding
    return a;
}

std::pair<double, double> noise_precisions(const NoiseParams& noise, double rho_w_db) {
    const double rho_w = std::pow(10.0, rho_w_db / 10.0);
    return {rho_w, rho_w / (noise.gamma + 1.0)};
}

ValidatedConfig validate(const SystemConfig& cfg) {
    std::vector<std::string> issues;
    if (cfg.num_users < 1) issues.push_back("M must be >= 1, got " + std::to_string(cfg.num_users));

    std::vector<double> a;
    if (const auto* explicit_a = std::get_if<std::vector<double>>(&cfg.powers)) {
        a = *explicit_a;
        if (cfg.num_users >= 1 && static_cast<int>(a.size()) != cfg.num_users)
            issues.push_back("powers: expected " + std::to_string(cfg.num_users) + " entries, got " +
                             std::to_string(a.size()));
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i] > 0.0) || !std::isfinite(a[i]))
                issues.push_back("powers: a_" + std::to_string(i + 1) + " must be > 0");
    } else {
        const auto& backoff = std::get<BackoffPowers>(cfg.powers);
        if (!(backoff.a1 > 0.0) || !std::isfinite(backoff.a1))
            issues.push_back("powers: a1 must be > 0");
        else if (cfg.num_users >= 1)
            a = powers_from_backoff(backoff.a1, backoff.beta_db, cfg.num_users);
    }

    if (cfg.num_users >= 1 && static_cast<int>(cfg.target_rates.size()) != cfg.num_users)
        issues.push_back("rates: expected " + std::to_string(cfg.num_users) + " entries, got " +
                         std::to_string(cfg.target_rates.size()));
    for (std::size_t i = 0; i < cfg.target_rates.size(); ++i)
        if (cfg.target_rates[i] < 0.0 || !std::isfinite(cfg.target_rates[i]))
            issues.push_back("rates: R_" + std::to_string(i + 1) + " must be >= 0");

    if (!(cfg.noise.p >= 0.0 && cfg.noise.p <= 1.0)) issues.push_back("p out of [0,1]");
    if (!(cfg.noise.gamma >= 0.0)) issues.push_back("gamma must be >= 0");
    if (!(cfg.noise.sigma_w2 > 0.0)) issues.push_back("sigma_w2 must be > 0");
    if (!std::isfinite(cfg.rho_w_db)) issues.push_back("rho_w_db must be finite");

    if (!issues.empty()) throw ConfigError(std::move(issues));

    ValidatedConfig out;
    out.num_users = cfg.num_users;
    out.a = std::move(a);
    out.rates = cfg.target_rates;
    out.phi.reserve(out.rates.size());
    for (double rate : out.rates) out.phi.push_back(rate_threshold(rate));
    out.noise = cfg.noise;
    out.rho_w_db = cfg.rho_w_db;
    std::tie(out.rho_w, out.rho_i) = noise_precisions(cfg.noise, cfg.rho_w_db);
    return out;
}

bool closed_form_valid(const ValidatedConfig& cfg, int user) {
    if (user < 1 || user > cfg.num_users)
        throw std::invalid_argument("closed_form_valid: user index out of range");
    double interference = 0.0;
    for (int q = 0; q < user - 1; ++q) interference += cfg.a[static_cast<std::size_t>(q)];
    return cfg.a[static_cast<std::size_t>(user - 1)] > cfg.phi[static_cast<std::size_t>(user - 1)] * interference;
}

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

double parse_double(const std::string& value, const std::string& key, std::vector<std::string>& issues) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        issues.push_back("key '" + key + "': cannot parse '" + value + "' as a number");
        return 0.0;
    }
}

std::vector<double> parse_list(const std::string& value, const std::string& key,
                               std::vector<std::string>& issues) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), key, issues));
    if (out.empty()) issues.push_back("key '" + key + "': empty list");
    return out;
}

}  // namespace

ConfigFile parse_config_text(std::string_view text) {
    ConfigFile file;
    std::vector<std::string> issues;
    std::istringstream lines{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            issues.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "M") {
            const double v = parse_double(value, key, issues);
            if (v != std::floor(v)) issues.push_back("key 'M': must be an integer");
            file.num_users = static_cast<int>(v);
        } else if (key == "a") {
            file.a = parse_list(value, key, issues);
        } else if (key == "a1") {
            file.a1 = parse_double(value, key, issues);
        } else if (key == "beta_db") {
            file.beta_db = parse_double(value, key, issues);
        } else if (key == "rates") {
            file.rates = parse_list(value, key, issues);
        } else if (key == "p") {
            file.p = parse_double(value, key, issues);
        } else if (key == "gamma") {
            file.gamma = parse_double(value, key, issues);
        } else if (key == "rho_w_db") {
            file.rho_w_db = parse_double(value, key, issues);
        } else {
            issues.push_back("unknown key '" + key + "'");
        }
    }
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return file;
}

ConfigFile load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

SystemConfig make_system_config(const ConfigFile& file) {
    std::vector<std::string> issues;
    if (!file.num_users) issues.push_back("missing key 'M'");
    if (!file.rates) issues.push_back("missing key 'rates'");
    if (!file.p) issues.push_back("missing key 'p'");
    if (!file.gamma) issues.push_back("missing key 'gamma'");
    if (!file.rho_w_db) issues.push_back("missing key 'rho_w_db'");
    if (file.a && (file.a1 || file.beta_db))
        issues.push_back("keys 'a' and 'a1'/'beta_db' are mutually exclusive");
    if (!file.a && !file.a1) issues.push_back("need either key 'a' or key 'a1'");
    if (!issues.empty()) throw ConfigError(std::move(issues));

    SystemConfig cfg;
    cfg.num_users = *file.num_users;
    if (file.a)
        cfg.powers = *file.a;
    else
        cfg.powers = BackoffPowers{*file.a1, file.beta_db.value_or(0.0)};
    cfg.target_rates = *file.rates;
    cfg.noise.p = *file.p;
    cfg.noise.gamma = *file.gamma;
    cfg.rho_w_db = *file.rho_w_db;
    cfg.noise.sigma_w2 = std::pow(10.0, -cfg.rho_w_db / 10.0);  // keep sampling consistent with the dB SNR
    return cfg;
}

}  // namespace noma
