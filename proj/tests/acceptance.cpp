// Acceptance suite. Each criterion prints one PASS/FAIL line (plus detail)
// and the process exit code reports the selected criterion's outcome.
//
// Criteria 1, 4 and 5 encode targets taken from the literature this toolkit
// reproduces. Where the exact model measurably disagrees with those targets
// (the product-form independence approximation at low SNR; two figure-derived
// thresholds) the checks below still assert the stated target and are
// expected to report FAIL with diagnostics rather than loosen the bound.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "noma/asymptotics.hpp"
#include "noma/channel.hpp"
#include "noma/config.hpp"
#include "noma/montecarlo.hpp"
#include "noma/outage.hpp"
#include "noma/rng.hpp"
#include "noma/sweep.hpp"

using namespace noma;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("CRITERION %d %s: %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++g_failures;
}

ValidatedConfig make_cfg(std::vector<double> a, double rate, double p, double gamma,
                         double rho_w_db) {
    SystemConfig cfg;
    cfg.num_users = static_cast<int>(a.size());
    cfg.target_rates.assign(a.size(), rate);
    cfg.powers = std::move(a);
    cfg.noise.p = p;
    cfg.noise.gamma = gamma;
    cfg.rho_w_db = rho_w_db;
    cfg.noise.sigma_w2 = std::pow(10.0, -rho_w_db / 10.0);
    return validate(cfg);
}

SystemConfig paper_system(double p, double gamma, double rho_w_db) {
    SystemConfig cfg;
    cfg.num_users = 3;
    cfg.powers = std::vector<double>{1.0, 1.0, 1.0};
    cfg.target_rates = {0.5, 0.5, 0.5};
    cfg.noise.p = p;
    cfg.noise.gamma = gamma;
    cfg.rho_w_db = rho_w_db;
    cfg.noise.sigma_w2 = std::pow(10.0, -rho_w_db / 10.0);
    return cfg;
}

// --- 1: analytic vs full-joint Monte Carlo over the parameter grid ---------
void criterion1() {
    const std::uint64_t trials = 1'000'000;
    int cells = 0, violations = 0;
    double worst_dev = 0.0;
    std::string worst_where = "-";
    std::uint64_t seed = 1000;
    for (double db : {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0}) {
        for (double p : {0.0, 0.01, 0.1}) {
            for (double gamma : {0.0, 100.0, 1000.0}) {
                const ValidatedConfig cfg = make_cfg({1, 1, 1}, 0.5, p, gamma, db);
                const OutageEstimate est = estimate_outage(cfg, trials, seed++);
                for (int user = 1; user <= 3; ++user) {
                    ++cells;
                    const double analytic = outage(cfg, user);
                    const double mc = est[static_cast<std::size_t>(user - 1)].op_hat;
                    const double se = std::sqrt(
                        std::max(analytic * (1.0 - analytic), 1e-12) / static_cast<double>(trials));
                    const double dev = std::fabs(analytic - mc) / se;
                    if (dev > worst_dev) {
                        worst_dev = dev;
                        std::ostringstream w;
                        w << "rho_w=" << db << "dB p=" << p << " gamma=" << gamma << " user=" << user
                          << " analytic=" << analytic << " mc=" << mc;
                        worst_where = w.str();
                    }
                    if (dev > 3.0) ++violations;
                }
            }
        }
    }
    std::ostringstream detail;
    detail << violations << "/" << cells << " cells beyond 3 standard errors; worst " << worst_dev
           << " SE at " << worst_where
           << (violations > 0 ? " [product-form independence approximation breaks down at low SNR; "
                                "deviations shrink with SNR and vanish for the top user]"
                              : "");
    report(1, violations == 0, detail.str());
}

// --- 2: closed forms vs the general engine --------------------------------
void criterion2() {
    RandomStream stream(51, 0);
    double worst_closed = 0.0, worst_backend = 0.0;
    int checked = 0;
    bool pass = true;
    GeneralOptions mc_options;
    mc_options.mc_samples = 300'000;

    while (checked < 50) {
        std::vector<double> a(3);
        for (double& v : a) v = 0.3 + 2.7 * stream.next_double();
        const double rate = 0.05 + 1.15 * stream.next_double();
        const double phi = rate_threshold(rate);
        if (a[1] <= phi * a[0] || a[2] <= phi * (a[0] + a[1])) continue;
        const double db = -5.0 + 35.0 * stream.next_double();
        const ValidatedConfig cfg = make_cfg(a, rate, 0.02, 120.0, db);
        ++checked;

        for (const NoiseState s : {NoiseState::background, NoiseState::impulsive}) {
            const double closed[3] = {success_user1_m3(cfg, s), success_user2_m3(cfg, s),
                                      success_user3_m3(cfg, s)};
            for (int user = 1; user <= 3; ++user) {
                const auto quad = success_general(user, cfg, s, GeneralBackend::quadrature);
                const double diff = std::fabs(quad.value - closed[user - 1]);
                worst_closed = std::max(worst_closed, diff);
                if (diff > 1e-6) pass = false;
            }
        }
        // backend agreement, spot-checked per configuration for users 2..3
        const int user = 2 + (checked % 2);
        mc_options.mc_stream = static_cast<std::uint64_t>(checked);
        const auto quad = success_general(user, cfg, NoiseState::background, GeneralBackend::quadrature);
        const auto mc = success_general(user, cfg, NoiseState::background,
                                        GeneralBackend::conditional_mc, mc_options);
        const double combined = std::max(std::sqrt(quad.error * quad.error + mc.error * mc.error), 1e-9);
        const double backend_dev = std::fabs(quad.value - mc.value) / combined;
        worst_backend = std::max(worst_backend, backend_dev);
        if (backend_dev > 3.0) pass = false;
    }
    std::ostringstream detail;
    detail << "50 random valid configs; worst |closed - quadrature| = " << worst_closed
           << " (limit 1e-6), worst backend deviation = " << worst_backend << " combined errors (limit 3)";
    report(2, pass, detail.str());
}

// --- 3: exact mixture structure --------------------------------------------
void criterion3() {
    RandomStream stream(2718, 0);
    double worst_affine = 0.0, worst_collapse = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<double> a(3);
        for (double& v : a) v = 0.3 + 2.7 * stream.next_double();
        const double rate = 0.05 + 1.15 * stream.next_double();
        const double db = -5.0 + 40.0 * stream.next_double();
        const double p = stream.next_double();
        const double gamma = 400.0 * stream.next_double();

        const ValidatedConfig mixed = make_cfg(a, rate, p, gamma, db);
        const ValidatedConfig at_p0 = make_cfg(a, rate, 0.0, gamma, db);
        const ValidatedConfig at_p1 = make_cfg(a, rate, 1.0, gamma, db);
        const ValidatedConfig g0_a = make_cfg(a, rate, p, 0.0, db);
        const ValidatedConfig g0_b = make_cfg(a, rate, 0.42 * p, 0.0, db);

        for (int user = 1; user <= 3; ++user) {
            const double blend = (1.0 - p) * outage(at_p0, user) + p * outage(at_p1, user);
            worst_affine = std::max(worst_affine, std::fabs(outage(mixed, user) - blend));
            worst_collapse = std::max(worst_collapse, std::fabs(outage(g0_a, user) - outage(g0_b, user)));
        }
    }
    std::ostringstream detail;
    detail << "40 random configs; worst affinity residual " << worst_affine
           << ", worst gamma=0 p-dependence " << worst_collapse << " (limits 1e-12)";
    report(3, worst_affine <= 1e-12 && worst_collapse <= 1e-12, detail.str());
}

// --- 4: Fig-1 style horizontal gaps at OP = 1e-2 ----------------------------
void criterion4() {
    SweepSpec spec;
    spec.grid = parse_grid("0:45:1");
    const auto clean_rows = run_snr_sweep(paper_system(0.0, 0.0, 0.0), spec);
    const auto impulsive_rows = run_snr_sweep(paper_system(0.01, 100.0, 0.0), spec);

    bool pass = true;
    std::ostringstream detail;
    for (int user = 1; user <= 3; ++user) {
        const auto clean = extract_curve(clean_rows, user, SweepEngine::analytic);
        const auto impulsive = extract_curve(impulsive_rows, user, SweepEngine::analytic);
        const auto c = crossing_db(clean, 1e-2);
        const auto i = crossing_db(impulsive, 1e-2);
        if (!c || !i) {
            pass = false;
            detail << "user " << user << ": no 1e-2 crossing inside the grid; ";
            continue;
        }
        const double gap = *i - *c;
        const bool ok = (user == 1) ? (gap >= 2.0 && gap <= 4.0) : (gap >= 10.0);
        if (!ok) pass = false;
        detail << "user " << user << " gap = " << gap << " dB (target "
               << (user == 1 ? "3 +- 1" : ">= 10") << (ok ? ", ok" : ", MISSED") << "); ";
    }
    if (!pass)
        detail << "[at the 1e-2 read-off level the exact curves give ~5.8/5.3 dB for users 2/3; "
                  "the >=10 dB separation only emerges near the 1e-4 level]";
    report(4, pass, detail.str());
}

// --- 5: Fig-2 style back-off behaviour -------------------------------------
void criterion5() {
    SystemConfig base = paper_system(0.01, 1000.0, 15.0);
    base.powers = BackoffPowers{1.0, 0.0};
    SweepSpec spec;
    spec.kind = SweepSpec::Kind::backoff;
    spec.grid = parse_grid("0:6:0.5");

    bool pass = true;
    std::ostringstream detail;
    const auto high_rows = run_backoff_sweep(base, spec);
    for (int user = 1; user <= 3; ++user) {
        const auto curve = extract_curve(high_rows, user, SweepEngine::analytic);
        double lo = 1.0, hi = 0.0;
        for (const auto& pt : curve) {
            lo = std::min(lo, pt.op);
            hi = std::max(hi, pt.op);
        }
        const double rel = (hi - lo) / lo;
        const bool ok = rel < 0.10;
        if (!ok) pass = false;
        detail << "p=0.01 gamma=1e3 user " << user << " rel variation = " << rel
               << (ok ? " (ok)" : " (MISSED, target < 0.10)") << "; ";
    }

    SystemConfig lower = paper_system(0.1, 100.0, 15.0);
    lower.powers = BackoffPowers{1.0, 0.0};
    const auto low_rows = run_backoff_sweep(lower, spec);
    const auto user3 = extract_curve(low_rows, 3, SweepEngine::analytic);
    bool strictly_decreasing = true;
    for (std::size_t i = 1; i < user3.size(); ++i)
        if (!(user3[i].op < user3[i - 1].op)) strictly_decreasing = false;
    if (!strictly_decreasing) pass = false;
    detail << "p=0.1 gamma=1e2 user 3 strictly decreasing: " << (strictly_decreasing ? "yes" : "NO");
    if (!pass)
        detail << " [user 3 gains ~4.9x from back-off even in the highly impulsive scenario: the "
                  "threshold encodes a flat-curve reading that the exact model does not produce]";
    report(5, pass, detail.str());
}

// --- 6: diversity order and asymptote shift --------------------------------
void criterion6() {
    const auto curve = [](int user, double p, double gamma, double lo, double hi) {
        OutageCurve out;
        for (double db = lo; db <= hi + 1e-9; db += 1.0)
            out.push_back({db, outage(make_cfg({1, 1, 1}, 0.5, p, gamma, db), user)});
        return out;
    };

    bool pass = true;
    std::ostringstream detail;
    for (int user = 1; user <= 3; ++user) {
        const double clean_slope = diversity_slope(curve(user, 0.0, 0.0, 33.0, 52.0), 35.0, 50.0);
        const bool slope_ok = std::fabs(clean_slope - user) <= 0.2;
        const double clean_mid = diversity_slope(curve(user, 0.0, 0.0, 18.0, 37.0), 20.0, 35.0);
        const double impulsive_mid =
            diversity_slope(curve(user, 0.01, 100.0, 18.0, 37.0), 20.0, 35.0);
        const bool shift_ok = impulsive_mid < clean_mid;
        if (!slope_ok || !shift_ok) pass = false;
        detail << "user " << user << ": 35-50 dB slope " << clean_slope << " (target " << user
               << " +- 0.2), 20-35 dB clean " << clean_mid << " vs impulsive " << impulsive_mid
               << "; ";
    }
    report(6, pass, detail.str());
}

// --- 7: sampler correctness --------------------------------------------------
void criterion7() {
    bool pass = true;
    std::ostringstream detail;

    // Two-sample KS per coordinate between the two gain samplers.
    const std::size_t draws = 100'000;
    const double ks_limit = std::sqrt(-0.5 * std::log(0.005)) *
                            std::sqrt(2.0 / static_cast<double>(draws));
    double worst_ks = 0.0;
    for (int users : {1, 2, 3, 5}) {
        RandomStream sort_stream(501, static_cast<std::uint64_t>(users));
        RandomStream decomp_stream(502, static_cast<std::uint64_t>(users));
        std::vector<std::vector<double>> a(static_cast<std::size_t>(users)),
            b(static_cast<std::size_t>(users));
        for (std::size_t t = 0; t < draws; ++t) {
            const OrderedGains ga = sample_ordered_gains_sort(users, sort_stream);
            const OrderedGains gb = sample_ordered_gains_decomposition(users, decomp_stream);
            for (int k = 0; k < users; ++k) {
                a[static_cast<std::size_t>(k)].push_back(ga.g[static_cast<std::size_t>(k)]);
                b[static_cast<std::size_t>(k)].push_back(gb.g[static_cast<std::size_t>(k)]);
            }
        }
        for (int k = 0; k < users; ++k) {
            auto& sa = a[static_cast<std::size_t>(k)];
            auto& sb = b[static_cast<std::size_t>(k)];
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            double d = 0.0;
            std::size_t i = 0, j = 0;
            while (i < sa.size() && j < sb.size()) {
                if (sa[i] <= sb[j]) ++i;
                else ++j;
                d = std::max(d, std::fabs(static_cast<double>(i) - static_cast<double>(j)) /
                                    static_cast<double>(draws));
            }
            worst_ks = std::max(worst_ks, d);
            if (d > ks_limit) pass = false;
        }
    }
    detail << "worst KS statistic " << worst_ks << " (accept <= " << ks_limit << "); ";

    // Noise sampler second moment within 2%.
    {
        RandomStream stream(600, 0);
        const NoiseParams params{.p = 0.1, .gamma = 100.0, .sigma_w2 = 1.0};
        double sum = 0.0;
        const int n = 1'000'000;
        for (int t = 0; t < n; ++t) sum += std::norm(sample_noise(params, stream).value);
        const double target = (1.0 - params.p) * 1.0 + params.p * (1.0 + params.gamma);
        const double rel = std::fabs(sum / n - target) / target;
        detail << "noise second moment rel err " << rel << " (limit 0.02); ";
        if (rel > 0.02) pass = false;
    }

    // Density normalization by radial Simpson quadrature.
    {
        const NoiseParams params{.p = 0.1, .gamma = 100.0, .sigma_w2 = 1.0};
        const double r_max = 12.0 * std::sqrt(params.sigma_w2 * (1.0 + params.gamma));
        const int panels = 60'000;
        const auto f = [&](double r) { return 2.0 * M_PI * r * noise_pdf({r, 0.0}, params); };
        double acc = f(0.0) + f(r_max);
        for (int k = 1; k < panels; ++k) acc += f(k * r_max / panels) * (k % 2 == 1 ? 4.0 : 2.0);
        const double integral = acc * (r_max / panels) / 3.0;
        detail << "pdf integral " << integral << " (target 1 +- 1e-6)";
        if (std::fabs(integral - 1.0) > 1e-6) pass = false;
    }

    report(7, pass, detail.str());
}

// --- 8: byte-identical CSV across worker counts ------------------------------
void criterion8() {
#ifndef NOMA_CLI_PATH
    report(8, false, "CLI binary path not configured at build time");
#else
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path();
    const fs::path config_path = dir / "noma_acceptance_config.txt";
    {
        std::ofstream cfg(config_path);
        cfg << "M = 3\na = 1, 1, 1\nrates = 0.5, 0.5, 0.5\np = 0.01\ngamma = 100\nrho_w_db = 10\n";
    }
    const std::string base_cmd = std::string(NOMA_CLI_PATH) +
                                 " sweep-snr --config " + config_path.string() +
                                 " --grid 0:10:5 --engines analytic,montecarlo,tdma" +
                                 " --trials 200000 --seed 424242 --out ";
    const fs::path out1 = dir / "noma_acceptance_w1.csv";
    const fs::path out4 = dir / "noma_acceptance_w4.csv";
    const std::string cmd1 = "NOMA_WORKERS=1 " + base_cmd + out1.string() + " > /dev/null";
    const std::string cmd4 = "NOMA_WORKERS=4 " + base_cmd + out4.string() + " > /dev/null";

    const int rc1 = std::system(cmd1.c_str());
    const int rc4 = std::system(cmd4.c_str());
    bool pass = rc1 == 0 && rc4 == 0;
    std::string detail;
    if (!pass) {
        detail = "CLI invocation failed";
    } else {
        const auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            return std::string{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        };
        const std::string a = slurp(out1), b = slurp(out4);
        pass = !a.empty() && a == b;
        detail = pass ? "1-worker and 4-worker runs agree byte for byte ("
                            + std::to_string(a.size()) + " bytes)"
                      : "worker count changed the output bytes";
    }
    fs::remove(config_path);
    for (const auto& out : {out1, out4}) {
        fs::remove(out);
        fs::remove(fs::path(out.string() + ".meta.json"));
    }
    report(8, pass, detail);
#endif
}

}  // namespace

int main(int argc, char** argv) {
    const int which = argc > 1 ? std::atoi(argv[1]) : 0;
    const std::function<void()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                              criterion5, criterion6, criterion7, criterion8};
    if (which < 0 || which > 8) {
        std::fprintf(stderr, "usage: acceptance [1..8]\n");
        return 2;
    }
    if (which == 0) {
        for (const auto& run : criteria) run();
    } else {
        criteria[which - 1]();
    }
    return g_failures == 0 ? 0 : 1;
}
