// qusense: batch driver for the weak-measurement correlation simulator.
// Subcommands: validate | simulate | exact | spectrum | plan.
// Exit codes: 0 success, 1 invariant failure, 2 configuration error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qusense/config.hpp"
#include "qusense/correlators.hpp"
#include "qusense/csvio.hpp"
#include "qusense/estimators.hpp"
#include "qusense/montecarlo.hpp"
#include "qusense/planner.hpp"
#include "qusense/spectra.hpp"
#include "qusense/validate.hpp"

namespace {

using nlohmann::json;
using namespace qusense;

struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> shards;
    std::optional<int> threads;
    std::optional<std::string> out_dir;
};

RunConfig load_config(const CliOverrides& cli, bool required) {
    RunConfig cfg;
    if (!cli.config_path.empty()) {
        cfg = parse_config_file(cli.config_path);
    } else if (required) {
        throw ConfigError("config error: --config is required for this command");
    }
    if (cli.seed) cfg.seed = *cli.seed;
    if (cli.shards) {
        if (*cli.shards < 1) throw ConfigError("config error: --shards must be >= 1");
        cfg.shards = *cli.shards;
    }
    if (cli.threads) {
        if (*cli.threads < 0)
            throw ConfigError("config error: --threads must be >= 0");
        cfg.threads = *cli.threads;
    }
    if (cli.out_dir) cfg.out_dir = *cli.out_dir;
    return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text << '\n';
}

json summary_header(const char* command, const RunConfig& cfg) {
    json s;
    s["command"] = command;
    s["config"] = json::parse(config_to_json(cfg));
    return s;
}

double wall_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

int cmd_validate(const CliOverrides& cli, bool inject_fault) {
    RunConfig cfg = load_config(cli, false);
    FaultInjection fault;
    fault.perturb_mz = inject_fault;
    const ValidationReport report = run_validation(fault);
    for (const auto& c : report.checks)
        std::printf("[%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
    write_text(out_path(cfg, "validation.json"), report.to_json());
    std::printf("%zu checks, %s\n", report.checks.size(),
                report.all_pass() ? "all passed" : "FAILURES present");
    return report.all_pass() ? 0 : 1;
}

int cmd_simulate(const CliOverrides& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg = load_config(cli, true);
    if (cfg.seq.cycles < 1)
        throw ConfigError("config error at sequence.cycles: must be >= 1 for simulate");

    McConfig mc;
    mc.params = cfg.params;
    mc.noise = cfg.noise;
    mc.seq = cfg.seq;
    mc.mode = cfg.mode;
    mc.seed = cfg.seed;
    mc.shards = cfg.shards;
    mc.threads = cfg.resolved_threads();
    mc.chunk_cycles = cfg.chunk_cycles;
    mc.substeps_per_tau = cfg.substeps_per_tau;
    mc.store_phases = cfg.store_phases;
    const ShotRecords rec = mc_run(mc);

    json s = summary_header("simulate", cfg);
    write_records_csv(out_path(cfg, "records.csv"), rec);
    s["outputs"]["records"] = "records.csv";
    if (cfg.store_phases) {
        write_phases_csv(out_path(cfg, "phases.csv"), rec);
        s["outputs"]["phases"] = "phases.csv";
    }
    if (cfg.seq.pattern == Pattern::XY) {
        const LagSeries g2 = estimate_G2(rec, cfg.max_lag);
        write_g2_csv(out_path(cfg, "g2.csv"), g2);
        s["outputs"]["g2"] = "g2.csv";
        s["estimates"]["g2_lag1"] = g2.value.front();
        s["estimates"]["g2_lag1_stderr"] = g2.se.front();
    } else {
        const Corr4Grid g4 = estimate_G4(rec, cfg.n_f2, cfg.n_f1);
        write_g4_csv(out_path(cfg, "g4.csv"), g4);
        s["outputs"]["g4"] = "g4.csv";
        s["estimates"]["g4_111"] = g4.value[g4.index(1, 1, 1)];
        s["estimates"]["g4_111_stderr"] = g4.se[g4.index(1, 1, 1)];
    }
    s["cycles"] = rec.cycles();
    s["seed"] = rec.seed;
    s["wall_time_s"] = wall_seconds(t0);
    write_text(out_path(cfg, "summary.json"), s.dump(2));
    std::printf("simulate: %zu cycles -> %s\n", rec.cycles(), cfg.out_dir.c_str());
    return 0;
}

LagSeries closedform_series(const RunConfig& cfg, int max_lag) {
    LagSeries s;
    s.dt = cfg.params.tau_I;
    const double l2 =
        std::pow(coherence_factor(cfg.noise, cfg.params.tau_I), 2);
    const double al = cfg.params.alpha();
    // lag 0 of the analytic series: equal-time value of the decaying form
    s.lag.push_back(0);
    s.value.push_back(l2 * std::sin(al) * std::sin(al) +
                      l2 * phase_variance(cfg.noise, cfg.params.tau_I));
    for (int n = 1; n <= max_lag; ++n) {
        s.lag.push_back(n);
        s.value.push_back(closedform_G2(n, cfg.params, cfg.noise));
    }
    return s;
}

int cmd_exact(const CliOverrides& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg = load_config(cli, true);
    json s = summary_header("exact", cfg);

    LagSeries g2;
    g2.dt = cfg.params.tau_I;
    const std::vector<double> series =
        exact_G2_series(cfg.max_lag, cfg.params, cfg.noise, cfg.mode);
    for (int n = 1; n <= cfg.max_lag; ++n) {
        g2.lag.push_back(n);
        g2.value.push_back(series[n - 1]);
    }
    write_g2_csv(out_path(cfg, "g2_exact.csv"), g2);
    s["outputs"]["g2_exact"] = "g2_exact.csv";

    LagSeries g2c;
    g2c.dt = cfg.params.tau_I;
    for (int n = 1; n <= cfg.max_lag; ++n) {
        g2c.lag.push_back(n);
        g2c.value.push_back(closedform_G2(n, cfg.params, cfg.noise));
    }
    write_g2_csv(out_path(cfg, "g2_closedform.csv"), g2c);
    s["outputs"]["g2_closedform"] = "g2_closedform.csv";

    Corr4Grid g4;
    g4.n_f2 = cfg.n_f2;
    g4.n_f1 = cfg.n_f1;
    g4.dt = 2.0 * cfg.params.tau_I;
    Corr4Grid g4c = g4;
    for (int u = 1; u <= cfg.n_f2; ++u)
        for (int v = 1; v <= cfg.n_f1; ++v)
            for (int w = 1; w <= cfg.n_f2; ++w) {
                g4.lags.push_back({u, v, w});
                g4.value.push_back(exact_G4(u, v, w, cfg.params, cfg.noise, cfg.mode));
                g4c.lags.push_back({u, v, w});
                g4c.value.push_back(closedform_G4(u, v, w, cfg.params, cfg.noise));
            }
    write_g4_csv(out_path(cfg, "g4_exact.csv"), g4);
    write_g4_csv(out_path(cfg, "g4_closedform.csv"), g4c);
    s["outputs"]["g4_exact"] = "g4_exact.csv";
    s["outputs"]["g4_closedform"] = "g4_closedform.csv";
    s["wall_time_s"] = wall_seconds(t0);
    write_text(out_path(cfg, "summary.json"), s.dump(2));
    std::printf("exact: lags 1..%d and %dx%dx%d grid -> %s\n", cfg.max_lag,
                cfg.n_f2, cfg.n_f1, cfg.n_f2, cfg.out_dir.c_str());
    return 0;
}

int cmd_spectrum(const CliOverrides& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg = load_config(cli, true);
    cfg.params.check();
    const double gm = gamma_M(cfg.params);
    if (!(gm > 0.0))
        throw ConfigError("config error at params.a: spectrum needs a > 0");
    const double gamma_total = cfg.params.gamma0 + gm;
    const int n_f = cfg.n_f > 0 ? cfg.n_f : nf_2nd(gamma_total, cfg.params.tau_I);

    LagSeries series;
    if (cfg.spectrum_source == "closedform") {
        series = closedform_series(cfg, n_f - 1);
    } else {
        series.dt = cfg.params.tau_I;
        const std::vector<double> v =
            exact_G2_series(n_f - 1, cfg.params, cfg.noise, cfg.mode);
        // the analytic equal-time term completes the one-sided sum
        series.lag.push_back(0);
        const double l2 =
            std::pow(coherence_factor(cfg.noise, cfg.params.tau_I), 2);
        const double al = cfg.params.alpha();
        series.value.push_back(l2 * std::sin(al) * std::sin(al) +
                               l2 * phase_variance(cfg.noise, cfg.params.tau_I));
        for (int n = 1; n < n_f; ++n) {
            series.lag.push_back(n);
            series.value.push_back(v[n - 1]);
        }
    }

    double w_lo = cfg.omega_min, w_hi = cfg.omega_max;
    if (!(w_hi > w_lo)) {
        const double half = 20.0 * gamma_total;
        w_lo = cfg.params.omega0 - half;
        w_hi = cfg.params.omega0 + half;
    }
    const std::vector<double> omegas =
        default_omega_grid(n_f, cfg.params.tau_I, w_lo, w_hi);
    const Spectrum sp = dft1(series, n_f, omegas);
    write_spectrum_csv(out_path(cfg, "spectrum.csv"), sp);

    const Spectrum at_res =
        dft1(series, n_f, std::vector<double>{cfg.params.omega0});
    const double l2 = std::pow(coherence_factor(cfg.noise, cfg.params.tau_I), 2);
    const double S_res = spectral_density(cfg.noise, cfg.params.omega0);

    json s = summary_header("spectrum", cfg);
    s["outputs"]["spectrum"] = "spectrum.csv";
    s["n_f"] = n_f;
    s["resonance"]["omega0"] = cfg.params.omega0;
    s["resonance"]["value_re"] = at_res.value[0].real();
    s["resonance"]["value_abs"] = std::abs(at_res.value[0]);
    s["resonance"]["formula"] = g2_resonance(cfg.params, l2, S_res);
    s["wall_time_s"] = wall_seconds(t0);
    write_text(out_path(cfg, "summary.json"), s.dump(2));
    std::printf("spectrum: n_f=%d, %zu frequencies -> %s\n", n_f, omegas.size(),
                cfg.out_dir.c_str());
    return 0;
}

int cmd_plan(const CliOverrides& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg = load_config(cli, true);
    const double cap =
        cfg.gamma_m_max > 0.0 ? cfg.gamma_m_max : 0.18 * cfg.plan_a;
    const std::vector<PlanPoint> pts =
        plan_map(cfg.plan_order, cfg.plan_S_C.build(), cfg.plan_gamma0.build(),
                 cfg.plan_a, cap, cfg.resolved_threads());
    write_plan_csv(out_path(cfg, "plan.csv"), pts);

    std::size_t infeasible = 0;
    for (const auto& p : pts)
        if (!p.feasible) ++infeasible;
    json s = summary_header("plan", cfg);
    s["outputs"]["plan"] = "plan.csv";
    s["cells"] = pts.size();
    s["infeasible_cells"] = infeasible;
    s["gamma_m_max"] = cap;
    s["wall_time_s"] = wall_seconds(t0);
    write_text(out_path(cfg, "summary.json"), s.dump(2));
    std::printf("plan: %zu cells (%zu infeasible) -> %s\n", pts.size(), infeasible,
                cfg.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-measurement correlation simulator"};
    app.require_subcommand(1);

    CliOverrides cli;
    bool inject_fault = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", cli.config_path, "JSON run configuration");
        sub->add_option("--seed", cli.seed, "master seed override");
        sub->add_option("--shards", cli.shards, "shard count override");
        sub->add_option("--threads", cli.threads, "worker thread override");
        sub->add_option("--out", cli.out_dir, "output directory override");
    };

    CLI::App* validate = app.add_subcommand("validate", "run the invariant suite");
    add_common(validate);
    validate->add_flag("--inject-fault", inject_fault,
                       "perturb the z-readout superoperator (suite self-test)");
    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo shot records and estimates");
    add_common(simulate);
    CLI::App* exact =
        app.add_subcommand("exact", "exact correlation engine and closed forms");
    add_common(exact);
    CLI::App* spectrum =
        app.add_subcommand("spectrum", "1-D correlation spectrum");
    add_common(spectrum);
    CLI::App* plan = app.add_subcommand("plan", "optimal acquisition-time maps");
    add_common(plan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(cli, inject_fault);
        if (app.got_subcommand(simulate)) return cmd_simulate(cli);
        if (app.got_subcommand(exact)) return cmd_exact(cli);
        if (app.got_subcommand(spectrum)) return cmd_spectrum(cli);
        if (app.got_subcommand(plan)) return cmd_plan(cli);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
