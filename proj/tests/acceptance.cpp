// End-to-end acceptance gate. Each numbered check exercises one headline
// property of the pipeline, prints a single [PASS]/[FAIL] line with the
// measured values and its pinned tolerance, and the binary exits nonzero if
// any check fails. All runs are fixed-seed and deterministic.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "qusense/correlators.hpp"
#include "qusense/dynamics.hpp"
#include "qusense/estimators.hpp"
#include "qusense/montecarlo.hpp"
#include "qusense/noise.hpp"
#include "qusense/planner.hpp"
#include "qusense/spectra.hpp"

using namespace qusense;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::vector<double> geomspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

// Exact <sin phi_1 sin phi_2> for two telegraph-noise windows of length tau
// whose starts are lag*tau apart, via the two-state transfer matrix: the
// weighted characteristic function over one window is exp[(Q + i u b D) tau]
// with Q the flip generator and D = diag(+1, -1), and windows chain through
// the free propagator exp(Q t_gap). Independent of the Gaussian pair factors,
// which are only approximate for this model.
double telegraph_sinsin(double b, double gf, int lag, double tau) {
    using M2 = std::array<cplx, 4>;
    const auto apply = [](const M2& A, const std::array<cplx, 2>& v) {
        return std::array<cplx, 2>{A[0] * v[0] + A[1] * v[1],
                                   A[2] * v[0] + A[3] * v[1]};
    };
    const auto window = [&](double u) {
        const cplx rho = tau * std::sqrt(cplx(gf * gf - u * u * b * b, 0.0));
        const cplx ch = std::cosh(rho);
        const cplx sf = std::abs(rho) < 1e-12 ? cplx(1.0, 0.0)
                                              : std::sinh(rho) / rho;
        const cplx d(0.0, u * b * tau);
        const double g = std::exp(-gf * tau);
        return M2{g * (ch + sf * d), g * sf * gf * tau,
                  g * sf * gf * tau, g * (ch - sf * d)};
    };
    const double e = std::exp(-2.0 * gf * (lag - 1) * tau);
    const M2 gap{0.5 * (1.0 + e), 0.5 * (1.0 - e),
                 0.5 * (1.0 - e), 0.5 * (1.0 + e)};
    const auto expect = [&](double u1, double u2) {
        std::array<cplx, 2> v{0.5, 0.5};
        v = apply(window(u1), v);
        v = apply(gap, v);
        v = apply(window(u2), v);
        return (v[0] + v[1]).real();
    };
    return 0.5 * (expect(1.0, -1.0) - expect(1.0, 1.0));
}

McConfig make_mc(const SimParams& p, const NoiseModel& noise, Pattern pat,
                 std::size_t cycles, std::uint64_t seed) {
    McConfig cfg;
    cfg.params = p;
    cfg.noise = noise;
    cfg.seq.pattern = pat;
    cfg.seq.cycles = cycles;
    cfg.seed = seed;
    cfg.threads = 4;
    return cfg;
}

// analytic second-order lag series including the lag-0 point (readout
// variance sin^2 alpha plus the phase variance, both damped by L_C^2)
LagSeries closedform_series(const SimParams& p, const NoiseModel& noise,
                            int n_f) {
    LagSeries s;
    s.dt = p.tau_I;
    const double l2 = std::pow(coherence_factor(noise, p.tau_I), 2);
    const double sa = std::sin(p.alpha());
    s.lag.push_back(0);
    s.value.push_back(l2 * (sa * sa + phase_variance(noise, p.tau_I)));
    for (int n = 1; n < n_f; ++n) {
        s.lag.push_back(n);
        s.value.push_back(closedform_G2(n, p, noise));
    }
    return s;
}

Corr4Grid closedform_grid(const SimParams& p, const NoiseModel& noise, int n_f2,
                          int n_f1) {
    Corr4Grid g;
    g.n_f2 = n_f2;
    g.n_f1 = n_f1;
    g.dt = 2.0 * p.tau_I;
    const std::size_t cells =
        static_cast<std::size_t>(n_f2) * n_f1 * n_f2;
    g.lags.reserve(cells);
    g.value.reserve(cells);
    for (int u = 1; u <= n_f2; ++u)
        for (int v = 1; v <= n_f1; ++v)
            for (int w = 1; w <= n_f2; ++w) {
                g.lags.push_back({u, v, w});
                g.value.push_back(closedform_G4(u, v, w, p, noise));
            }
    return g;
}

// shared observation point for the spectrum and cross-validation checks
SimParams operating_point() {
    SimParams p;
    p.a = 0.2;
    p.omega0 = 0.3;
    p.gamma0 = 1e-3;
    p.tau_I = 1.0;
    return p;
}

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    SimParams p;
    p.a = 0.0;
    p.omega0 = 1.0;
    p.gamma0 = 0.0;
    p.tau_I = 1.0;
    // all models at per-shot phase variance ~1 (the strongest intensity the
    // claim is certified for): white S_C = 1/tau, OU / telegraph variance
    // 1.0678 at correlation time 5 tau, plus a 3-segment amplitude schedule
    struct Entry {
        const char* name;
        NoiseModel model;
    };
    std::vector<Entry> entries;
    const double s2 = 1.0678;
    entries.push_back({"white", WhiteNoise{1.0}});
    entries.push_back({"ou", OUNoise{s2, 5.0}});
    entries.push_back({"telegraph", TelegraphNoise{std::sqrt(s2), 0.1}});
    entries.push_back({"scaled", ScaledNoise{WhiteNoise{1.0},
                                             {{7e5, 1.3}, {7e5, 0.6}, {7e5, 1.1}}}});

    double worst_exact = 0.0;
    double worst_cover = 1.0;
    for (std::size_t mi = 0; mi < entries.size(); ++mi) {
        for (int u = 1; u <= 5; ++u)
            for (int v = 1; v <= 5; ++v)
                for (int w = 1; w <= 5; ++w)
                    worst_exact = std::max(
                        worst_exact,
                        std::abs(exact_G4(u, v, w, p, entries[mi].model)));
        const ShotRecords rec = mc_run(
            make_mc(p, entries[mi].model, Pattern::XYXZ, 1000000, 4201 + mi));
        const Corr4Grid est = estimate_G4(rec, 5, 5);
        int inside = 0;
        for (std::size_t k = 0; k < est.value.size(); ++k)
            if (std::abs(est.value[k]) <= 3.0 * est.se[k]) ++inside;
        worst_cover = std::min(worst_cover, inside / 125.0);
    }

    // second-order output at a = 0 is the bare noise correlation
    // <sin phi_t sin phi_t'>; the path engine must land on each model's own
    // analytic value: the Gaussian pair-factor form L^2 sinh<phi phi> for OU,
    // the transfer-matrix expectation for telegraph (whose Gaussian factors
    // are approximate only)
    double worst_rel = 0.0, worst_abs = 0.0;
    for (int mi : {1, 2}) {
        const NoisePath path =
            sample_phases(entries[mi].model, 1000000, p.tau_I, 771 + mi);
        const double l2 = std::exp(-phase_variance(entries[mi].model, p.tau_I));
        for (int n : {1, 2, 3}) {
            const double got = exact_G2_path(n, p, path);
            const double want =
                mi == 1 ? l2 * std::sinh(
                                   phase_pair_cov(entries[mi].model, n, p.tau_I))
                        : telegraph_sinsin(std::sqrt(s2), 0.1, n, p.tau_I);
            worst_rel =
                std::max(worst_rel, std::abs(got - want) / std::abs(want));
        }
    }
    for (int mi : {0, 3}) {
        const NoisePath path =
            sample_phases(entries[mi].model, 400000, p.tau_I, 771 + mi);
        for (int n : {1, 2})
            worst_abs = std::max(worst_abs, std::abs(exact_G2_path(n, p, path)));
    }

    const bool pass = worst_exact <= 1e-12 && worst_cover >= 0.99 &&
                      worst_rel <= 0.05 && worst_abs <= 0.01;
    std::ostringstream os;
    os << std::setprecision(3)
       << "a=0, 4 noise models at <phi^2>~1: exact |G4| max " << worst_exact
       << " (tol 1e-12); MC 3-sigma coverage min " << worst_cover * 100.0
       << "% of 125 cells (need 99%); noise-term G2 worst rel "
       << worst_rel * 100.0 << "% (tol 5%), white/scaled residual " << worst_abs
       << " (tol 0.01); " << std::setprecision(2) << seconds_since(t0) << " s";
    report(1, pass, os.str());
}

void criterion2() {
    const SimParams p = operating_point();
    const double S = 2.5;
    const NoiseModel noise = WhiteNoise{S};
    const double T = 2e8;
    const double lc = coherence_factor(noise, p.tau_I);
    const double l2 = lc * lc;
    const double gm = gamma_M(p);

    const double peak2 = l2 * 2.0 * gm / (p.gamma0 + gm);
    const double band =
        total_uncertainty_2nd(shot_noise_2nd(nf_2nd(p.gamma0 + gm, p.tau_I),
                                             T / p.tau_I),
                              lc, p.tau_I, S);

    const NfPair nf = nf_4th(p.gamma0, gm, p.tau_I);
    const Corr4Grid grid = closedform_grid(p, noise, nf.n_f2, nf.n_f1);
    const double mag4 =
        std::abs(dft3(grid, p.omega0, 0.0, p.omega0).value);
    const double sigma4 = shot_noise_4th(nf.n_f2, nf.n_f1, T, p.tau_I);
    const double ratio = mag4 / sigma4;

    const bool pass = peak2 < band && ratio > 5.0;
    std::ostringstream os;
    os << std::setprecision(4) << "S_C tau = " << S * p.tau_I
       << ": 2nd-order peak " << peak2 << " hidden below dS_C band " << band
       << "; 4th-order |S3| " << mag4 << " vs sigma_M " << sigma4 << " (ratio "
       << std::setprecision(3) << ratio << ", need > 5)";
    report(2, pass, os.str());
}

void criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    const SimParams p = operating_point();
    const NoiseModel noise = WhiteNoise{0.5};
    const std::vector<double> g2ex = exact_G2_series(50, p, noise);
    const double g4ex = exact_G4(1, 1, 1, p, noise);
    // one intrinsic-dephasing step sits inside the record window but outside
    // the kernel bookkeeping of the analytic chain
    const double fac = std::exp(-p.gamma0 * p.tau_I);

    double worst_z = 0.0;
    int violations = 0;
    for (int s = 1; s <= 100; ++s) {
        const ShotRecords rec =
            mc_run(make_mc(p, noise, Pattern::XY, 200000, s));
        const LagSeries est = estimate_G2(rec, 50);
        for (int n = 1; n <= 50; ++n) {
            const double z =
                std::abs(est.value[n - 1] - fac * g2ex[n - 1]) / est.se[n - 1];
            worst_z = std::max(worst_z, z);
            if (z > 4.0) ++violations;
        }
        const ShotRecords rec4 =
            mc_run(make_mc(p, noise, Pattern::XYXZ, 200000, s));
        const Corr4Grid est4 = estimate_G4(rec4, 1, 1);
        const double z4 = std::abs(est4.value[0] - fac * g4ex) / est4.se[0];
        worst_z = std::max(worst_z, z4);
        if (z4 > 4.0) ++violations;
    }
    const bool pass = violations == 0;
    std::ostringstream os;
    os << std::setprecision(3) << "MC vs exact engine, 100 seeds x (50 G2 lags "
       << "+ G4 unit cell): " << violations << " beyond 4 sigma, worst |z| "
       << worst_z << "; " << std::setprecision(2) << seconds_since(t0) << " s";
    report(3, pass, os.str());
}

void criterion4() {
    const NoiseModel noise = WhiteNoise{0.5};
    const double l2 = std::pow(coherence_factor(noise, 1.0), 2);

    double worst_rms = 0.0;
    for (double alpha : {0.05, 0.1, 0.15, 0.2}) {
        SimParams p;
        p.a = alpha;
        p.omega0 = 0.35;
        p.gamma0 = 1e-3;
        p.tau_I = 1.0;
        const double rate = p.gamma0 + gamma_M(p);
        const double s2a = std::pow(std::sin(p.alpha()), 2);
        const std::vector<double> ex = exact_G2_series(50, p, noise);
        double ss = 0.0;
        for (int n = 1; n <= 50; ++n) {
            const double env = l2 * s2a * std::exp(-rate * n * p.tau_I);
            const double dev = (closedform_G2(n, p, noise) - ex[n - 1]) / env;
            ss += dev * dev;
        }
        worst_rms = std::max(worst_rms, std::sqrt(ss / 50.0));
    }

    // frozen regression: at slow precession (phi = 0.1) the closed form's
    // envelope-relative error grows to ~9%; pinned so a silent change in
    // either engine shows up
    double reg_max = 0.0;
    {
        SimParams p;
        p.a = 0.2;
        p.omega0 = 0.1;
        p.gamma0 = 1e-3;
        p.tau_I = 1.0;
        const double rate = p.gamma0 + gamma_M(p);
        const double s2a = std::pow(std::sin(p.alpha()), 2);
        const std::vector<double> ex = exact_G2_series(50, p, noise);
        for (int n = 1; n <= 50; ++n) {
            const double env = l2 * s2a * std::exp(-rate * n * p.tau_I);
            reg_max = std::max(
                reg_max,
                std::abs(closedform_G2(n, p, noise) - ex[n - 1]) / env);
        }
    }

    double worst_g4 = 0.0;
    for (double alpha : {0.1, 0.2}) {
        SimParams p;
        p.a = alpha;
        p.omega0 = 0.35;
        p.gamma0 = 1e-3;
        p.tau_I = 1.0;
        const double gm = gamma_M(p);
        const double rate = p.gamma0 + gm;
        const double s4a = std::pow(std::sin(p.alpha()), 4);
        for (int u : {1, 2, 4})
            for (int v : {1, 2, 5, 10, 25})
                for (int w : {1, 2, 4}) {
                    const double t_jk = (2 * u - 1) * p.tau_I;
                    const double t_km = 2 * v * p.tau_I;
                    const double t_mn = (2 * w + 1) * p.tau_I;
                    const double env =
                        l2 * s4a *
                        std::exp(-rate * t_jk - 2.0 * gm * t_km - rate * t_mn);
                    const double dev = (closedform_G4(u, v, w, p, noise) -
                                        exact_G4(u, v, w, p, noise)) /
                                       env;
                    worst_g4 = std::max(worst_g4, std::abs(dev));
                }
    }

    const bool pass = worst_rms <= 0.02 && reg_max > 0.06 && reg_max < 0.11 &&
                      worst_g4 <= 0.10;
    std::ostringstream os;
    os << std::setprecision(3)
       << "closed form vs exact engine, envelope units: G2 RMS "
       << worst_rms * 100.0 << "% (tol 2%, alpha <= 0.2, lags <= 50); slow-"
       << "precession regression max " << reg_max * 100.0
       << "% (frozen 6-11%); G4 max " << worst_g4 * 100.0 << "% (tol 10%)";
    report(4, pass, os.str());
}

void criterion5() {
    SimParams p;
    p.a = 1.0;
    p.omega0 = 1.0;
    p.gamma0 = 0.0;
    p.tau_I = 0.02;
    const NoiseModel none = NoNoise{};
    double worst = 0.0;
    for (int t = 1; t <= 5; ++t) {
        const int n = static_cast<int>(std::lround(t / p.tau_I));
        const double got = exact_G2(n, p, none) / (p.tau_I * p.tau_I);
        const double want = p.a * p.a * std::cos(p.omega0 * t);
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
    const int cells[2][3] = {{25, 25, 25}, {13, 50, 37}};
    for (const auto& c : cells) {
        const double t_jk = (2 * c[0] - 1) * p.tau_I;
        const double t_km = 2 * c[1] * p.tau_I;
        const double t_mn = (2 * c[2] + 1) * p.tau_I;
        const double got = exact_G4(c[0], c[1], c[2], p, none) /
                           std::pow(p.tau_I, 4);
        const double want = std::pow(p.a, 4) * std::sin(p.omega0 * t_jk) *
                            std::sin(p.omega0 * t_mn);
        (void)t_km;
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
    const bool pass = worst <= 0.05;
    std::ostringstream os;
    os << std::setprecision(3) << "weak coupling a tau = " << p.a * p.tau_I
       << ": G2/tau^2 vs a^2 cos(w0 t) and G4/tau^4 vs a^4 sin sin, worst rel "
       << worst * 100.0 << "% (tol 5%)";
    report(5, pass, os.str());
}

void criterion6() {
    const SimParams p = operating_point();
    const double S = 0.5;
    const NoiseModel noise = WhiteNoise{S};
    const double l2 = std::pow(coherence_factor(noise, p.tau_I), 2);
    const double gm = gamma_M(p);

    const int n_f = nf_2nd(p.gamma0 + gm, p.tau_I);
    const LagSeries series = closedform_series(p, noise, n_f);
    const Spectrum sp = dft1(series, n_f, {p.omega0});
    const double got2 = sp.value[0].real();
    const double want2 = g2_resonance(p, l2, S);
    const double rel2 = std::abs(got2 - want2) / want2;

    const NfPair nf4 = nf_4th(p.gamma0, gm, p.tau_I);
    const Corr4Grid grid = closedform_grid(p, noise, nf4.n_f2, nf4.n_f1);
    const double got4 = std::abs(dft3(grid, p.omega0, 0.0, p.omega0).value);
    const double want4 = g4_resonance(p, l2);
    const double rel4 = std::abs(got4 - want4) / want4;

    const bool pass = rel2 <= 0.05 && rel4 <= 0.30;
    std::ostringstream os;
    os << std::setprecision(4) << "resonance values: 1-D (N_F = " << n_f
       << ") " << got2 << " vs 2 L^2 gamma_M/Gamma + L^2 tau S_C = " << want2
       << " (" << std::setprecision(2) << rel2 * 100.0
       << "%, tol 5%); 3-D (N_F2 = " << nf4.n_f2 << ", N_F1 = " << nf4.n_f1
       << ") " << std::setprecision(4) << got4 << " vs " << want4 << " ("
       << std::setprecision(2) << rel4 * 100.0 << "%, tol 30%)";
    report(6, pass, os.str());
}

void criterion7() {
    // closed-form SNR never exceeds the detectability ceiling a^2/(2 g0 S_C)
    double worst_ratio = 0.0;
    const double pts[3][2] = {{0.05, 2.0}, {0.01, 5.0}, {0.2, 1.0}};
    const std::vector<double> gms =
        geomspace(1e-8, gamma_M_max(1.0), 2000);
    for (const auto& pt : pts) {
        const double bound = snr_2nd_bound(1.0, pt[0], pt[1]);
        for (double gm : gms)
            worst_ratio = std::max(
                worst_ratio, snr_2nd(gm, pt[0], pt[1], 1.0, 1e12) / bound);
    }
    const bool pass_sup = worst_ratio <= 1.0 + 1e-6;

    // the planner's infeasible region is exactly g0 S_C >= a^2/2
    const std::vector<double> S_grid = geomspace(0.1, 10.0, 25);
    const std::vector<double> g0_grid = geomspace(1e-3, 0.3, 25);
    const std::vector<PlanPoint> plan =
        plan_map(Order::Second, S_grid, g0_grid, 1.0, 0.18, 4);
    int infeasible = 0, mismatches = 0;
    for (const auto& pt : plan) {
        if (!pt.feasible) ++infeasible;
        if (pt.feasible != (pt.gamma0 * pt.S_C < 0.5)) ++mismatches;
    }
    const bool pass = pass_sup && mismatches == 0 && infeasible > 0;
    std::ostringstream os;
    os << std::setprecision(9) << "sup snr_2nd / bound = " << worst_ratio
       << " over 2000 gamma_M points x 3 operating points at T = 1e12 (tol 1 + "
       << "1e-6); blocked-region boundary g0 S_C = a^2/2 reproduced on 25x25 "
       << "map (" << infeasible << " infeasible cells, 0 mismatches required, "
       << "got " << mismatches << ")";
    report(7, pass, os.str());
}

void criterion8() {
    const auto t0 = std::chrono::steady_clock::now();
    const double a = 1.0, cap = 0.18;
    const std::vector<double> S_grid = geomspace(0.1, 10.0, 25);
    const std::vector<double> g0_grid = geomspace(1e-3, 0.3, 25);
    const std::vector<PlanPoint> plan2 =
        plan_map(Order::Second, S_grid, g0_grid, a, cap, 4);
    const std::vector<PlanPoint> plan4 =
        plan_map(Order::Fourth, S_grid, g0_grid, a, cap, 4);
    const double t_maps = seconds_since(t0);

    // interior fourth-order optimum at g0 = 0 sits at a^2/(8 S_C)
    double worst4 = 0.0;
    for (double S : {1.0, 2.0, 5.0, 10.0}) {
        const PlanPoint pt = optimize_T(Order::Fourth, 0.0, S, a, cap);
        const double want = a * a / (8.0 * S);
        worst4 = std::max(worst4, std::abs(pt.gamma_m_opt - want) / want);
    }

    // second-order interior optimum follows (1 - g0bar) opt_fraction(g0bar)
    double worst2 = 0.0;
    bool frac_in_band = true;
    for (int i = 1; i <= 18; ++i) {
        const double g0bar = 0.05 * i;
        const double S = 5.0;
        const PlanPoint pt =
            optimize_T(Order::Second, g0bar * a * a / (2.0 * S), S, a, cap);
        const double frac = pt.gamma_m_bar() / (1.0 - g0bar);
        worst2 = std::max(worst2, std::abs(frac - opt_fraction(g0bar)));
        if (!(frac > 0.5 && frac < 2.0 / 3.0)) frac_in_band = false;
    }

    // scaling approximations stay within certified factors of the optima
    double lo2 = 1e300, hi2 = 0.0, lo4 = 1e300, hi4 = 0.0;
    int mono_violations = 0;
    const std::size_t ng = g0_grid.size();
    for (std::size_t k = 0; k < plan2.size(); ++k) {
        const double S = S_grid[k / ng], g0 = g0_grid[k % ng];
        if (plan2[k].feasible) {
            const double r = plan2[k].t_opt / scaling_T_2nd(g0, S, a, cap);
            lo2 = std::min(lo2, r);
            hi2 = std::max(hi2, r);
        }
        const double r4 = plan4[k].t_opt / scaling_T_4th(g0, S, a, cap);
        lo4 = std::min(lo4, r4);
        hi4 = std::max(hi4, r4);
        if (k >= ng && plan2[k].feasible && plan2[k - ng].feasible &&
            plan2[k].t_opt < plan2[k - ng].t_opt * (1.0 - 1e-12))
            ++mono_violations;
    }

    const bool pass = t_maps <= 60.0 && worst4 <= 1e-4 && worst2 <= 1e-5 &&
                      frac_in_band && lo2 >= 0.2 && hi2 <= 10.5 &&
                      lo4 >= 0.2 && hi4 <= 6.0 && mono_violations == 0;
    std::ostringstream os;
    os << std::setprecision(3) << "both 25x25 maps in " << t_maps
       << " s (limit 60); 4th interior optimum vs a^2/(8 S_C) worst rel "
       << worst4 << " (tol 1e-4); 2nd fraction dev " << worst2
       << " with opt_fraction in (1/2, 2/3); scaling/optimum 2nd in ["
       << lo2 << ", " << hi2 << "] (certified [0.2, 10.5]), 4th in [" << lo4
       << ", " << hi4 << "] (certified [0.2, 6.0]); T_opt monotonic in S_C ("
       << mono_violations << " violations)";
    report(8, pass, os.str());
}

void criterion9() {
    const auto t0 = std::chrono::steady_clock::now();
    const SimParams p = operating_point();
    const NoiseModel none = NoNoise{};

    const int n_f = 64;
    const std::size_t m_cycles = 200000;
    // sqrt(N_F/M) is the pure shot-noise floor; run the second-order scatter
    // at weak coupling where the signal's own lag covariance is negligible
    // (at alpha = 0.2 it inflates the scatter by ~60% at resonance)
    SimParams p2 = p;
    p2.a = 0.05;
    std::vector<cplx> v2;
    for (int s = 0; s < 100; ++s) {
        const ShotRecords rec =
            mc_run(make_mc(p2, none, Pattern::XY, m_cycles, 501 + s));
        const LagSeries est = estimate_G2(rec, n_f - 1);
        v2.push_back(dft1(est, n_f, {p.omega0}).value[0]);
    }
    cplx mean2(0.0, 0.0);
    for (const cplx& v : v2) mean2 += v;
    mean2 /= static_cast<double>(v2.size());
    double var2 = 0.0;
    for (const cplx& v : v2) var2 += std::norm(v - mean2);
    const double scatter2 = std::sqrt(var2 / v2.size());
    const double pred2 = shot_noise_2nd(n_f, static_cast<double>(m_cycles));
    const double dev2 = std::abs(scatter2 / pred2 - 1.0);

    const int n_f2 = 6, n_f1 = 4;
    std::vector<cplx> v4;
    for (int s = 0; s < 100; ++s) {
        const ShotRecords rec =
            mc_run(make_mc(p, none, Pattern::XYXZ, m_cycles, 701 + s));
        const Corr4Grid est = estimate_G4(rec, n_f2, n_f1);
        v4.push_back(dft3(est, p.omega0, 0.0, p.omega0).value);
    }
    cplx mean4(0.0, 0.0);
    for (const cplx& v : v4) mean4 += v;
    mean4 /= static_cast<double>(v4.size());
    double var4 = 0.0;
    for (const cplx& v : v4) var4 += std::norm(v - mean4);
    const double scatter4 = std::sqrt(var4 / v4.size());
    const double T = 2.0 * m_cycles * p.tau_I;
    const double pred4 = shot_noise_4th(n_f2, n_f1, T, p.tau_I);
    const double dev4 = std::abs(scatter4 / pred4 - 1.0);

    const bool pass = dev2 <= 0.2 && dev4 <= 0.2;
    std::ostringstream os;
    os << std::setprecision(4) << "resonance scatter over 100 seeds: 2nd "
       << scatter2 << " vs sqrt(N_F/M) = " << pred2 << " ("
       << std::setprecision(2) << dev2 * 100.0 << "%); 4th "
       << std::setprecision(4) << scatter4
       << " vs N_F2 sqrt(N_F1) sqrt(2 tau/T) = " << pred4 << " ("
       << std::setprecision(2) << dev4 * 100.0 << "%); tol 20%; "
       << seconds_since(t0) << " s";
    report(9, pass, os.str());
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%d of 9 criteria passed in %.1f s\n", 9 - g_failures,
                seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
