#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "qusense/correlators.hpp"
#include "qusense/planner.hpp"
#include "qusense/spectra.hpp"

using namespace qusense;

namespace {

SimParams params(double a, double w0, double g0, double tau) {
    SimParams p;
    p.a = a;
    p.omega0 = w0;
    p.gamma0 = g0;
    p.tau_I = tau;
    return p;
}

LagSeries geometric_series(double x, int count, int first_lag, double dt) {
    LagSeries s;
    s.dt = dt;
    for (int i = 0; i < count; ++i) {
        s.lag.push_back(first_lag + i);
        s.value.push_back(std::pow(x, first_lag + i));
    }
    return s;
}

}  // namespace

TEST_CASE("one-sided transform of a geometric series has the closed-form sum") {
    const double x = 0.8, dt = 0.3, w = 1.1;
    const int L = 40;
    const LagSeries s = geometric_series(x, L, 0, dt);
    const Spectrum sp = dft1(s, L, {w});
    const cplx q = x * std::exp(cplx(0.0, w * dt));
    const cplx want = (1.0 - std::pow(q, L)) / (1.0 - q);
    CHECK(std::abs(sp.value[0] - want) < 1e-12);
    CHECK(sp.n_f == L);
    CHECK(sp.dt == dt);

    // n_f truncates the sum even when the series carries more lags
    const Spectrum half = dft1(s, L / 2, {w});
    const cplx want_half = (1.0 - std::pow(q, L / 2)) / (1.0 - q);
    CHECK(std::abs(half.value[0] - want_half) < 1e-12);

    // an estimator-style series starting at lag 1 just drops the n = 0 term
    const LagSeries s1 = geometric_series(x, L - 1, 1, dt);
    const Spectrum sp1 = dft1(s1, L, {w});
    CHECK(std::abs(sp1.value[0] - (want - 1.0)) < 1e-12);
}

TEST_CASE("transform input validation and error propagation") {
    const LagSeries s = geometric_series(0.5, 10, 0, 1.0);
    CHECK_THROWS_AS(dft1(s, 0, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(dft1(s, 12, {1.0}), std::invalid_argument);
    LagSeries bad = s;
    bad.value.pop_back();
    CHECK_THROWS_AS(dft1(bad, 5, {1.0}), std::invalid_argument);

    // lag errors add in quadrature, independent of frequency
    LagSeries with_se = geometric_series(0.5, 10, 1, 1.0);
    with_se.se.assign(10, 0.2);
    const Spectrum sp = dft1(with_se, 7, {0.3, 2.9});
    CHECK(sp.se[0] == doctest::Approx(0.2 * std::sqrt(6.0)));
    CHECK(sp.se[1] == sp.se[0]);
}

TEST_CASE("default frequency grid oversamples the natural resolution by four") {
    const int n_f = 100;
    const double dt = 0.5;
    const std::vector<double> w = default_omega_grid(n_f, dt, 1.0, 2.0);
    const double step = 2.0 * M_PI / (n_f * dt) / 4.0;
    REQUIRE(w.size() >= 2);
    CHECK(w.front() == 1.0);
    CHECK(w.back() <= 2.0 + 0.5 * step);
    CHECK(w.back() >= 2.0 - step);
    for (std::size_t i = 1; i < w.size(); ++i)
        CHECK(w[i] - w[i - 1] == doctest::Approx(step));
    CHECK_THROWS_AS(default_omega_grid(10, 1.0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("triple transform of a separable grid factorizes") {
    Corr4Grid g;
    g.n_f2 = 6;
    g.n_f1 = 4;
    g.dt = 0.7;
    const double A = 0.9, B = 0.8, C = 0.85;
    for (int u = 1; u <= g.n_f2; ++u)
        for (int v = 1; v <= g.n_f1; ++v)
            for (int w = 1; w <= g.n_f2; ++w) {
                g.lags.push_back({u, v, w});
                g.value.push_back(std::pow(A, u) * std::pow(B, v) * std::pow(C, w));
            }
    const double w1 = 0.4, w2 = -0.9, w3 = 1.3;
    const Dft3Value got = dft3(g, w1, w2, w3);
    auto one_sum = [&](double base, double wk, int nmax) {
        cplx acc(0, 0);
        for (int n = 1; n <= nmax; ++n)
            acc += std::pow(base, n) * std::exp(cplx(0.0, wk * n * g.dt));
        return acc;
    };
    const cplx want =
        one_sum(A, w1, g.n_f2) * one_sum(B, w2, g.n_f1) * one_sum(C, w3, g.n_f2);
    CHECK(std::abs(got.value - want) < 1e-11);
}

TEST_CASE("fourier lag counts resolve the analytic decay rates") {
    const SimParams p = params(0.2, 0.3, 1e-3, 1.0);
    const double gm = gamma_M(p);
    CHECK(nf_2nd(p.gamma0 + gm, p.tau_I) == 460);
    const NfPair nf = nf_4th(p.gamma0, gm, p.tau_I);
    CHECK(nf.n_f2 == 185);
    CHECK(nf.n_f1 == 102);
    // explicit kappa override
    CHECK(nf_2nd(0.5, 1.0, 2.0) == 4);
    CHECK_THROWS_AS(nf_2nd(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(nf_4th(0.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("spectrum of the analytic series saturates the resonance value") {
    // 1-D: closed-form series including the equal-time term, evaluated at
    // resonance, against 2 gamma_M / Gamma plus the flat noise pedestal
    const SimParams p = params(0.2, 0.3, 1e-3, 1.0);
    const NoiseModel white = WhiteNoise{0.5};
    const double L2 = std::pow(coherence_factor(white, p.tau_I), 2);
    const double gm = gamma_M(p);
    const int n_f = nf_2nd(p.gamma0 + gm, p.tau_I);

    LagSeries s;
    s.dt = p.tau_I;
    s.lag.push_back(0);
    s.value.push_back(L2 * (std::pow(std::sin(p.alpha()), 2) +
                            phase_variance(white, p.tau_I)));
    for (int n = 1; n < n_f; ++n) {
        s.lag.push_back(n);
        s.value.push_back(closedform_G2(n, p, white));
    }
    const Spectrum sp = dft1(s, n_f, {p.omega0});
    const double want = g2_resonance(p, L2, 0.5);
    CHECK(sp.value[0].real() == doctest::Approx(want).epsilon(0.05));
    CHECK(std::abs(sp.value[0].imag()) < 0.05 * want);

    // 3-D: closed-form grid at (w0, 0, w0); the doubly resonant outer sums
    // make the real part negative, so the magnitude carries the signal
    const SimParams p4 = params(0.5, 0.3, 0.0, 1.0);
    const double gm4 = gamma_M(p4);
    const NfPair nf = nf_4th(p4.gamma0, gm4, p4.tau_I);
    Corr4Grid grid;
    grid.n_f2 = nf.n_f2;
    grid.n_f1 = nf.n_f1;
    grid.dt = 2.0 * p4.tau_I;
    for (int u = 1; u <= nf.n_f2; ++u)
        for (int v = 1; v <= nf.n_f1; ++v)
            for (int w = 1; w <= nf.n_f2; ++w) {
                grid.lags.push_back({u, v, w});
                grid.value.push_back(closedform_G4(u, v, w, p4, NoNoise{}));
            }
    const Dft3Value res = dft3(grid, p4.omega0, 0.0, p4.omega0);
    CHECK(res.value.real() < 0.0);
    CHECK(std::abs(res.value) == doctest::Approx(g4_resonance(p4, 1.0)).epsilon(0.35));
}

TEST_CASE("resonance formula shapes") {
    const SimParams p = params(0.3, 1.0, 0.02, 0.8);
    const double gm = gamma_M(p);
    CHECK(g2_resonance(p, 0.9, 1.5) ==
          doctest::Approx(0.9 * 2.0 * gm / (0.02 + gm) + 0.9 * 0.8 * 1.5));
    const double frac = gm / (gm + 0.02);
    CHECK(g4_resonance(p, 0.9) ==
          doctest::Approx(0.9 * frac * frac / (4.0 * gm * 0.8)));
}

TEST_CASE("shot-noise scales and the total uncertainty") {
    CHECK(shot_noise_2nd(460.0, 1e6) == doctest::Approx(std::sqrt(4.6e-4)));
    CHECK(shot_noise_4th(185.0, 102.0, 4e5, 1.0) ==
          doctest::Approx(185.0 * std::sqrt(102.0) * std::sqrt(2.0 / 4e5)));
    CHECK_THROWS_AS(shot_noise_2nd(0.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(shot_noise_4th(1.0, 1.0, 0.0, 1.0), std::invalid_argument);

    // run-to-run spectral-density drift dominates when the shot noise is small
    CHECK(total_uncertainty_2nd(0.0, 0.9, 0.5, 2.0) ==
          doctest::Approx(0.81 * 0.5 * 2.0));
    CHECK(total_uncertainty_2nd(0.1, 0.9, 0.5, 2.0, 0.0) == doctest::Approx(0.1));
    CHECK(total_uncertainty_2nd(3e-4, 1.0, 1.0, 1e-3) ==
          doctest::Approx(std::sqrt(9e-8 + 1e-6)));
}

TEST_CASE("snr expressions invert their required acquisition times") {
    // by construction, evaluating the snr at the required time gives one
    const double gm = 0.12, g0 = 0.05, S = 0.8, a = 1.3;
    const double T2 = required_T_2nd(gm, g0, S, a);
    REQUIRE(std::isfinite(T2));
    CHECK(snr_2nd(gm, g0, S, a, T2) == doctest::Approx(1.0).epsilon(1e-12));
    const double T4 = required_T_4th(gm, g0, S, a);
    CHECK(snr_4th(gm, g0, S, a, T4) == doctest::Approx(1.0).epsilon(1e-12));

    // snr grows with acquisition time and falls with noise
    CHECK(snr_2nd(gm, g0, S, a, 2.0 * T2) > 1.0);
    CHECK(snr_4th(gm, g0, 2.0 * S, a, T4) < 1.0);
}

TEST_CASE("second-order snr never exceeds the detectability ceiling") {
    const double g0 = 0.01, S = 2.0, a = 1.0;
    const double bound = snr_2nd_bound(a, g0, S);
    CHECK(bound == doctest::Approx(a * a / (2.0 * g0 * S)));
    double sup = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double gm = std::pow(10.0, -4.0 + 5.0 * i / 199.0);
        sup = std::max(sup, snr_2nd(gm, g0, S, a, 1e12));
    }
    CHECK(sup <= bound * (1.0 + 1e-6));
    // no intrinsic dephasing: unbounded detectability
    CHECK(std::isinf(snr_2nd_bound(a, 0.0, S)));
}
