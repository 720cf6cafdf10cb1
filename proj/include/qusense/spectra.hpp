#pragma once

// One-sided discrete Fourier transforms of lag series and lag grids, the
// analytic resonance values of the 1-D and 3-D spectra, shot-noise and total
// uncertainty models, and the closed-form SNR expressions. Conventions:
// the 1-D transform sums exactly the lags the series carries below N_F
// (analytic series include lag 0, record-based series start at lag 1 because
// the same-shot product is pure shot noise), phases are e^{+i omega n dt},
// no windowing or padding.

#include <complex>
#include <vector>

#include "qusense/dynamics.hpp"
#include "qusense/estimators.hpp"

namespace qusense {

struct Spectrum {
    std::vector<double> omega;
    std::vector<cplx> value;
    std::vector<double> se;  // quadrature-summed lag errors, frequency independent
    int n_f = 0;
    double dt = 0.0;
};

Spectrum dft1(const LagSeries& series, int n_f, const std::vector<double>& omegas);

// default frequency grid: 4x oversampling of the natural resolution
// 2 pi / (n_f dt), covering [omega_lo, omega_hi]
std::vector<double> default_omega_grid(int n_f, double dt, double omega_lo,
                                       double omega_hi);

struct Dft3Value {
    cplx value;
    double se = 0.0;
};

// triple one-sided sum over the (u, v, w) grid with phases
// e^{i (w1 u + w2 v + w3 w) dt}; the resonance of interest is (w0, 0, w0)
Dft3Value dft3(const Corr4Grid& grid, double w1, double w2, double w3);

// numbers of Fourier lags resolving the resonance: the 1-D spectrum keeps
// roughly kappa decay times of the correlation, the 3-D grid keeps kappa
// decay times of each segment rate (outer 2(gamma0+gamma_M), middle 4 gamma_M,
// both on the 2 tau_I cycle clock)
int nf_2nd(double gamma_total, double tau_I, double kappa = 5.0);
struct NfPair {
    int n_f2 = 0, n_f1 = 0;
};
NfPair nf_4th(double gamma0, double gamma_m, double tau_I, double kappa = 4.0);

// analytic resonance values (magnitudes) for the closed-form correlations
double g2_resonance(const SimParams& p, double l_c2, double S_C);
double g4_resonance(const SimParams& p, double l_c2);

// shot noise at the resonance: sqrt(N_F / M) for the 1-D spectrum and
// N_F2 sqrt(N_F1) sqrt(2 tau_I / T) for the 3-D spectrum
double shot_noise_2nd(double n_f, double m_windows);
double shot_noise_4th(double n_f2, double n_f1, double T, double tau_I);

// sqrt(sigma_M^2 + L_C^4 tau_I^2 dS_C^2); dS_C < 0 selects the default
// run-to-run spectral uncertainty dS_C = S_C
double total_uncertainty_2nd(double sigma_m, double l_c, double tau_I, double S_C,
                             double dS_C = -1.0);

// closed-form signal-to-noise ratios at acquisition time T
double snr_2nd(double gamma_m, double gamma0, double S_C, double a, double T);
double snr_4th(double gamma_m, double gamma0, double S_C, double a, double T);
inline double snr_2nd(const SimParams& p, double S_C, double T) {
    return snr_2nd(gamma_M(p), p.gamma0, S_C, p.a, T);
}
inline double snr_4th(const SimParams& p, double S_C, double T) {
    return snr_4th(gamma_M(p), p.gamma0, S_C, p.a, T);
}

// detectability ceiling of the second-order spectrum, a^2 / (2 gamma0 S_C)
double snr_2nd_bound(double a, double gamma0, double S_C);

}  // namespace qusense
