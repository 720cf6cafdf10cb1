#include "qusense/spectra.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qusense {

Spectrum dft1(const LagSeries& series, int n_f, const std::vector<double>& omegas) {
    if (n_f < 1) throw std::invalid_argument("dft1: n_f must be >= 1");
    if (series.lag.size() != series.value.size())
        throw std::invalid_argument("dft1: malformed series");
    if (series.lag.empty() || series.lag.back() < n_f - 1)
        throw std::invalid_argument("dft1: series shorter than n_f");
    Spectrum sp;
    sp.n_f = n_f;
    sp.dt = series.dt;
    sp.omega.assign(omegas.begin(), omegas.end());
    sp.value.resize(omegas.size());
    sp.se.resize(omegas.size());
    double var = 0.0;
    bool have_se = !series.se.empty();
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i < series.lag.size(); ++i) {
            const int n = series.lag[i];
            if (n >= n_f) break;
            acc += series.value[i] *
                   std::exp(cplx(0.0, omegas[k] * n * series.dt));
            if (k == 0 && have_se && std::isfinite(series.se[i]))
                var += series.se[i] * series.se[i];
        }
        sp.value[k] = acc;
        sp.se[k] = have_se ? std::sqrt(var) : 0.0;
    }
    return sp;
}

std::vector<double> default_omega_grid(int n_f, double dt, double omega_lo,
                                       double omega_hi) {
    if (!(omega_hi > omega_lo))
        throw std::invalid_argument("omega grid: empty range");
    const double step = 2.0 * M_PI / (static_cast<double>(n_f) * dt) / 4.0;
    std::vector<double> w;
    for (double x = omega_lo; x <= omega_hi + 0.5 * step; x += step)
        w.push_back(x);
    return w;
}

Dft3Value dft3(const Corr4Grid& grid, double w1, double w2, double w3) {
    Dft3Value out;
    cplx acc(0.0, 0.0);
    double var = 0.0;
    for (std::size_t k = 0; k < grid.lags.size(); ++k) {
        const auto& l = grid.lags[k];
        const double phase = (w1 * l[0] + w2 * l[1] + w3 * l[2]) * grid.dt;
        acc += grid.value[k] * std::exp(cplx(0.0, phase));
        if (k < grid.se.size() && std::isfinite(grid.se[k]))
            var += grid.se[k] * grid.se[k];
    }
    out.value = acc;
    out.se = std::sqrt(var);
    return out;
}

int nf_2nd(double gamma_total, double tau_I, double kappa) {
    if (!(gamma_total > 0.0) || !(tau_I > 0.0))
        throw std::invalid_argument("nf_2nd: rates and tau_I must be positive");
    const long long n = std::llround(kappa / (gamma_total * tau_I));
    return n < 1 ? 1 : static_cast<int>(n);
}

NfPair nf_4th(double gamma0, double gamma_m, double tau_I, double kappa) {
    if (!(gamma_m > 0.0) || !(tau_I > 0.0))
        throw std::invalid_argument("nf_4th: gamma_m and tau_I must be positive");
    NfPair p;
    const double dt = 2.0 * tau_I;
    p.n_f2 = static_cast<int>(std::ceil(kappa / ((gamma0 + gamma_m) * dt)));
    p.n_f1 = static_cast<int>(std::ceil(kappa / (2.0 * gamma_m * dt)));
    if (p.n_f2 < 1) p.n_f2 = 1;
    if (p.n_f1 < 1) p.n_f1 = 1;
    return p;
}

double g2_resonance(const SimParams& p, double l_c2, double S_C) {
    const double gm = gamma_M(p);
    return l_c2 * 2.0 * gm / (p.gamma0 + gm) + l_c2 * p.tau_I * S_C;
}

double g4_resonance(const SimParams& p, double l_c2) {
    const double gm = gamma_M(p);
    const double frac = gm / (gm + p.gamma0);
    return l_c2 * frac * frac / (4.0 * gm * p.tau_I);
}

double shot_noise_2nd(double n_f, double m_windows) {
    if (!(n_f >= 1.0) || !(m_windows >= 1.0))
        throw std::invalid_argument("shot_noise_2nd: counts must be >= 1");
    return std::sqrt(n_f / m_windows);
}

double shot_noise_4th(double n_f2, double n_f1, double T, double tau_I) {
    if (!(n_f2 >= 1.0) || !(n_f1 >= 1.0))
        throw std::invalid_argument("shot_noise_4th: counts must be >= 1");
    if (!(T > 0.0) || !(tau_I > 0.0))
        throw std::invalid_argument("shot_noise_4th: T and tau_I must be positive");
    return n_f2 * std::sqrt(n_f1) * std::sqrt(2.0 * tau_I / T);
}

double total_uncertainty_2nd(double sigma_m, double l_c, double tau_I, double S_C,
                             double dS_C) {
    if (dS_C < 0.0) dS_C = S_C;
    const double l2 = l_c * l_c;
    return std::sqrt(sigma_m * sigma_m + l2 * l2 * tau_I * tau_I * dS_C * dS_C);
}

double snr_2nd(double gamma_m, double gamma0, double S_C, double a, double T) {
    if (!(gamma_m > 0.0) || !(T > 0.0))
        throw std::invalid_argument("snr_2nd: gamma_m and T must be positive");
    const double a2 = a * a;
    const double shot = (gamma0 + gamma_m) / (4.0 * gamma_m * gamma_m * T) *
                        std::exp(8.0 * gamma_m * S_C / a2);
    const double sys = 4.0 * (gamma0 + gamma_m) * (gamma0 + gamma_m) * S_C * S_C /
                       (a2 * a2);
    return 1.0 / std::sqrt(shot + sys);
}

double snr_4th(double gamma_m, double gamma0, double S_C, double a, double T) {
    if (!(gamma_m > 0.0) || !(T > 0.0))
        throw std::invalid_argument("snr_4th: gamma_m and T must be positive");
    return std::pow(gamma_m, 1.5) * std::sqrt(T) /
           (std::sqrt(2.0) * (gamma_m + gamma0)) *
           std::exp(-4.0 * gamma_m * S_C / (a * a));
}

double snr_2nd_bound(double a, double gamma0, double S_C) {
    const double d = 2.0 * gamma0 * S_C;
    if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
    return a * a / d;
}

}  // namespace qusense
