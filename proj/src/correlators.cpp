#include "qusense/correlators.hpp"

#include <cmath>
#include <stdexcept>

namespace qusense {

MeasOps MeasOps::build(const SimParams& p, Mode mode) {
    MeasOps ops;
    ops.m0 = superop_M(MeasAxis::M0, p, mode);
    ops.mx = superop_M(MeasAxis::Mx, p, mode);
    ops.my = superop_M(MeasAxis::My, p, mode);
    ops.mz = superop_M(MeasAxis::Mz, p, mode);
    ops.lz = dephasing_lz(0.5 * p.gamma0, p.tau_I);
    ops.idle = compose(ops.m0, ops.lz);
    return ops;
}

static double trace_row(const SuperOp& outer, const PauliOp& state) {
    // Tr[outer * state] = 2 * (outer state).c0, real for the operators here
    const PauliOp out = outer.apply(state);
    return out.trace().real();
}

G2Kernels g2_kernels(const MeasOps& ops, int max_lag, const PauliOp& rho) {
    if (max_lag < 1) throw std::invalid_argument("g2_kernels: max_lag must be >= 1");
    G2Kernels k;
    k.yy.reserve(max_lag);
    k.yx.reserve(max_lag);
    k.xy.reserve(max_lag);
    k.xx.reserve(max_lag);
    PauliOp uy = ops.my.apply(rho);  // inner readout y
    PauliOp ux = ops.mx.apply(rho);  // inner readout x
    for (int n = 1; n <= max_lag; ++n) {
        if (n > 1) {
            uy = ops.idle.apply(uy);
            ux = ops.idle.apply(ux);
        }
        k.yy.push_back(trace_row(ops.my, uy));
        k.yx.push_back(trace_row(ops.my, ux));
        k.xy.push_back(trace_row(ops.mx, uy));
        k.xx.push_back(trace_row(ops.mx, ux));
    }
    return k;
}

std::vector<double> exact_G2_series(int max_lag, const SimParams& p,
                                    const NoiseModel& noise, Mode mode) {
    p.check();
    const MeasOps ops = MeasOps::build(p, mode);
    const G2Kernels k = g2_kernels(ops, max_lag, PauliOp::rho_mixed());
    std::vector<double> g(max_lag);
    for (int n = 1; n <= max_lag; ++n) {
        const PairFactors f = phase_pair_factors(noise, p.tau_I, n, 0);
        // later shot first index: <f_p(phi_{m+n}) f_q(phi_m)> K_pq
        g[n - 1] = f.coscos * k.yy[n - 1] + f.cossin * k.yx[n - 1] +
                   f.sincos * k.xy[n - 1] + f.sinsin * k.xx[n - 1];
    }
    return g;
}

double exact_G2(int n, const SimParams& p, const NoiseModel& noise, Mode mode) {
    return exact_G2_series(n, p, noise, mode)[n - 1];
}

double exact_G2_path(int n, const SimParams& p, const NoisePath& path, Mode mode) {
    if (n < 1) throw std::invalid_argument("exact_G2_path: lag must be >= 1");
    if (path.phi.size() <= static_cast<std::size_t>(n))
        throw std::invalid_argument("exact_G2_path: path shorter than lag");
    const MeasOps ops = MeasOps::build(p, mode);
    const G2Kernels k = g2_kernels(ops, n, PauliOp::rho_mixed());
    const double kyy = k.yy[n - 1], kyx = k.yx[n - 1], kxy = k.xy[n - 1],
                 kxx = k.xx[n - 1];
    double acc = 0.0;
    const std::size_t wins = path.phi.size() - n;
    for (std::size_t m = 0; m < wins; ++m) {
        const double cl = std::cos(path.phi[m + n]), sl = std::sin(path.phi[m + n]);
        const double ce = std::cos(path.phi[m]), se = std::sin(path.phi[m]);
        acc += cl * ce * kyy + cl * se * kyx + sl * ce * kxy + sl * se * kxx;
    }
    return acc / static_cast<double>(wins);
}

double g4_kernel(const MeasOps& ops, int u, int v, int w, int p_axis, int q_axis,
                 const PauliOp& rho) {
    if (u < 1 || v < 1 || w < 1)
        throw std::invalid_argument("g4 lags must be >= 1");
    const SuperOp& inner = (q_axis == 0) ? ops.my : ops.mx;
    const SuperOp& outer = (p_axis == 0) ? ops.my : ops.mx;
    PauliOp state = inner.apply(rho);
    for (int i = 0; i < 2 * w; ++i) state = ops.idle.apply(state);
    state = ops.mz.apply(state);
    for (int i = 0; i < 2 * v - 1; ++i) state = ops.idle.apply(state);
    state = ops.mz.apply(state);
    for (int i = 0; i < 2 * u - 2; ++i) state = ops.idle.apply(state);
    return trace_row(outer, state);
}

double exact_G4(int u, int v, int w, const SimParams& p, const NoiseModel& noise,
                Mode mode) {
    p.check();
    const MeasOps ops = MeasOps::build(p, mode);
    const PauliOp rho = PauliOp::rho_mixed();
    const int shot_lag = 2 * (u + v + w);
    const PairFactors f = phase_pair_factors(noise, p.tau_I, shot_lag, 0);
    double g = f.coscos * g4_kernel(ops, u, v, w, 0, 0, rho);
    // the x-endpoint kernels vanish for rho = 1/2 but are kept for generality
    if (f.sinsin != 0.0) g += f.sinsin * g4_kernel(ops, u, v, w, 1, 1, rho);
    if (f.sincos != 0.0) g += f.sincos * g4_kernel(ops, u, v, w, 1, 0, rho);
    if (f.cossin != 0.0) g += f.cossin * g4_kernel(ops, u, v, w, 0, 1, rho);
    return g;
}

double exact_G4_path(int u, int v, int w, const SimParams& p, const NoisePath& path,
                     Mode mode) {
    const MeasOps ops = MeasOps::build(p, mode);
    const PauliOp rho = PauliOp::rho_mixed();
    const double kyy = g4_kernel(ops, u, v, w, 0, 0, rho);
    const double kxx = g4_kernel(ops, u, v, w, 1, 1, rho);
    const double kxy = g4_kernel(ops, u, v, w, 1, 0, rho);
    const double kyx = g4_kernel(ops, u, v, w, 0, 1, rho);
    const int shot_lag = 2 * (u + v + w);
    if (path.phi.size() <= static_cast<std::size_t>(shot_lag))
        throw std::invalid_argument("exact_G4_path: path shorter than total lag");
    double acc = 0.0;
    const std::size_t wins = path.phi.size() - shot_lag;
    for (std::size_t m = 0; m < wins; ++m) {
        const double cl = std::cos(path.phi[m + shot_lag]),
                     sl = std::sin(path.phi[m + shot_lag]);
        const double ce = std::cos(path.phi[m]), se = std::sin(path.phi[m]);
        acc += cl * ce * kyy + sl * se * kxx + sl * ce * kxy + cl * se * kyx;
    }
    return acc / static_cast<double>(wins);
}

double closedform_G2(int n, const SimParams& p, const NoiseModel& noise) {
    if (n < 1) throw std::invalid_argument("closedform_G2: lag must be >= 1");
    const double L2 = std::pow(coherence_factor(noise, p.tau_I), 2);
    const double rate = p.gamma0 + gamma_M(p);
    const double al = p.alpha();
    const double signal = std::sin(al) * std::sin(al) * std::cos(n * p.phi()) *
                          std::exp(-rate * n * p.tau_I);
    return L2 * signal + L2 * phase_pair_cov(noise, n, p.tau_I);
}

double closedform_G4(int u, int v, int w, const SimParams& p,
                     const NoiseModel& noise) {
    if (u < 1 || v < 1 || w < 1)
        throw std::invalid_argument("closedform_G4: lags must be >= 1");
    const double L2 = std::pow(coherence_factor(noise, p.tau_I), 2);
    const double gm = gamma_M(p);
    const double rate = p.gamma0 + gm;
    const double s = std::sin(p.alpha());
    const double s4 = s * s * s * s;
    // shot separations on the alternating sequence: the y..z gaps span an odd
    // number of shots, the z..z gap an even number
    const double t_jk = (2 * u - 1) * p.tau_I;
    const double t_km = (2 * v) * p.tau_I;
    const double t_mn = (2 * w + 1) * p.tau_I;
    return L2 * s4 * std::sin(p.omega0 * t_jk) * std::sin(p.omega0 * t_mn) *
           std::exp(-rate * t_jk - 2.0 * gm * t_km - rate * t_mn);
}

}  // namespace qusense
