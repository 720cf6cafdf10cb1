#pragma once

// Conditional sensor-target evolutions, Kraus pairs, the four measurement
// superoperators M0/Mx/My/Mz, and the dephasing channels. Everything exists
// in two build modes:
//   Exact     - conditional unitaries U_pm = exp[-i(w0 Iz pm a Ix) tau] built
//               with the closed-form 2x2 exponential; superoperators are the
//               exact Kraus combinations.
//   ShortTime - the factorized small-tau forms U_pm ~ e^{-i phi Iz} e^{mp i alpha Ix}
//               and the corresponding closed-form transfer matrices.
// Exact is the ground truth; ShortTime reproduces the usual analytic formulas.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qusense/pauli.hpp"

namespace qusense {

enum class Mode { Exact, ShortTime };

struct SimParams {
    double a = 0.0;       // sensor-target coupling (rad / time)
    double omega0 = 0.0;  // target splitting (rad / time)
    double gamma0 = 0.0;  // intrinsic target dephasing rate (1 / time)
    double tau_I = 1.0;   // interaction time per shot

    double alpha() const { return a * tau_I; }
    double phi() const { return omega0 * tau_I; }

    void check() const {
        if (!(a >= 0.0)) throw std::invalid_argument("params.a must be >= 0");
        if (!(tau_I > 0.0)) throw std::invalid_argument("params.tau_I must be > 0");
        if (!(gamma0 >= 0.0)) throw std::invalid_argument("params.gamma0 must be >= 0");
    }
};

// measurement-induced dephasing rate along x
inline double gamma_M(double a, double tau_I) {
    if (!(tau_I > 0.0)) throw std::invalid_argument("gamma_M: tau_I must be > 0");
    const double s = std::sin(a * tau_I);
    return s * s / (4.0 * tau_I);
}
inline double gamma_M(const SimParams& p) { return gamma_M(p.a, p.tau_I); }

// sup over tau of gamma_M at fixed coupling: a * max_x sin^2(x)/(4x).
// The maximum sits at the root of tan x = 2x.
inline constexpr double kGammaMaxArg = 1.1655611852067187;
inline constexpr double kGammaMaxFactor = 0.18115283844417712;
inline double gamma_M_max(double a) { return kGammaMaxFactor * a; }

struct Mat2 {
    // row-major 2x2 complex
    std::array<cplx, 4> e{};

    static Mat2 identity() { return {{cplx(1, 0), 0, 0, cplx(1, 0)}}; }

    Mat2 operator*(const Mat2& o) const {
        return {{e[0] * o.e[0] + e[1] * o.e[2], e[0] * o.e[1] + e[1] * o.e[3],
                 e[2] * o.e[0] + e[3] * o.e[2], e[2] * o.e[1] + e[3] * o.e[3]}};
    }
    Mat2 operator+(const Mat2& o) const {
        return {{e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2], e[3] + o.e[3]}};
    }
    Mat2 operator-(const Mat2& o) const {
        return {{e[0] - o.e[0], e[1] - o.e[1], e[2] - o.e[2], e[3] - o.e[3]}};
    }
    Mat2 operator*(cplx s) const { return {{e[0] * s, e[1] * s, e[2] * s, e[3] * s}}; }
    Mat2 dagger() const {
        return {{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}};
    }
    double max_abs_diff(const Mat2& o) const {
        double d = 0.0;
        for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(e[i] - o.e[i]));
        return d;
    }
};

// exp(-i (n . s) theta / 2) = cos(theta/2) 1 - i sin(theta/2) (nhat . s)
inline Mat2 su2_exp(double nx, double ny, double nz, double theta) {
    const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (n == 0.0) return Mat2::identity();
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    const cplx i(0, 1);
    const double ux = nx / n, uy = ny / n, uz = nz / n;
    Mat2 m;
    m.e[0] = c - i * s * uz;
    m.e[1] = -i * s * ux - s * uy;
    m.e[2] = -i * s * ux + s * uy;
    m.e[3] = c + i * s * uz;
    return m;
}

// U_pm = exp[-i (w0 Iz + sign * a Ix) tau]
inline Mat2 conditional_unitary(int sign, const SimParams& p, Mode mode) {
    if (mode == Mode::Exact) {
        // generator (w0 sz + sign a sx)/2, rotation angle |h| tau
        const double hx = sign * p.a, hz = p.omega0;
        const double h = std::sqrt(hx * hx + hz * hz);
        return su2_exp(hx, 0.0, hz, h * p.tau_I);
    }
    const Mat2 uz = su2_exp(0, 0, 1, p.phi());
    const Mat2 ux = su2_exp(1, 0, 0, sign * p.alpha());
    return uz * ux;
}

// decompose a 2x2 operator onto {1, sx, sy, sz}: c_i = Tr[s_i M] / 2
inline PauliOp pauli_decompose(const Mat2& M) {
    PauliOp p;
    p.c0 = 0.5 * (M.e[0] + M.e[3]);
    p.cx = 0.5 * (M.e[1] + M.e[2]);
    p.cy = 0.5 * cplx(0, 1) * (M.e[1] - M.e[2]);
    p.cz = 0.5 * (M.e[0] - M.e[3]);
    return p;
}

inline Mat2 pauli_compose(const PauliOp& p) {
    Mat2 m;
    m.e[0] = p.c0 + p.cz;
    m.e[1] = p.cx - cplx(0, 1) * p.cy;
    m.e[2] = p.cx + cplx(0, 1) * p.cy;
    m.e[3] = p.c0 - p.cz;
    return m;
}

// transfer matrix of rho -> A rho B^dagger, keeping only the real part
// (all channel combinations used here have exactly real transfer matrices;
// the imaginary residue is checked in tests, not silently discarded in debug)
inline SuperOp ptm_sandwich(const Mat2& A, const Mat2& B) {
    static const std::array<PauliOp, 4> basis{PauliOp::id(), PauliOp::sx(),
                                              PauliOp::sy(), PauliOp::sz()};
    SuperOp T;
    for (int j = 0; j < 4; ++j) {
        const Mat2 col = A * pauli_compose(basis[j]) * B.dagger();
        const PauliOp d = pauli_decompose(col);
        T.at(0, j) = d.c0.real();
        T.at(1, j) = d.cx.real();
        T.at(2, j) = d.cy.real();
        T.at(3, j) = d.cz.real();
    }
    return T;
}

inline double ptm_sandwich_imag_residue(const Mat2& A, const Mat2& B) {
    static const std::array<PauliOp, 4> basis{PauliOp::id(), PauliOp::sx(),
                                              PauliOp::sy(), PauliOp::sz()};
    double r = 0.0;
    for (int j = 0; j < 4; ++j) {
        const PauliOp d = pauli_decompose(A * pauli_compose(basis[j]) * B.dagger());
        r = std::max(r, d.max_imag());
    }
    return r;
}

// Bloch rotation of states about z by +phi (x -> cos phi x + sin phi y);
// Heisenberg operators rotate the opposite way
inline SuperOp u_phi(double phi) {
    SuperOp s = SuperOp::identity();
    const double c = std::cos(phi), sn = std::sin(phi);
    s.at(1, 1) = c;  s.at(1, 2) = -sn;
    s.at(2, 1) = sn; s.at(2, 2) = c;
    return s;
}

enum class MeasAxis { M0, Mx, My, Mz };

// The four basic measurement superoperators. In the short-time mode:
//   M0 = U_phi [cos a + 2 sin^2(a/2) (2Ix^+)^2]      (idle / summed channel)
//   Mx = U_phi [1 - 2 sin^2(a/2) (2Ix^+)^2]
//   My = U_phi (2Ix^+) sin a
//   Mz = U_phi (2Ix^-) sin a
// (2Ix^+)^2 projects onto span{1, sx}, so M0 and Mx are diagonal up to the
// final rotation. In the exact mode they are the Kraus-pair combinations of
// the conditional unitaries.
inline SuperOp superop_M(MeasAxis axis, const SimParams& p, Mode mode) {
    if (mode == Mode::Exact) {
        const Mat2 up = conditional_unitary(+1, p, Mode::Exact);
        const Mat2 um = conditional_unitary(-1, p, Mode::Exact);
        switch (axis) {
            case MeasAxis::M0:
                return (ptm_sandwich(up, up) + ptm_sandwich(um, um)) * 0.5;
            case MeasAxis::Mx:
                return (ptm_sandwich(um, up) + ptm_sandwich(up, um)) * 0.5;
            case MeasAxis::My: {
                // (U- rho U+^dag - U+ rho U-^dag) / (2i): expand via the
                // identity (X - X^dag)/(2i) on the sandwich pair; the transfer
                // matrix of rho -> (A rho B^dag - B rho A^dag)/(2i) is real.
                static const std::array<PauliOp, 4> basis{
                    PauliOp::id(), PauliOp::sx(), PauliOp::sy(), PauliOp::sz()};
                SuperOp T;
                for (int j = 0; j < 4; ++j) {
                    const Mat2 x = um * pauli_compose(basis[j]) * up.dagger();
                    const Mat2 y = up * pauli_compose(basis[j]) * um.dagger();
                    const PauliOp d = pauli_decompose((x - y) * cplx(0.0, -0.5));
                    T.at(0, j) = d.c0.real();
                    T.at(1, j) = d.cx.real();
                    T.at(2, j) = d.cy.real();
                    T.at(3, j) = d.cz.real();
                }
                return T;
            }
            case MeasAxis::Mz:
                return (ptm_sandwich(up, up) - ptm_sandwich(um, um)) * 0.5;
        }
    }
    const double al = p.alpha();
    const SuperOp rot = u_phi(p.phi());
    switch (axis) {
        case MeasAxis::M0:
            return compose(rot, SuperOp::diagonal(1, 1, std::cos(al), std::cos(al)));
        case MeasAxis::Mx:
            return compose(rot, SuperOp::diagonal(std::cos(al), std::cos(al), 1, 1));
        case MeasAxis::My:
            return compose(rot, anti_half(PauliOp::sx()) * std::sin(al));
        case MeasAxis::Mz:
            return compose(rot, comm_half(PauliOp::sx()) * std::sin(al));
    }
    throw std::logic_error("unreachable");
}

// y-readout difference superoperator with the classical noise phase mixed in:
// M_{y,phi_m} = cos(phi_m) My + sin(phi_m) Mx. The identity is exact in both
// build modes.
inline SuperOp superop_My_noise(const SuperOp& Mx, const SuperOp& My, double phi_m) {
    return My * std::cos(phi_m) + Mx * std::sin(phi_m);
}

// Pure dephasing along z: transverse components shrink by e^{-2 gamma tau}.
inline SuperOp dephasing_lz(double gamma, double tau) {
    const double s = std::exp(-2.0 * gamma * tau);
    return SuperOp::diagonal(1.0, s, s, 1.0);
}

// Back-action dephasing along x in its closed short-time form:
// keeps Bloch-x, scales y and z by cos(alpha).
inline SuperOp dephasing_lx(double alpha) {
    const double c = std::cos(alpha);
    return SuperOp::diagonal(1.0, 1.0, c, c);
}

// One discarded shot: measurement back-action plus intrinsic dephasing over
// tau_I. The intrinsic channel runs at gamma0/2 so a single shot costs the
// transverse coherence a factor e^{-gamma0 tau_I}.
inline SuperOp idle_step(const SimParams& p, Mode mode) {
    return compose(superop_M(MeasAxis::M0, p, mode),
                   dephasing_lz(0.5 * p.gamma0, p.tau_I));
}

struct KrausPair {
    Mat2 plus, minus;
};

// Kraus operators for readout axis beta in {x, y, z} with noise phase phi_m:
//   y: (e^{-i phi/2} U+ mp i e^{+i phi/2} U-) / 2
//   z: e^{mp i phi/2} U_pm / sqrt(2)
//   x: (e^{-i phi/2} U+ pm e^{+i phi/2} U-) / 2
inline KrausPair kraus_pair(char beta, const SimParams& p, Mode mode,
                            double phi_m = 0.0) {
    const Mat2 up = conditional_unitary(+1, p, mode);
    const Mat2 um = conditional_unitary(-1, p, mode);
    const cplx em = std::exp(cplx(0, -0.5 * phi_m));
    const cplx ep = std::exp(cplx(0, +0.5 * phi_m));
    const cplx i(0, 1);
    KrausPair k;
    switch (beta) {
        case 'y':
            k.plus = (up * em - um * (i * ep)) * cplx(0.5, 0);
            k.minus = (up * em + um * (i * ep)) * cplx(0.5, 0);
            break;
        case 'z':
            k.plus = up * (em * cplx(1.0 / std::sqrt(2.0), 0));
            k.minus = um * (ep * cplx(1.0 / std::sqrt(2.0), 0));
            break;
        case 'x':
            k.plus = (up * em + um * ep) * cplx(0.5, 0);
            k.minus = (up * em - um * ep) * cplx(0.5, 0);
            break;
        default:
            throw std::invalid_argument("kraus_pair: axis must be x, y or z");
    }
    return k;
}

}  // namespace qusense
