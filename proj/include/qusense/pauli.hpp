#pragma once

// Exact algebra of 2x2 operators in the Pauli basis and the superoperators
// acting on them. An operator A = c0*1 + cx*sx + cy*sy + cz*sz is stored as
// its four coefficients; products of Hermitian operators are generally not
// Hermitian, so coefficients are complex and Hermiticity is a checkable
// property rather than a type invariant. Superoperators are real 4x4
// transfer matrices on the coefficient vector (c0, cx, cy, cz).

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qusense {

using cplx = std::complex<double>;

struct PauliOp {
    cplx c0{}, cx{}, cy{}, cz{};

    static PauliOp id() { return {1.0, 0.0, 0.0, 0.0}; }
    static PauliOp sx() { return {0.0, 1.0, 0.0, 0.0}; }
    static PauliOp sy() { return {0.0, 0.0, 1.0, 0.0}; }
    static PauliOp sz() { return {0.0, 0.0, 0.0, 1.0}; }
    // spin operators I_k = s_k / 2
    static PauliOp ix() { return {0.0, 0.5, 0.0, 0.0}; }
    static PauliOp iy() { return {0.0, 0.0, 0.5, 0.0}; }
    static PauliOp iz() { return {0.0, 0.0, 0.0, 0.5}; }
    // maximally mixed state 1/2
    static PauliOp rho_mixed() { return {0.5, 0.0, 0.0, 0.0}; }

    cplx trace() const { return 2.0 * c0; }

    double max_imag() const {
        return std::max(std::max(std::abs(c0.imag()), std::abs(cx.imag())),
                        std::max(std::abs(cy.imag()), std::abs(cz.imag())));
    }
    bool is_hermitian(double tol = 1e-12) const { return max_imag() <= tol; }

    // Bloch radius of a density operator, |r| = 2*sqrt(cx^2+cy^2+cz^2)
    double bloch_radius() const {
        return 2.0 * std::sqrt(std::norm(cx) + std::norm(cy) + std::norm(cz));
    }

    PauliOp operator+(const PauliOp& o) const {
        return {c0 + o.c0, cx + o.cx, cy + o.cy, cz + o.cz};
    }
    PauliOp operator-(const PauliOp& o) const {
        return {c0 - o.c0, cx - o.cx, cy - o.cy, cz - o.cz};
    }
    PauliOp operator*(cplx s) const { return {c0 * s, cx * s, cy * s, cz * s}; }
    PauliOp operator*(double s) const { return {c0 * s, cx * s, cy * s, cz * s}; }
};

// Operator product via the Pauli multiplication rules:
// (a0 + a.s)(b0 + b.s) = a0 b0 + a.b + (a0 b + b0 a + i a x b).s
inline PauliOp pauli_mul(const PauliOp& A, const PauliOp& B) {
    const cplx i(0.0, 1.0);
    PauliOp r;
    r.c0 = A.c0 * B.c0 + A.cx * B.cx + A.cy * B.cy + A.cz * B.cz;
    r.cx = A.c0 * B.cx + B.c0 * A.cx + i * (A.cy * B.cz - A.cz * B.cy);
    r.cy = A.c0 * B.cy + B.c0 * A.cy + i * (A.cz * B.cx - A.cx * B.cz);
    r.cz = A.c0 * B.cz + B.c0 * A.cz + i * (A.cx * B.cy - A.cy * B.cx);
    return r;
}

struct SuperOp {
    // row-major 4x4 acting on (c0, cx, cy, cz)
    std::array<double, 16> m{};

    static SuperOp identity() {
        SuperOp s;
        s.m[0] = s.m[5] = s.m[10] = s.m[15] = 1.0;
        return s;
    }
    static SuperOp zero() { return SuperOp{}; }
    static SuperOp diagonal(double d0, double dx, double dy, double dz) {
        SuperOp s;
        s.m[0] = d0; s.m[5] = dx; s.m[10] = dy; s.m[15] = dz;
        return s;
    }

    double& at(int r, int c) { return m[4 * r + c]; }
    double at(int r, int c) const { return m[4 * r + c]; }

    PauliOp apply(const PauliOp& p) const {
        const std::array<cplx, 4> v{p.c0, p.cx, p.cy, p.cz};
        std::array<cplx, 4> w{};
        for (int r = 0; r < 4; ++r) {
            cplx acc = 0.0;
            for (int c = 0; c < 4; ++c) acc += m[4 * r + c] * v[c];
            w[r] = acc;
        }
        return {w[0], w[1], w[2], w[3]};
    }

    // real fast path used by the Monte Carlo inner loop
    std::array<double, 4> apply(const std::array<double, 4>& v) const {
        std::array<double, 4> w{};
        for (int r = 0; r < 4; ++r)
            w[r] = m[4 * r] * v[0] + m[4 * r + 1] * v[1] + m[4 * r + 2] * v[2] +
                   m[4 * r + 3] * v[3];
        return w;
    }

    SuperOp operator+(const SuperOp& o) const {
        SuperOp r;
        for (int i = 0; i < 16; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    SuperOp operator-(const SuperOp& o) const {
        SuperOp r;
        for (int i = 0; i < 16; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    SuperOp operator*(double s) const {
        SuperOp r;
        for (int i = 0; i < 16; ++i) r.m[i] = m[i] * s;
        return r;
    }

    double max_abs_diff(const SuperOp& o) const {
        double d = 0.0;
        for (int i = 0; i < 16; ++i) d = std::max(d, std::abs(m[i] - o.m[i]));
        return d;
    }
};

// compose(A, B): apply B first, then A (matrix product A*B)
inline SuperOp compose(const SuperOp& A, const SuperOp& B) {
    SuperOp r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += A.at(i, k) * B.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

inline double trace_of(const SuperOp& T, const PauliOp& rho) {
    return (T.apply(rho)).trace().real();
}

// A^+ : B -> {A,B}/2 for Hermitian A = a0 + a.s.
// {A,B}/2 = a0 b0 + a.b + (a0 b + b0 a).s
inline SuperOp anti_half(const PauliOp& A) {
    const double a0 = A.c0.real(), ax = A.cx.real(), ay = A.cy.real(),
                 az = A.cz.real();
    SuperOp s;
    s.at(0, 0) = a0; s.at(0, 1) = ax; s.at(0, 2) = ay; s.at(0, 3) = az;
    s.at(1, 0) = ax; s.at(1, 1) = a0;
    s.at(2, 0) = ay; s.at(2, 2) = a0;
    s.at(3, 0) = az; s.at(3, 3) = a0;
    return s;
}

// A^- : B -> -i[A,B]/2 = (a x b).s for Hermitian A.
inline SuperOp comm_half(const PauliOp& A) {
    const double ax = A.cx.real(), ay = A.cy.real(), az = A.cz.real();
    SuperOp s;
    s.at(1, 2) = -az; s.at(1, 3) = ay;
    s.at(2, 1) = az;  s.at(2, 3) = -ax;
    s.at(3, 1) = -ay; s.at(3, 2) = ax;
    return s;
}

// target spin x operator in the rotating (interaction) picture
inline PauliOp heisenberg_ix(double t, double omega0) {
    PauliOp r;
    r.cx = 0.5 * std::cos(omega0 * t);
    r.cy = -0.5 * std::sin(omega0 * t);
    return r;
}

// Nested correlation string C^{s1 s2 ... sn}(t1 > t2 > ... > tn):
// Tr[ B^{s1}(t1) B^{s2}(t2) ... B^{sn}(tn) rho ] with B(t) = 2a Ix(t),
// each sign acting as the anticommutator-half (+) or commutator-half (-)
// superoperation, earliest time applied first.
struct CorrSignString {
    std::vector<char> signs;          // '+' or '-'
    std::vector<double> times;        // strictly descending, latest first
};

inline double eval_correlation(const CorrSignString& s, double a, double omega0,
                               const PauliOp& rho) {
    if (s.signs.empty() || s.signs.size() != s.times.size())
        throw std::invalid_argument("correlation string: size mismatch");
    for (size_t i = 1; i < s.times.size(); ++i)
        if (!(s.times[i - 1] > s.times[i]))
            throw std::invalid_argument("correlation string: times must descend");
    PauliOp state = rho;
    for (size_t k = s.signs.size(); k-- > 0;) {
        PauliOp B = heisenberg_ix(s.times[k], omega0) * (2.0 * a);
        SuperOp op = (s.signs[k] == '+') ? anti_half(B) : comm_half(B);
        state = op.apply(state);
    }
    return state.trace().real();
}

// Same string evaluated on a classical scalar signal b(t): the operator is
// b(t) * identity, so "+" multiplies by b(t) and "-" annihilates.
template <class Fn>
double eval_correlation_classical(const CorrSignString& s, Fn&& b) {
    double prod = 1.0;
    for (size_t k = 0; k < s.signs.size(); ++k) {
        if (s.signs[k] == '-') return 0.0;
        prod *= b(s.times[k]);
    }
    return prod;
}

}  // namespace qusense
