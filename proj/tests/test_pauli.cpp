#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracle2x2.hpp"
#include "qusense/pauli.hpp"

using namespace qusense;

namespace {

std::mt19937_64 gen(20240811);

cplx rand_c() {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return {d(gen), d(gen)};
}

PauliOp rand_op() { return {rand_c(), rand_c(), rand_c(), rand_c()}; }

PauliOp rand_hermitian() {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return {cplx(d(gen), 0), cplx(d(gen), 0), cplx(d(gen), 0), cplx(d(gen), 0)};
}

oracle::DMat dense(const PauliOp& p) {
    return oracle::from_coeffs(p.c0, p.cx, p.cy, p.cz);
}

double dense_diff(const PauliOp& p, const oracle::DMat& m) {
    return oracle::max_abs_diff(dense(p), m);
}

}  // namespace

TEST_CASE("pauli products match dense matrix multiplication") {
    for (int it = 0; it < 50; ++it) {
        const PauliOp A = rand_op(), B = rand_op();
        const PauliOp P = pauli_mul(A, B);
        CHECK(dense_diff(P, dense(A) * dense(B)) < 1e-13);
    }
    // canonical single products
    CHECK(dense_diff(pauli_mul(PauliOp::sx(), PauliOp::sy()),
                     oracle::sigma(3) * oracle::C(0, 1)) < 1e-15);
    const PauliOp sq = pauli_mul(PauliOp::sz(), PauliOp::sz());
    CHECK(std::abs(sq.c0 - 1.0) < 1e-15);
    CHECK(std::abs(sq.cz) < 1e-15);
}

TEST_CASE("trace, hermiticity and bloch radius") {
    const PauliOp A = rand_op();
    CHECK(std::abs(A.trace() - oracle::tr(dense(A))) < 1e-14);
    CHECK(rand_hermitian().is_hermitian());
    PauliOp nh = rand_hermitian();
    nh.cy += cplx(0, 1e-6);
    CHECK_FALSE(nh.is_hermitian());

    PauliOp pure;  // projector onto +x
    pure.c0 = 0.5;
    pure.cx = 0.5;
    CHECK(pure.bloch_radius() == doctest::Approx(1.0));
    CHECK(PauliOp::rho_mixed().bloch_radius() == doctest::Approx(0.0));
}

TEST_CASE("anticommutator and commutator halves against explicit products") {
    for (int it = 0; it < 40; ++it) {
        const PauliOp A = rand_hermitian();
        const PauliOp B = rand_op();
        const PauliOp anti = anti_half(A).apply(B);
        const PauliOp ref_anti =
            (pauli_mul(A, B) + pauli_mul(B, A)) * cplx(0.5, 0.0);
        CHECK(dense_diff(anti, dense(ref_anti)) < 1e-13);

        const PauliOp comm = comm_half(A).apply(B);
        const PauliOp ref_comm =
            (pauli_mul(A, B) - pauli_mul(B, A)) * cplx(0.0, -0.5);
        CHECK(dense_diff(comm, dense(ref_comm)) < 1e-13);
    }
}

TEST_CASE("superoperator composition and application") {
    const SuperOp I = SuperOp::identity();
    const SuperOp A = anti_half(rand_hermitian());
    const SuperOp B = comm_half(rand_hermitian());
    CHECK(compose(I, A).max_abs_diff(A) < 1e-15);
    CHECK(compose(A, I).max_abs_diff(A) < 1e-15);

    // compose(A, B) applies B first
    const PauliOp x = rand_op();
    const PauliOp via_compose = compose(A, B).apply(x);
    const PauliOp via_steps = A.apply(B.apply(x));
    CHECK(dense_diff(via_compose, dense(via_steps)) < 1e-13);

    // associativity
    const SuperOp Cc = anti_half(rand_hermitian());
    CHECK(compose(compose(A, B), Cc).max_abs_diff(compose(A, compose(B, Cc))) <
          1e-13);

    // real fast path agrees with the complex path
    const std::array<double, 4> v{0.5, 0.1, -0.2, 0.3};
    const auto rv = A.apply(v);
    const PauliOp cv = A.apply(PauliOp{v[0], v[1], v[2], v[3]});
    CHECK(std::abs(rv[0] - cv.c0.real()) < 1e-15);
    CHECK(std::abs(rv[1] - cv.cx.real()) < 1e-15);
    CHECK(std::abs(rv[2] - cv.cy.real()) < 1e-15);
    CHECK(std::abs(rv[3] - cv.cz.real()) < 1e-15);
}

TEST_CASE("rotating-frame spin operator") {
    const double w0 = 1.7;
    const PauliOp at0 = heisenberg_ix(0.0, w0);
    CHECK(std::abs(at0.cx - 0.5) < 1e-15);
    CHECK(std::abs(at0.cy) < 1e-15);
    // quarter period: Ix -> -Iy
    const double t = 0.5 * M_PI / w0;
    const PauliOp quarter = heisenberg_ix(t, w0);
    CHECK(std::abs(quarter.cx) < 1e-12);
    CHECK(quarter.cy.real() == doctest::Approx(-0.5));
    // Heisenberg evolution preserves the spectrum (norm of the bloch vector)
    CHECK(heisenberg_ix(0.37, w0).bloch_radius() == doctest::Approx(1.0));
}

TEST_CASE("second-order correlation string on the mixed state") {
    const double a = 0.8, w0 = 1.3;
    const PauliOp rho = PauliOp::rho_mixed();
    for (double dt : {0.3, 1.1, 2.7}) {
        CorrSignString s;
        s.signs = {'+', '+'};
        s.times = {2.0 + dt, 2.0};
        CHECK(eval_correlation(s, a, w0, rho) ==
              doctest::Approx(a * a * std::cos(w0 * dt)).epsilon(1e-12));
    }
    // any commutator branch annihilates the fully mixed state at the earliest slot
    CorrSignString s;
    s.signs = {'+', '-'};
    s.times = {1.0, 0.25};
    CHECK(eval_correlation(s, a, w0, rho) == doctest::Approx(0.0));
}

TEST_CASE("fourth-order correlation string factorizes into two sine pairs") {
    const double a = 0.9, w0 = 0.7;
    const PauliOp rho = PauliOp::rho_mixed();
    const double t4 = 0.2, t3 = 1.1, t2 = 2.3, t1 = 3.9;
    CorrSignString s;
    s.signs = {'+', '-', '-', '+'};
    s.times = {t1, t2, t3, t4};
    const double expect = std::pow(a, 4) * std::sin(w0 * (t1 - t2)) *
                          std::sin(w0 * (t3 - t4));
    CHECK(eval_correlation(s, a, w0, rho) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("correlation strings on a classical signal") {
    CorrSignString s;
    s.signs = {'+', '+'};
    s.times = {2.0, 1.0};
    auto b = [](double t) { return 3.0 * std::cos(t); };
    CHECK(eval_correlation_classical(s, b) ==
          doctest::Approx(9.0 * std::cos(2.0) * std::cos(1.0)));
    s.signs = {'+', '-'};
    CHECK(eval_correlation_classical(s, b) == 0.0);
    s.signs = {'-', '+'};
    CHECK(eval_correlation_classical(s, b) == 0.0);
}

TEST_CASE("correlation string input validation") {
    CorrSignString s;
    s.signs = {'+', '+'};
    s.times = {1.0, 2.0};  // not descending
    CHECK_THROWS_AS(eval_correlation(s, 1.0, 1.0, PauliOp::rho_mixed()),
                    std::invalid_argument);
    s.times = {1.0};
    CHECK_THROWS_AS(eval_correlation(s, 1.0, 1.0, PauliOp::rho_mixed()),
                    std::invalid_argument);
}
