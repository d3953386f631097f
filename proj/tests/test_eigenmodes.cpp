#include "fixtures.hpp"

#include "kerramp/eigenmodes.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <chrono>

using namespace kerramp;
using kerramp::test::ParamGenerator;
using kerramp::test::device;

namespace {

// Eigenvalues of H built entry by entry here, not through effective_hamiltonian.
Eigen::Vector2cd reference_eigenvalues(const SystemParams& p) {
    Eigen::Matrix2cd h;
    h << cplx(p.omega_a - p.omega_d, p.kappa_g - p.kappa_a), cplx(p.J, 0.0),
        cplx(p.J, 0.0), cplx(p.omega_b - p.omega_d, -p.kappa_b);
    return Eigen::ComplexEigenSolver<Eigen::Matrix2cd>(h).eigenvalues();
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST_CASE("C1 and C2 vanish at the reference gain rate") {
    const auto c = eigen_coefficients(device());
    // Delta_a = 0.3, Delta_b = 0.5, kappa_n = 0.6: J^2 - 0.15 - 0.6 and 0.3 - 0.3.
    CHECK(std::abs(c.C1) < 1e-14);
    CHECK(std::abs(c.C2) < 1e-14);
    CHECK(std::abs(c.Delta_tilde - cplx(0.8, -0.4)) < 1e-14);
    CHECK(std::abs(c.delta_tilde - cplx(-0.2, 1.6)) < 1e-14);
}

TEST_CASE("eigenfrequencies match the matrix eigenvalues and Vieta") {
    ParamGenerator gen(11);
    for (int i = 0; i < 500; ++i) {
        const auto p = gen.any();
        const auto w = eigenfrequencies(p);
        const auto c = eigen_coefficients(p);
        CHECK(rel(w.plus + w.minus, c.Delta_tilde) < 1e-12);
        CHECK(rel(w.plus * w.minus, -cplx(c.C1, c.C2)) < 1e-12);

        const auto ev = reference_eigenvalues(p);
        const double d1 = rel(w.plus, ev(0)) + rel(w.minus, ev(1));
        const double d2 = rel(w.plus, ev(1)) + rel(w.minus, ev(0));
        CHECK(std::min(d1, d2) < 1e-10);
    }
}

TEST_CASE("decoupled modes keep their bare frequencies") {
    SystemParams p;
    p.omega_a = 0.1;
    p.omega_b = -0.4;
    p.omega_d = 0.05;
    p.kappa_a = 0.3;
    p.kappa_b = 1.0;
    const auto w = eigenfrequencies(p);
    const cplx wa(p.detuning_a(), -p.kappa_a);
    const cplx wb(p.detuning_b(), -p.kappa_b);
    const bool direct = std::abs(w.plus - wa) < 1e-14 && std::abs(w.minus - wb) < 1e-14;
    const bool swapped = std::abs(w.plus - wb) < 1e-14 && std::abs(w.minus - wa) < 1e-14;
    CHECK((direct || swapped));
}

TEST_CASE("bright point has one real eigenvalue on the minus branch") {
    const auto w = eigenfrequencies(device());
    CHECK(std::abs(w.minus.imag()) < 1e-10);
    CHECK(w.plus.imag() < 0.0);
    const auto ev = reference_eigenvalues(device());
    const double real_count = (std::abs(ev(0).imag()) < 1e-10) + (std::abs(ev(1).imag()) < 1e-10);
    CHECK(real_count == 1);
}

TEST_CASE("degenerate frequencies with matched rates stay on the real axis") {
    // omega_a = omega_b, kappa_a = 0, kappa_g = 0: the coupled pair is split
    // symmetrically and the minus branch should be the less damped one.
    SystemParams p;
    p.kappa_b = 1.0;
    p.J = 0.5;
    const auto w = eigenfrequencies(p);
    CHECK(w.exceptional_point);
    p.J = 0.8;
    const auto w2 = eigenfrequencies(p);
    CHECK_FALSE(w2.exceptional_point);
    CHECK(w2.minus.imag() == doctest::Approx(-0.5));
}

TEST_CASE("eigenmode normalization and eigenvector equation") {
    ParamGenerator gen(12);
    for (int i = 0; i < 500; ++i) {
        const auto p = gen.any();
        const auto w = eigenfrequencies(p);
        if (w.exceptional_point) continue;
        const auto m = eigenmodes(p);
        CHECK(std::abs(m.m_plus * m.m_plus + m.m_minus * m.m_minus - 1.0) < 1e-12);

        const auto h = effective_hamiltonian(p);
        // P- = m- a - m+ b, as a row vector acting on (a, b): (m-, -m+) H = w- (m-, -m+).
        Eigen::RowVector2cd left(m.m_minus, -m.m_plus);
        Eigen::RowVector2cd right(m.m_plus, m.m_minus);
        const double scale = std::max(1.0, std::abs(w.plus) + std::abs(w.minus));
        CHECK((left * h - w.minus * left).norm() < 1e-9 * scale);
        CHECK((right * h - w.plus * right).norm() < 1e-9 * scale);
    }
}

TEST_CASE("bright eigenmode residual on the reference device") {
    const auto p = device();
    const auto m = eigenmodes(p);
    const auto w = eigenfrequencies(p);
    const auto h = effective_hamiltonian(p);
    Eigen::RowVector2cd left(m.m_minus, -m.m_plus);
    CHECK((left * h - w.minus * left).norm() < 1e-10);
}

TEST_CASE("an exceptional point raises DegenerateEigenmodes") {
    // Equal detunings, kappa_g = kappa_a and J = kappa_b / 2 make delta_tilde^2 + 4 J^2 vanish.
    SystemParams p;
    p.omega_a = 0.2;
    p.omega_b = 0.2;
    p.kappa_a = 0.4;
    p.kappa_g = 0.4;
    p.kappa_b = 1.0;
    p.J = 0.5;
    CHECK(eigenfrequencies(p).exceptional_point);
    try {
        (void)eigenmodes(p);
        FAIL("expected DegenerateEigenmodes");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateEigenmodes);
    }
}

TEST_CASE("solve_bright_gain reproduces the reference operating point") {
    auto p = device(0.1);
    p.omega_d = 1.7;  // ignored by the solver
    const auto t0 = std::chrono::steady_clock::now();
    const auto bp = solve_bright_gain(p);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(bp.kappa_g_star == doctest::Approx(0.85).epsilon(1e-12));
    CHECK(bp.omega_d_star == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(bp.kappa_n == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(secs < 1.0);

    const auto q = at_bright_point(p, bp);
    const auto c = eigen_coefficients(q);
    CHECK(std::abs(c.C1) < 1e-10);
    CHECK(std::abs(c.C2) < 1e-10);
    CHECK(std::abs(eigenfrequencies(q).minus.imag()) < 1e-10);
}

TEST_CASE("bright solutions of random systems satisfy their invariants") {
    ParamGenerator gen(13);
    int solved = 0;
    for (int i = 0; i < 400; ++i) {
        auto p = gen.any();
        p.J = gen.uniform(0.05, 0.99) * p.kappa_b;  // J < kappa_b guarantees a root
        try {
            const auto bp = solve_bright_gain(p);
            const auto q = at_bright_point(p, bp);
            CHECK(bp.kappa_n > 0.0);
            CHECK(bp.kappa_n < p.kappa_b);
            CHECK(std::abs(bright_condition_residual(p, bp.kappa_g_star)) < 1e-10);
            // Independent check: the non-Hermitian matrix is singular there.
            const auto ev = reference_eigenvalues(q);
            CHECK(std::min(std::abs(ev(0)), std::abs(ev(1))) < 1e-8);
            ++solved;
        } catch (const Error& e) {
            FAIL("unexpected " << e.what());
        }
    }
    CHECK(solved == 400);
}

TEST_CASE("strong coupling leaves no bright point") {
    auto p = device();
    p.J = 1.2;
    p.omega_b = p.omega_a;  // residual limit kappa_b^2 - J^2 < 0 on the whole bracket
    try {
        (void)solve_bright_gain(p);
        FAIL("expected NoBrightPoint");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoBrightPoint);
    }
}
