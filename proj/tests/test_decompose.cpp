#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpe/decompose.hpp"
#include "qpe/linalg.hpp"
#include "test_util.hpp"

using namespace qpe;

namespace {

CMatrix rx(double t) { return gate("Rx", {t}).matrix; }
CMatrix rz(double t) { return gate("Rz", {t}).matrix; }

CMatrix zx_matrix(double a, double t, double b) { return rz(a) * rx(t) * rz(b); }

}  // namespace

TEST_CASE("euler decomposition of H and T") {
    EulerDecomposition h = euler_decompose(gate("H").matrix, EulerBasis::ZX);
    CHECK(h.delta == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(h.alpha == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(h.beta == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(h.gamma == doctest::Approx(kPi / 2).epsilon(1e-12));

    EulerDecomposition t = euler_decompose(gate("T").matrix, EulerBasis::ZX);
    CHECK(t.delta == doctest::Approx(kPi / 8).epsilon(1e-12));
    CHECK(t.alpha == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(t.beta == doctest::Approx(0.0));
    CHECK(t.gamma == doctest::Approx(0.0));
}

TEST_CASE("euler round trip on random unitaries") {
    Rng rng(21);
    for (int rep = 0; rep < 1000; ++rep) {
        CMatrix u = test::random_unitary(2, rng);
        for (EulerBasis basis : {EulerBasis::ZY, EulerBasis::ZX}) {
            EulerDecomposition d = euler_decompose(u, basis);
            CHECK(max_abs_diff(d.reconstruct(), u) < 1e-10);
            CHECK(d.beta >= 0.0);
            CHECK(d.beta <= kPi + 1e-12);
        }
    }
    // Haar-ish via hermitian exponentials as well.
    for (int rep = 0; rep < 200; ++rep) {
        CMatrix u = herm_exp(test::random_hermitian(2, rng), Complex(0, -1));
        EulerDecomposition d = euler_decompose(u, EulerBasis::ZY);
        CHECK(max_abs_diff(d.reconstruct(), u) < 1e-10);
    }
    CHECK_THROWS(euler_decompose(CMatrix::Identity(3, 3), EulerBasis::ZY));
}

TEST_CASE("abc decomposition satisfies the controlled-U theorem") {
    Rng rng(22);
    const CMatrix x = gate("X").matrix;
    for (int rep = 0; rep < 200; ++rep) {
        CMatrix u = test::random_unitary(2, rng);
        AbcDecomposition d = abc_controlled(u);
        CHECK(max_abs_diff(CMatrix(d.a * d.b * d.c), CMatrix::Identity(2, 2)) <= 1e-10);
        CMatrix axbxc = d.a * x * d.b * x * d.c;
        CHECK(max_abs_diff(CMatrix(std::exp(Complex(0, d.delta)) * axbxc), u) < 1e-10);
        // Assembled circuit equals controlled(u) including phase.
        CHECK(max_abs_diff(d.assemble(), controlled(u)) < 1e-10);
    }
}

TEST_CASE("abc on a diagonal gate stays diagonal") {
    AbcDecomposition d = abc_controlled(rz(0.77));
    CHECK(max_abs_diff(CMatrix(d.a * d.b * d.c), CMatrix::Identity(2, 2)) < 1e-14);
    CHECK(max_abs_diff(d.assemble(), controlled(rz(0.77))) < 1e-12);
}

TEST_CASE("abc on X reproduces CNOT up to phase") {
    AbcDecomposition d = abc_controlled(gate("X").matrix);
    CHECK(equal_up_to_global_phase(d.assemble(), gate("CNOT").matrix, 1e-10));
}

TEST_CASE("paper ABC triple for Rz Rx Rz") {
    // A = Rz(a) Rx(t/2) Rz(-pi/2), B = Rz(pi/2) Rx(-t/2) Rz(-(a+b+pi)/2),
    // C = Rz((b-a+pi)/2) satisfies ABC = I and A X B X C = Rz(a) Rx(t) Rz(b).
    Rng rng(23);
    const CMatrix x = gate("X").matrix;
    for (int rep = 0; rep < 50; ++rep) {
        const double a = rng.uniform(-kPi, kPi), t = rng.uniform(-kPi, kPi),
                     b = rng.uniform(-kPi, kPi);
        CMatrix A = rz(a) * rx(t / 2) * rz(-kPi / 2);
        CMatrix B = rz(kPi / 2) * rx(-t / 2) * rz(-(a + b + kPi) / 2);
        CMatrix C = rz((b - a + kPi) / 2);
        CHECK(equal_up_to_global_phase(CMatrix(A * B * C), CMatrix::Identity(2, 2), 1e-10));
        CHECK(equal_up_to_global_phase(CMatrix(A * x * B * x * C), zx_matrix(a, t, b), 1e-10));
    }
}

TEST_CASE("square_angles special cases") {
    // Pure Rx: angle doubles.
    PowerAngles p = square_angles(0.0, 0.3, 0.0);
    CHECK(p.alpha == doctest::Approx(0.0));
    CHECK(p.theta == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(p.beta == doctest::Approx(0.0));

    // Pure Rz: nu1 = (a+b)/2 split evenly.
    PowerAngles q = square_angles(0.4, 0.0, 0.9);
    CHECK(q.alpha == doctest::Approx(0.4 + 0.65).epsilon(1e-12));
    CHECK(q.theta == doctest::Approx(0.0));
    CHECK(q.beta == doctest::Approx(0.9 + 0.65).epsilon(1e-12));
}

TEST_CASE("square_angles matches direct matrix squaring") {
    Rng rng(24);
    for (int rep = 0; rep < 1000; ++rep) {
        const double a = rng.uniform(-2 * kPi, 2 * kPi), t = rng.uniform(-2 * kPi, 2 * kPi),
                     b = rng.uniform(-2 * kPi, 2 * kPi);
        CMatrix u = zx_matrix(a, t, b);
        PowerAngles p = square_angles(a, t, b);
        CHECK(equal_up_to_global_phase(zx_matrix(p.alpha, p.theta, p.beta), CMatrix(u * u), 1e-9));
    }
}

TEST_CASE("power_angles represents U^(2^k)") {
    Rng rng(25);
    PowerAngles id = power_angles(0.3, 0.4, 0.5, 0);
    CHECK(id.alpha == doctest::Approx(0.3));
    CHECK(id.theta == doctest::Approx(0.4));
    CHECK(id.beta == doctest::Approx(0.5));

    for (int rep = 0; rep < 100; ++rep) {
        const double a = rng.uniform(-kPi, kPi), t = rng.uniform(-kPi, kPi),
                     b = rng.uniform(-kPi, kPi);
        CMatrix u = zx_matrix(a, t, b);
        CMatrix u8 = u * u;
        u8 = u8 * u8;
        u8 = u8 * u8;  // U^8
        PowerAngles p = power_angles(a, t, b, 3);
        CHECK(equal_up_to_global_phase(zx_matrix(p.alpha, p.theta, p.beta), u8, 1e-9));
    }

    // k = 10 on a pure Rz: the z angles accumulate to 2^10 (a+b) mod 2 pi.
    const double a = 0.37, b = 1.1;
    PowerAngles p = power_angles(a, 0.0, b, 10);
    const double got = std::fmod(p.alpha + p.beta, 2 * kPi);
    const double want = std::fmod(1024.0 * (a + b), 2 * kPi);
    const double diff = std::abs(got - want);
    CHECK((std::min(diff, 2 * kPi - diff)) < 1e-8);
    CHECK(p.theta == doctest::Approx(0.0));
}

TEST_CASE("power_angles agrees with herm_exp powers up to k = 12") {
    Rng rng(26);
    for (int k : {6, 12}) {
        const double a = rng.uniform(-kPi, kPi), t = rng.uniform(-kPi, kPi),
                     b = rng.uniform(-kPi, kPi);
        CMatrix u = zx_matrix(a, t, b);
        CMatrix direct = CMatrix::Identity(2, 2);
        for (long long i = 0; i < (1LL << k); ++i) direct = direct * u;
        PowerAngles p = power_angles(a, t, b, k);
        CHECK(equal_up_to_global_phase(zx_matrix(p.alpha, p.theta, p.beta), direct, 1e-7));
    }
}

TEST_CASE("cnot_from_xx equals CNOT up to global phase") {
    Circuit c = cnot_from_xx();
    CMatrix u = circuit_unitary(c);
    CHECK(equal_up_to_global_phase(u, gate("CNOT").matrix, 1e-10));

    StateVector on = run(c, basis_state(2, std::string("10")));
    CHECK(std::abs(std::abs(on.amps()(3)) - 1.0) < 1e-10);  // |10> -> |11> up to phase
    StateVector off = run(c, basis_state(2, std::string("00")));
    CHECK(std::abs(std::abs(off.amps()(0)) - 1.0) < 1e-10);  // control clear: unchanged
}
