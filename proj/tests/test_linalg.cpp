#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpe/gates.hpp"
#include "qpe/linalg.hpp"
#include "test_util.hpp"

using namespace qpe;

TEST_CASE("tensor product basics") {
    CMatrix ket0(2, 1), ket1(2, 1);
    ket0 << 1, 0;
    ket1 << 0, 1;
    CMatrix v = tensor_product(ket0, ket1);  // |0> (x) |1> = (0,1,0,0)
    CHECK(v(0, 0) == Complex(0));
    CHECK(v(1, 0) == Complex(1));
    CHECK(v(2, 0) == Complex(0));
    CHECK(v(3, 0) == Complex(0));

    CMatrix i2 = CMatrix::Identity(2, 2);
    CHECK(max_abs_diff(tensor_product(i2, i2), CMatrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("tensor product index formula") {
    // (X (x) Z)[2i+j, 2k+l] = X[i,k] Z[j,l]
    const CMatrix x = gate("X").matrix, z = gate("Z").matrix;
    CMatrix xz = tensor_product(x, z);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    CHECK(xz(2 * i + j, 2 * k + l) == x(i, k) * z(j, l));
}

TEST_CASE("partial trace of a product is the factor") {
    Rng rng(11);
    CMatrix rho_a = test::random_density(2, rng);
    CMatrix rho_b = test::random_density(2, rng);
    CMatrix joint = tensor_product(rho_a, rho_b);
    CHECK(max_abs_diff(partial_trace(joint, 2, {1}), rho_a) < 1e-12);
    CHECK(max_abs_diff(partial_trace(joint, 2, {0}), rho_b) < 1e-12);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
    CVector phi_plus = CVector::Zero(4);
    phi_plus(0) = phi_plus(3) = 1.0 / std::sqrt(2.0);
    CMatrix rho = phi_plus * phi_plus.adjoint();
    CHECK(max_abs_diff(partial_trace(rho, 2, {1}), CMatrix(CMatrix::Identity(2, 2) / 2.0)) < 1e-12);
}

TEST_CASE("partial trace composes to the full trace") {
    Rng rng(12);
    CMatrix rho = test::random_density(4, rng);
    CMatrix a = partial_trace(rho, 2, {0});
    CMatrix scalar = partial_trace(a, 1, {0});
    CHECK(std::abs(scalar(0, 0) - Complex(1.0)) < 1e-12);

    // Order independence over disjoint sets.
    CMatrix rho3 = test::random_density(8, rng);
    CMatrix via01 = partial_trace(rho3, 3, {0, 1});
    CMatrix via0_then1 = partial_trace(partial_trace(rho3, 3, {1}), 2, {0});
    CHECK(max_abs_diff(via01, via0_then1) < 1e-12);
}

TEST_CASE("operator distance") {
    const CMatrix i2 = CMatrix::Identity(2, 2);
    const CMatrix x = gate("X").matrix;
    CHECK(operator_distance(i2, i2) == doctest::Approx(0.0));
    // Eigenvalues of I - X are {0, 2}: E(I, X) = 2.
    CHECK(operator_distance(i2, x) == doctest::Approx(2.0).epsilon(1e-12));
    // Phase sensitivity: E(U, e^{i pi} U) = 2.
    Rng rng(5);
    CMatrix u = test::random_unitary(4, rng);
    CHECK(operator_distance(u, CMatrix(-u)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("operator distance is unitarily invariant and chains") {
    Rng rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        CMatrix u = test::random_unitary(4, rng);
        CMatrix v = test::random_unitary(4, rng);
        CMatrix w = test::random_unitary(4, rng);
        CHECK(operator_distance(u * v, u * w) ==
              doctest::Approx(operator_distance(v, w)).epsilon(1e-10));
        CMatrix u1 = test::random_unitary(4, rng), u1p = test::random_unitary(4, rng);
        CMatrix u2 = test::random_unitary(4, rng), u2p = test::random_unitary(4, rng);
        CHECK(operator_distance(u1 * u2, u1p * u2p) <=
              operator_distance(u1, u1p) + operator_distance(u2, u2p) + 1e-12);
    }
}

TEST_CASE("measurement probabilities differ by at most 2 E(U, V)") {
    Rng rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        CMatrix u = test::random_unitary(4, rng);
        CMatrix v = test::random_unitary(4, rng);
        CVector psi = test::random_state(4, rng);
        CMatrix p = CMatrix::Zero(4, 4);
        p(0, 0) = p(1, 1) = 1.0;  // a projector
        const double pu = ((u * psi).adjoint() * p * (u * psi))(0, 0).real();
        const double pv = ((v * psi).adjoint() * p * (v * psi))(0, 0).real();
        CHECK(std::abs(pu - pv) <= 2.0 * operator_distance(u, v) + 1e-12);
    }
}

TEST_CASE("herm_exp closed forms") {
    const CMatrix x = gate("X").matrix;
    for (double phi : {0.3, kPi / 2, 2.1}) {
        CMatrix rx = herm_exp(x, Complex(0, -phi / 2));
        CHECK(max_abs_diff(rx, gate("Rx", {phi}).matrix) < 1e-12);
    }
    Rng rng(3);
    CMatrix h = test::random_hermitian(4, rng);
    CHECK(max_abs_diff(herm_exp(h, Complex(0, 0)), CMatrix::Identity(4, 4)) < 1e-12);

    // e^{-i gamma (X(x)X) t} matches the iota_1 / iota_2 form.
    const double gt = 0.7;
    CMatrix xx = tensor_product(x, x);
    CHECK(max_abs_diff(herm_exp(xx, Complex(0, -gt)), gate("XX", {gt}).matrix) < 1e-12);

    CHECK_THROWS(herm_exp(gate("Rz", {0.3}).matrix + CMatrix::Identity(2, 2), Complex(0, 1)));
}

TEST_CASE("herm_exp output is unitary for imaginary scale") {
    Rng rng(31);
    CMatrix h = test::random_hermitian(8, rng);
    CHECK(is_unitary(herm_exp(h, Complex(0, -1.3))));
}

TEST_CASE("equal up to global phase") {
    const CMatrix h = gate("H").matrix;
    const CMatrix x = gate("X").matrix;
    CHECK(equal_up_to_global_phase(h, CMatrix(-h), 1e-12));
    CHECK_FALSE(equal_up_to_global_phase(h, x, 1e-9));

    // Circuit-order H,T,H,T equals a rotation about (cos pi/8, sin pi/8, cos pi/8).
    const CMatrix t = gate("T").matrix;
    CMatrix htht = t * h * t * h;  // rightmost acts first
    const double c = std::cos(kPi / 8), s = std::sin(kPi / 8);
    const double norm = std::sqrt(1.0 + c * c);
    const double theta_c = 2.0 * std::acos(c * c);
    CMatrix rn = axis_rotation({c / norm, s / norm, c / norm}, theta_c);
    CHECK(equal_up_to_global_phase(htht, rn, 1e-10));
}

TEST_CASE("validators") {
    CHECK(is_unitary(gate("H").matrix));
    CHECK(is_hermitian(gate("Z").matrix));
    Rng rng(41);
    CHECK(is_density(test::random_density(8, rng)));
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(0, 0) = 2.0;
    CHECK_FALSE(is_density(bad));
    CHECK_FALSE(is_unitary(bad));
}

TEST_CASE("trace distance") {
    CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    b(1, 1) = 1.0;
    CHECK(trace_distance(a, b) == doctest::Approx(1.0));
    CHECK(trace_distance(a, a) == doctest::Approx(0.0));
}
