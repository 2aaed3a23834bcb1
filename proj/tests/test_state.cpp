#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpe/gates.hpp"
#include "qpe/state.hpp"
#include "test_util.hpp"

using namespace qpe;

TEST_CASE("basis states, MSB-first labels") {
    StateVector s00 = basis_state(2, std::string("00"));
    CHECK(s00.amps()(0) == Complex(1));
    StateVector s11 = basis_state(2, std::string("11"));
    CHECK(s11.amps()(3) == Complex(1));
    StateVector s10 = basis_state(2, std::string("10"));
    CHECK(s10.amps()(2) == Complex(1));  // qubit 0 is the most significant bit
    CHECK_THROWS(basis_state(2, std::string("0")));
}

TEST_CASE("entangled pair creation") {
    StateVector st = basis_state(2, std::string("00"));
    st = apply(st, gate("H").matrix, {0});
    CHECK(std::abs(st.amps()(0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(st.amps()(2) - 1.0 / std::sqrt(2.0)) < 1e-12);
    st = apply(st, gate("CNOT").matrix, {0, 1});
    CHECK(std::abs(st.amps()(0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(st.amps()(3) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("apply then inverse restores the state") {
    Rng rng(7);
    StateVector st(3, test::random_state(8, rng));
    CMatrix u = test::random_unitary(4, rng);
    StateVector out = apply(apply(st, u, {0, 2}), CMatrix(u.adjoint()), {0, 2});
    CHECK((out.amps() - st.amps()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("apply preserves norm and trace") {
    Rng rng(9);
    StateVector st(3, test::random_state(8, rng));
    CMatrix u = test::random_unitary(8, rng);
    StateVector out = apply(st, u, {0, 1, 2});
    CHECK(std::abs(out.amps().norm() - 1.0) < 1e-10);

    DensityMatrix rho(2, test::random_density(4, rng));
    DensityMatrix rho2 = apply(rho, test::random_unitary(4, rng), {0, 1});
    CHECK(std::abs(rho2.mat().trace().real() - 1.0) < 1e-10);
    CHECK(is_hermitian(rho2.mat()));
}

TEST_CASE("measure left qubit of an entangled state") {
    const Complex a(0.6, 0.0), b(0.0, 0.8);
    CVector amps = CVector::Zero(4);
    amps(0) = a;
    amps(3) = b;
    StateVector st(2, amps);

    auto dist = outcome_distribution(st, {0});
    CHECK(dist[0].second == doctest::Approx(0.36));
    CHECK(dist[1].second == doctest::Approx(0.64));

    Rng rng(1);
    int saw0 = 0;
    for (int i = 0; i < 200; ++i) {
        MeasureOutcome mo = measure_qubits(st, {0}, rng);
        const auto& post = std::get<StateVector>(mo.post_state);
        if (mo.label == "0") {
            ++saw0;
            CHECK(std::abs(std::abs(post.amps()(0)) - 1.0) < 1e-12);  // collapses to |00>
        } else {
            CHECK(std::abs(std::abs(post.amps()(3)) - 1.0) < 1e-12);
        }
    }
    CHECK(saw0 > 40);
    CHECK(saw0 < 120);
}

TEST_CASE("measuring |+> is a fair coin") {
    StateVector st = basis_state(1, std::string("0"));
    st = apply(st, gate("H").matrix, {0});
    auto dist = outcome_distribution(st, {0});
    CHECK(dist[0].second == doctest::Approx(0.5));
    CHECK(dist[1].second == doctest::Approx(0.5));
}

TEST_CASE("sampling matches exact probabilities within binomial bounds") {
    Rng rng(123);
    StateVector st(3, test::random_state(8, rng));
    auto dist = outcome_distribution(st, {0, 1, 2});
    const int shots = 100000;
    std::vector<int> counts(8, 0);
    for (int s = 0; s < shots; ++s) {
        MeasureOutcome mo = measure_qubits(st, {0, 1, 2}, rng);
        int idx = 0;
        for (char c : mo.label) idx = idx * 2 + (c - '0');
        ++counts[idx];
    }
    for (int i = 0; i < 8; ++i) {
        const double p = dist[i].second;
        const double sigma = std::sqrt(p * (1 - p) / shots);
        CHECK(std::abs(counts[i] / double(shots) - p) < 3.0 * sigma + 1e-9);
    }
}

TEST_CASE("outcome distribution equals brute-force marginalization") {
    Rng rng(77);
    StateVector st(3, test::random_state(8, rng));
    auto dist = outcome_distribution(st, {1});
    double p0 = 0.0, p1 = 0.0;
    for (int i = 0; i < 8; ++i)
        (((i >> 1) & 1) ? p1 : p0) += std::norm(st.amps()(i));
    CHECK(dist[0].second == doctest::Approx(p0).epsilon(1e-12));
    CHECK(dist[1].second == doctest::Approx(p1).epsilon(1e-12));
    CHECK(dist[0].second + dist[1].second == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("distribution is invariant under global phase") {
    Rng rng(13);
    CVector amps = test::random_state(4, rng);
    StateVector a(2, amps);
    StateVector b(2, CVector(std::exp(Complex(0, 1.234)) * amps));
    auto da = outcome_distribution(a, {0, 1});
    auto db = outcome_distribution(b, {0, 1});
    for (int i = 0; i < 4; ++i) CHECK(da[i].second == doctest::Approx(db[i].second).epsilon(1e-12));
}

TEST_CASE("bloch coordinates") {
    StateVector zero = basis_state(1, std::string("0"));
    auto b0 = bloch(zero);
    CHECK(b0[0] == doctest::Approx(0.0));
    CHECK(b0[2] == doctest::Approx(1.0));

    StateVector plus = apply(zero, gate("H").matrix, {0});
    auto bp = bloch(plus);
    CHECK(bp[0] == doctest::Approx(1.0));
    CHECK(std::abs(bp[1]) < 1e-12);
    CHECK(std::abs(bp[2]) < 1e-12);

    for (double phi : {0.3, 1.7, 4.4}) {
        auto b = bloch(apply(plus, gate("Rz", {phi}).matrix, {0}));
        CHECK(b[0] == doctest::Approx(std::cos(phi)).epsilon(1e-10));
        CHECK(b[1] == doctest::Approx(std::sin(phi)).epsilon(1e-10));
        CHECK(std::abs(b[2]) < 1e-10);
        CHECK(b[0] * b[0] + b[1] * b[1] + b[2] * b[2] == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS(bloch(basis_state(2, std::string("00"))));
}

TEST_CASE("to_density and purity") {
    StateVector zero = basis_state(1, std::string("0"));
    DensityMatrix rho = to_density(zero);
    CHECK(rho.mat()(0, 0) == Complex(1));
    CHECK(purity(rho) == doctest::Approx(1.0));

    StateVector plus = apply(zero, gate("H").matrix, {0});
    DensityMatrix rp = to_density(plus);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(rp.mat()(i, j) - 0.5) < 1e-12);

    Rng rng(2);
    CVector psi = test::random_state(4, rng);
    for (double p : {0.1, 0.5, 1.0}) {
        CMatrix mixed = (1 - p) * (psi * psi.adjoint()) + p * CMatrix::Identity(4, 4) / 4.0;
        CHECK(purity(DensityMatrix(2, mixed)) < 1.0 - 1e-6);
    }
}

TEST_CASE("measurement averaged over outcomes dephases the state") {
    Rng rng(55);
    StateVector st(3, test::random_state(8, rng));
    DensityMatrix rho = to_density(st);

    // sum_m P_m rho P_m over outcomes of measuring qubit 1.
    auto dist = outcome_distribution(st, {1});
    CMatrix averaged = CMatrix::Zero(8, 8);
    for (int outcome = 0; outcome < 2; ++outcome) {
        CMatrix proj = CMatrix::Zero(8, 8);
        for (int i = 0; i < 8; ++i)
            if (((i >> 1) & 1) == outcome) proj(i, i) = 1.0;
        averaged += proj * rho.mat() * proj;
    }
    CMatrix dephased = rho.mat();
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            if (((r >> 1) & 1) != ((c >> 1) & 1)) dephased(r, c) = 0.0;
    CHECK(max_abs_diff(averaged, dephased) < 1e-9);
}

TEST_CASE("mixed-state measurement returns a density matrix") {
    Rng rng(66);
    DensityMatrix rho(2, test::random_density(4, rng));
    MeasureOutcome mo = measure_qubits(rho, {0}, rng);
    const auto& post = std::get<DensityMatrix>(mo.post_state);
    CHECK(std::abs(post.mat().trace().real() - 1.0) < 1e-10);
}

TEST_CASE("register size limits") {
    CHECK_THROWS(StateVector(21, CVector::Zero(1)));
    CHECK_THROWS(DensityMatrix(11, CMatrix::Zero(1, 1)));
}
