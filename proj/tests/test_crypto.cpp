#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qpe/crypto.hpp"
#include "qpe/gates.hpp"
#include "qpe/linalg.hpp"
#include "test_util.hpp"

using namespace qpe;

namespace {

TaggedMessage make_message(const CMatrix& rho_m) {
    TaggedMessage msg;
    msg.rho_m = rho_m;
    msg.rho_t = CMatrix::Zero(2, 2);
    msg.rho_t(0, 0) = 1.0;
    return msg;
}

}  // namespace

TEST_CASE("auth encode/decode identity with a pure key") {
    Rng rng(1);
    AuthSession session = AuthSession::standard();
    for (int rep = 0; rep < 10; ++rep) {
        TaggedMessage msg = make_message(test::random_density(2, rng));
        DensityMatrix global = auth_encode(session, msg);
        CHECK(std::abs(global.mat().trace().real() - 1.0) < 1e-12);
        TaggedMessage dec = auth_decode(session, global);
        CHECK(max_abs_diff(dec.rho_m, msg.rho_m) < 1e-12);
        CHECK(max_abs_diff(dec.rho_t, msg.rho_t) < 1e-12);
        CHECK(auth_verify(dec) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("U_eps = I leaves the global state unchanged") {
    Rng rng(2);
    AuthSession session = AuthSession::with_u_eps(CMatrix::Identity(4, 4));
    TaggedMessage msg = make_message(test::random_density(2, rng));
    DensityMatrix global = auth_encode(session, msg);
    CMatrix expect =
        tensor_product(session.key_state, tensor_product(msg.rho_m, msg.rho_t));
    CHECK(max_abs_diff(global.mat(), expect) < 1e-12);
}

TEST_CASE("Eve sees the half-half mixture") {
    Rng rng(3);
    AuthSession session = AuthSession::standard();
    TaggedMessage msg = make_message(test::random_density(2, rng));
    DensityMatrix enc = auth_encode(session, msg);
    CMatrix eve = partial_trace(enc.mat(), 4, {0, 1});
    CMatrix rho_eps = tensor_product(msg.rho_m, msg.rho_t);
    CMatrix expect = 0.5 * (rho_eps + session.u_eps * rho_eps * session.u_eps.adjoint());
    CHECK(max_abs_diff(eve, expect) < 1e-12);
}

TEST_CASE("verify on degenerate tags") {
    TaggedMessage bad;
    bad.rho_m = CMatrix::Identity(2, 2) / 2.0;
    bad.rho_t = CMatrix::Zero(2, 2);
    bad.rho_t(1, 1) = 1.0;
    CHECK(auth_verify(bad) == doctest::Approx(0.0));
    bad.rho_t = CMatrix::Identity(2, 2) / 2.0;
    CHECK(auth_verify(bad) == doctest::Approx(0.5));
}

TEST_CASE("mixed key degrades gracefully; identity coding set is immune") {
    Rng rng(4);
    CMatrix rho_m = test::random_density(2, rng);
    for (double p : {0.0, 0.2, 0.5, 1.0}) {
        AuthSession session = AuthSession::standard(p);
        TaggedMessage dec = auth_decode(session, auth_encode(session, make_message(rho_m)));
        const double accept = auth_verify(dec);
        if (p == 0.0) {
            CHECK(accept == doctest::Approx(1.0).epsilon(1e-12));
        } else {
            CHECK(accept < 1.0);
            CHECK(accept > 0.5);  // unpleasantly high even for a very corrupted key
        }

        AuthSession idsession = AuthSession::with_u_eps(CMatrix::Identity(4, 4), p);
        TaggedMessage deci = auth_decode(idsession, auth_encode(idsession, make_message(rho_m)));
        CHECK(max_abs_diff(deci.rho_m, rho_m) < 1e-12);
        CHECK(auth_verify(deci) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("separable attack keeps the tag and damages the message") {
    Rng rng(5);
    const CMatrix x = gate("X").matrix;
    CMatrix tag_valid = CMatrix::Zero(2, 2);
    tag_valid(0, 0) = 1.0;

    // R = X on |0><0|: tag intact, message visibly changed.
    TaggedMessage msg = make_message([&] {
        CMatrix m = CMatrix::Zero(2, 2);
        m(0, 0) = 1.0;
        return m;
    }());
    AuthAttackResult res = auth_attack_separable(test::random_unitary(2, rng), gate("H").matrix,
                                                 x, msg);
    CHECK(max_abs_diff(res.tag_marginal, tag_valid) < 1e-12);
    CHECK(res.tag_fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.message_trace_distance > 1e-6);

    // R = I: nothing changes.
    AuthAttackResult idres = auth_attack_separable(gate("H").matrix, gate("S").matrix,
                                                   CMatrix::Identity(2, 2), msg);
    CHECK(idres.message_trace_distance < 1e-12);
    CHECK(max_abs_diff(idres.tag_marginal, tag_valid) < 1e-12);
}

TEST_CASE("tag invariance holds for 100 random attack unitaries") {
    Rng rng(6);
    CMatrix tag_valid = CMatrix::Zero(2, 2);
    tag_valid(0, 0) = 1.0;
    TaggedMessage msg = make_message(test::random_density(2, rng));
    for (int rep = 0; rep < 100; ++rep) {
        CMatrix u_m = test::random_unitary(2, rng);
        CMatrix u_t = test::random_unitary(2, rng);
        CMatrix r = test::random_unitary(2, rng);
        AuthAttackResult res = auth_attack_separable(u_m, u_t, r, msg);
        CHECK(max_abs_diff(res.tag_marginal, tag_valid) < 1e-12);
    }
}

TEST_CASE("stego decode syndrome table") {
    Rng rng(7);
    const Complex a(0.6, 0.0), b(0.0, 0.8);
    const CMatrix x = gate("X").matrix;
    // X^(i) on the codeword -> syndrome per table, corrected codeword back.
    const int expected_syndrome[4] = {0b00, 0b10, 0b11, 0b01};
    for (int which = 0; which < 4; ++which) {
        StateVector code = stego_insert(a, b, 0);  // clean codeword
        StateVector sent = which == 0 ? code : apply(code, x, {which - 1});
        StegoDecodeResult dec = stego_decode(sent);
        CHECK(dec.syndrome == expected_syndrome[which]);
        CVector expect = CVector::Zero(8);
        expect(0) = a;
        expect(7) = b;
        CHECK((dec.corrected.amps() - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("stego insert encodes messages as flips and round-trips") {
    Rng rng(8);
    // message 00 is the clean codeword; message 10 flips the first qubit.
    StateVector clean = stego_insert(1.0, 0.0, 0b00);
    CHECK(std::abs(clean.amps()(0) - 1.0) < 1e-12);
    StateVector flipped = stego_insert(1.0, 0.0, 0b10);
    CHECK(std::abs(flipped.amps()(4) - 1.0) < 1e-12);  // |100>

    for (int rep = 0; rep < 100; ++rep) {
        CVector amp = test::random_state(2, rng);
        for (int msg = 0; msg < 4; ++msg) {
            StateVector carrier = stego_insert(amp(0), amp(1), msg);
            StegoDecodeResult dec = stego_decode(carrier);
            CHECK(dec.syndrome == msg);
            CVector expect = CVector::Zero(8);
            expect(0) = amp(0);
            expect(7) = amp(1);
            CHECK((dec.corrected.amps() - expect).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("watermark round trip") {
    Rng rng(9);
    // tag (1,0,0,0) is exactly message 00.
    StateVector w = stego_watermark(0.6, 0.8, {1.0, 0.0, 0.0, 0.0});
    StateVector ins = stego_insert(0.6, 0.8, 0);
    CHECK((w.amps() - ins.amps()).cwiseAbs().maxCoeff() < 1e-12);

    for (int rep = 0; rep < 20; ++rep) {
        CVector amp = test::random_state(2, rng);
        CVector tag = test::random_state(4, rng);
        StateVector carrier =
            stego_watermark(amp(0), amp(1), {tag(0), tag(1), tag(2), tag(3)});
        WatermarkRecovery rec = stego_recover_watermark(carrier);
        CVector got_logical(2), got_tag(4);
        got_logical << rec.logical[0], rec.logical[1];
        got_tag << rec.tag[0], rec.tag[1], rec.tag[2], rec.tag[3];
        CHECK(equal_up_to_global_phase(got_logical, CVector(amp), 1e-10));
        CHECK(equal_up_to_global_phase(got_tag, tag, 1e-10));
    }
}

TEST_CASE("third-party flip disturbs a uniform watermark") {
    // Needs alpha != beta: a flip permutes tag slots against the logical
    // amplitudes, which is invisible when the codeword is symmetric.
    const std::array<Complex, 4> uniform{0.5, 0.5, 0.5, 0.5};
    StateVector carrier = stego_watermark(0.6, 0.8, uniform);
    const CMatrix x = gate("X").matrix;
    for (int q = 0; q < 3; ++q) {
        StateVector tampered = apply(carrier, x, {q});
        WatermarkRecovery rec = stego_recover_watermark(tampered);
        CVector got(4), want(4);
        got << rec.tag[0], rec.tag[1], rec.tag[2], rec.tag[3];
        want << 0.5, 0.5, 0.5, 0.5;
        CHECK_FALSE(equal_up_to_global_phase(got, want, 1e-6));
    }
}

TEST_CASE("superdense coding") {
    for (int msg = 0; msg < 4; ++msg) {
        SuperdenseResult r = superdense(msg);
        CHECK(r.decoded == msg);
        CHECK(max_abs_diff(r.eve_marginal, CMatrix(CMatrix::Identity(2, 2) / 2.0)) < 1e-12);
    }
    CHECK_THROWS(superdense(4));
}
