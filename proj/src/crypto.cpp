#include "qpe/crypto.hpp"

#include <cmath>
#include <stdexcept>

#include "qpe/circuit.hpp"
#include "qpe/gates.hpp"
#include "qpe/linalg.hpp"

namespace qpe {

namespace {

CMatrix proj(int bit) {
    CMatrix p = CMatrix::Zero(2, 2);
    p(bit, bit) = 1.0;
    return p;
}

CMatrix id(Eigen::Index d) { return CMatrix::Identity(d, d); }

CMatrix singlet_density() {
    CVector psi = CVector::Zero(4);
    psi(1) = 1.0 / std::sqrt(2.0);
    psi(2) = -1.0 / std::sqrt(2.0);
    return psi * psi.adjoint();
}

// Encoding E = |0><0|_a (x) I_b (x) I_eps + |1><1|_a (x) I_b (x) U_eps,
// decoding D = I_a (x) |0><0|_b (x) U_eps^dag + I_a (x) |1><1|_b (x) I_eps.
CMatrix encode_op(const CMatrix& u_eps) {
    return tensor_product(tensor_product(proj(0), id(2)), id(4)) +
           tensor_product(tensor_product(proj(1), id(2)), u_eps);
}

CMatrix decode_op(const CMatrix& u_eps) {
    return tensor_product(tensor_product(id(2), proj(0)), CMatrix(u_eps.adjoint())) +
           tensor_product(tensor_product(id(2), proj(1)), id(4));
}

void check_density2(const CMatrix& rho, const char* who) {
    if (rho.rows() != 2 || rho.cols() != 2 || !is_density(rho, 1e-9))
        throw std::invalid_argument(std::string(who) + ": 2x2 density operator required");
}

}  // namespace

AuthSession AuthSession::standard(double p_mix) {
    return with_u_eps(tensor_product(gate("H").matrix, id(2)) * gate("CNOT").matrix, p_mix);
}

AuthSession AuthSession::with_u_eps(const CMatrix& u_eps, double p_mix) {
    if (u_eps.rows() != 4 || !is_unitary(u_eps))
        throw std::invalid_argument("AuthSession: 4x4 unitary U_eps required");
    if (!(p_mix >= 0.0 && p_mix <= 1.0))
        throw std::domain_error("AuthSession: p_mix in [0,1] required");
    AuthSession s;
    s.u_eps = u_eps;
    s.p_mix = p_mix;
    s.key_state = (1.0 - p_mix) * singlet_density() + p_mix * id(4) / 4.0;
    return s;
}

DensityMatrix auth_encode(const AuthSession& session, const TaggedMessage& msg) {
    check_density2(msg.rho_m, "auth_encode");
    check_density2(msg.rho_t, "auth_encode");
    CMatrix rho = tensor_product(session.key_state, tensor_product(msg.rho_m, msg.rho_t));
    const CMatrix e = encode_op(session.u_eps);
    return DensityMatrix(4, e * rho * e.adjoint());
}

TaggedMessage auth_decode(const AuthSession& session, const DensityMatrix& global) {
    if (global.n_qubits() != 4) throw std::invalid_argument("auth_decode: 4-qubit state required");
    const CMatrix d = decode_op(session.u_eps);
    CMatrix dec = d * global.mat() * d.adjoint();
    CMatrix rho_eps = partial_trace(dec, 4, {0, 1});
    TaggedMessage out;
    out.rho_m = partial_trace(rho_eps, 2, {1});
    out.rho_t = partial_trace(rho_eps, 2, {0});
    return out;
}

double auth_verify(const TaggedMessage& msg) { return msg.rho_t(0, 0).real(); }

AuthAttackResult auth_attack_separable(const CMatrix& u_m, const CMatrix& u_t, const CMatrix& r,
                                       const TaggedMessage& msg, double p_mix) {
    if (u_m.rows() != 2 || u_t.rows() != 2 || !is_unitary(u_m) || !is_unitary(u_t))
        throw std::invalid_argument("auth_attack_separable: separable U_eps = U_M (x) U_T required");
    if (r.rows() != 2 || !is_unitary(r))
        throw std::invalid_argument("auth_attack_separable: 2x2 unitary R required");

    AuthSession session = AuthSession::with_u_eps(tensor_product(u_m, u_t), p_mix);
    DensityMatrix enc = auth_encode(session, msg);
    // Eve touches only the in-flight tagged message: Q_E = R (x) I on (M, T).
    CMatrix q = tensor_product(tensor_product(id(2), id(2)), tensor_product(r, id(2)));
    DensityMatrix attacked(4, q * enc.mat() * q.adjoint());
    TaggedMessage dec = auth_decode(session, attacked);

    AuthAttackResult out;
    out.tag_marginal = dec.rho_t;
    out.message_marginal = dec.rho_m;
    out.tag_fidelity = dec.rho_t(0, 0).real();
    out.message_trace_distance = trace_distance(dec.rho_m, msg.rho_m);
    return out;
}

namespace {

// Syndrome of the four correctable error classes, a bit most significant.
constexpr int kSyndromeOfFlip[4] = {0b00, 0b10, 0b11, 0b01};  // none, d1, d2, d3

CMatrix flip_operator(int which) {  // 0 none, 1..3 X on that data qubit
    const CMatrix x = gate("X").matrix;
    CMatrix op = id(8);
    if (which == 1) op = tensor_product(tensor_product(x, id(2)), id(2));
    if (which == 2) op = tensor_product(tensor_product(id(2), x), id(2));
    if (which == 3) op = tensor_product(tensor_product(id(2), id(2)), x);
    return op;
}

// Decode & correct block on (d1 d2 d3 a b): syndrome extraction
// a = d1+d2, b = d2+d3, then the syndrome-controlled inverse flip.
const CMatrix& decode_block() {
    static const CMatrix block = [] {
        Circuit syn(5);
        syn.add(gate("CNOT"), {0, 3});
        syn.add(gate("CNOT"), {1, 3});
        syn.add(gate("CNOT"), {1, 4});
        syn.add(gate("CNOT"), {2, 4});
        CMatrix extract = circuit_unitary(syn);

        CMatrix correct = CMatrix::Zero(32, 32);
        for (int s = 0; s < 4; ++s) {
            int which = 0;
            for (int w = 0; w < 4; ++w)
                if (kSyndromeOfFlip[w] == s) which = w;
            CMatrix ab = CMatrix::Zero(4, 4);
            ab(s, s) = 1.0;
            correct += tensor_product(flip_operator(which), ab);
        }
        return CMatrix(correct * extract);
    }();
    return block;
}

StateVector embed_with_ancilla(const StateVector& state3, int ab) {
    CVector anc = CVector::Zero(4);
    anc(ab) = 1.0;
    return StateVector(5, tensor_product(state3.amps(), anc));
}

StateVector codeword(Complex alpha, Complex beta) {
    CVector v = CVector::Zero(8);
    v(0) = alpha;
    v(7) = beta;
    return StateVector(3, std::move(v));
}

}  // namespace

StegoDecodeResult stego_decode(const StateVector& state3) {
    if (state3.n_qubits() != 3) throw std::invalid_argument("stego_decode: 3-qubit state required");
    StateVector full = embed_with_ancilla(state3, 0);
    StateVector out(5, decode_block() * full.amps());

    auto dist = outcome_distribution(out, {3, 4});
    int best = 0;
    for (int s = 1; s < 4; ++s)
        if (dist[s].second > dist[best].second) best = s;

    // For code + single-flip inputs the syndrome is deterministic.
    CVector data = CVector::Zero(8);
    for (int d = 0; d < 8; ++d) data(d) = out.amps()(d * 4 + best);
    const double norm = data.norm();
    if (norm > 0) data /= norm;
    return StegoDecodeResult{best, StateVector(3, std::move(data))};
}

StateVector stego_insert(Complex alpha, Complex beta, int message) {
    if (message < 0 || message > 3) throw std::invalid_argument("stego_insert: 2-bit message");
    StateVector full = embed_with_ancilla(codeword(alpha, beta), message);
    CVector inserted = decode_block().adjoint() * full.amps();
    // Ancillas return to |00>; keep the data qubits.
    CVector data = CVector::Zero(8);
    for (int d = 0; d < 8; ++d) data(d) = inserted(d * 4);
    return StateVector(3, std::move(data));
}

StateVector stego_watermark(Complex alpha, Complex beta, const std::array<Complex, 4>& tag) {
    CVector anc(4);
    double norm2 = 0.0;
    for (int s = 0; s < 4; ++s) {
        anc(s) = tag[s];
        norm2 += std::norm(tag[s]);
    }
    if (std::abs(norm2 - 1.0) > kStructTol)
        throw std::invalid_argument("stego_watermark: tag amplitudes must be normalized");
    StateVector full(5, tensor_product(codeword(alpha, beta).amps(), anc));
    CVector inserted = decode_block().adjoint() * full.amps();
    CVector data = CVector::Zero(8);
    for (int d = 0; d < 8; ++d) data(d) = inserted(d * 4);
    return StateVector(3, std::move(data));
}

WatermarkRecovery stego_recover_watermark(const StateVector& state3) {
    StateVector full = embed_with_ancilla(state3, 0);
    CVector out = decode_block() * full.amps();

    // out = (alpha|000> + beta|111>) (x) tag; read the rank-1 factorization.
    Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        out.data(), 8, 4);
    Complex alpha_t[4], beta_t[4];
    for (int s = 0; s < 4; ++s) {
        alpha_t[s] = m(0, s);
        beta_t[s] = m(7, s);
    }
    WatermarkRecovery rec;
    int ref = 0;
    for (int s = 1; s < 4; ++s)
        if (std::norm(alpha_t[s]) + std::norm(beta_t[s]) >
            std::norm(alpha_t[ref]) + std::norm(beta_t[ref]))
            ref = s;

    // Phase convention: logical carries the phase of the largest tag entry.
    const Complex aref = alpha_t[ref], bref = beta_t[ref];
    const double tmag = std::sqrt(std::norm(aref) + std::norm(bref));
    rec.logical = {aref / tmag, bref / tmag};
    const Complex big = std::abs(rec.logical[0]) >= std::abs(rec.logical[1]) ? rec.logical[0]
                                                                             : rec.logical[1];
    const Complex* row = std::abs(rec.logical[0]) >= std::abs(rec.logical[1]) ? alpha_t : beta_t;
    for (int s = 0; s < 4; ++s) rec.tag[s] = row[s] / big;
    // Renormalize the recovered tag.
    double n2 = 0.0;
    for (auto& t : rec.tag) n2 += std::norm(t);
    for (auto& t : rec.tag) t /= std::sqrt(n2);
    return rec;
}

SuperdenseResult superdense(int message) {
    if (message < 0 || message > 3) throw std::invalid_argument("superdense: 2-bit message");
    // Shared |Phi+>, Alice holds qubit 0.
    CVector bell = CVector::Zero(4);
    bell(0) = 1.0 / std::sqrt(2.0);
    bell(3) = 1.0 / std::sqrt(2.0);
    StateVector st(2, std::move(bell));

    // 00 -> I, 01 -> X, 10 -> Z, 11 -> XZ on Alice's half.
    const CMatrix x = gate("X").matrix, z = gate("Z").matrix;
    CMatrix op = id(2);
    if (message == 1) op = x;
    if (message == 2) op = z;
    if (message == 3) op = x * z;
    st = apply(st, op, {0});

    SuperdenseResult out;
    out.eve_marginal = partial_trace(to_density(st).mat(), 2, {1});

    // Bob: Bell measurement = CNOT, H, computational readout.
    st = apply(st, gate("CNOT").matrix, {0, 1});
    st = apply(st, gate("H").matrix, {0});
    auto dist = outcome_distribution(st, {0, 1});
    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (dist[i].second > dist[best].second) best = i;
    out.decoded = best;
    return out;
}

}  // namespace qpe
