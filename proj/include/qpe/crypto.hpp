#pragma once

#include <array>
#include <utility>

#include "qpe/state.hpp"

namespace qpe {

/// Qubit authentication with a two-qubit entangled key (default singlet).
/// Register order: key qubit a, key qubit b, message M, tag T.
struct AuthSession {
    CMatrix u_eps;        // 4x4 unitary coding-set member on M (x) T
    CMatrix key_state;    // 4x4 density operator of the key pair
    double p_mix = 0.0;   // key = (1-p)|psi><psi| + p I/4

    /// Default session: singlet key, U_eps = (H (x) I) CNOT (entangling).
    static AuthSession standard(double p_mix = 0.0);
    static AuthSession with_u_eps(const CMatrix& u_eps, double p_mix = 0.0);
};

struct TaggedMessage {
    CMatrix rho_m;  // 2x2 message state
    CMatrix rho_t;  // 2x2 tag state; |0><0| is the valid tag
};

/// E rho E^dag with rho = key (x) rho_M (x) rho_T.
DensityMatrix auth_encode(const AuthSession& session, const TaggedMessage& msg);

/// Bob's decoding; returns the decoded tagged message (key traced out).
TaggedMessage auth_decode(const AuthSession& session, const DensityMatrix& global);

/// <0| rho_T |0> after tracing out M.
double auth_verify(const TaggedMessage& msg);

struct AuthAttackResult {
    CMatrix tag_marginal;          // decoded rho_T, exactly |0><0| for separable U_eps
    CMatrix message_marginal;      // decoded rho_M
    double tag_fidelity = 0.0;     // <0| tag |0>
    double message_trace_distance = 0.0;
};

/// Eve applies R (x) I to the in-flight tagged message; defined only for a
/// separable U_eps = U_M (x) U_T.
AuthAttackResult auth_attack_separable(const CMatrix& u_m, const CMatrix& u_t,
                                       const CMatrix& r, const TaggedMessage& msg,
                                       double p_mix = 0.0);

/// 3-qubit repetition-code steganography. Data qubits d1 d2 d3, decode block
/// D = correction * syndrome-extraction acting on (d1 d2 d3 a b); syndromes:
/// 00 none, 10 flip on d1, 11 flip on d2, 01 flip on d3.
struct StegoDecodeResult {
    int syndrome = 0;        // two bits, a most significant
    StateVector corrected;   // 3-qubit codeword alpha|000> + beta|111>
};

StegoDecodeResult stego_decode(const StateVector& state3);

/// Reversed decode block: embed a 2-bit message as a deliberate bit flip.
StateVector stego_insert(Complex alpha, Complex beta, int message);

/// Reversed block applied to logical (x) tag superposition; the tag becomes
/// a watermark spread over the three physical qubits.
StateVector stego_watermark(Complex alpha, Complex beta, const std::array<Complex, 4>& tag);

struct WatermarkRecovery {
    std::array<Complex, 2> logical;
    std::array<Complex, 4> tag;
};

/// Inverse of stego_watermark (exact for states produced by it); phases fixed
/// by the largest tag amplitude.
WatermarkRecovery stego_recover_watermark(const StateVector& state3);

struct SuperdenseResult {
    int decoded = 0;
    CMatrix eve_marginal;  // in-flight qubit as seen on the channel
};

/// Superdense coding of a 2-bit message over a shared |Phi+>; Bob's Bell
/// measurement decodes exactly, Eve's marginal is I/2 for every message.
SuperdenseResult superdense(int message);

}  // namespace qpe
