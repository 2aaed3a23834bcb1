#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpe/circuit.hpp"
#include "qpe/rng.hpp"
#include "qpe/state.hpp"

namespace qpe {

/// A phase estimation instance: either an abstract phase oracle phi in [0,1)
/// (ancilla kick applied directly, no system register) or an explicit unitary
/// with an initial-state preparer.
struct PhaseProblem {
    std::optional<double> oracle_phi;
    CMatrix unitary;                       // dim 2^n when set
    std::function<StateVector()> prepare;  // fresh system state per use
    int m = 4;                             // bits requested
    bool reuse_register = false;           // keep the system register alive across iterations

    static PhaseProblem from_phase(double phi, int m);
    static PhaseProblem from_unitary(const CMatrix& u, const StateVector& init, int m);

    bool is_oracle() const { return oracle_phi.has_value(); }
    int system_qubits() const;
};

/// Per-bit repetition plan: bit k measured N_k times, majority voted.
struct RepetitionPlan {
    std::vector<double> p_k;       // per-bit single-shot success, index k-1
    std::vector<double> p_target;  // per-bit target after voting
    std::vector<int> n_k;          // odd repetition counts
    long long total_measurements = 0;
};

/// Build a plan reaching overall error <= eps given per-bit probabilities.
RepetitionPlan plan_from_probabilities(const std::vector<double>& p_k, double eps);

struct BitRecord {
    int k = 0;          // bit index, 1-based (k = m measured first in IPEA)
    double omega = 0.0; // feedback angle used
    int n_k = 1;        // repetitions
    double freq = 0.0;  // frequency of outcome '0'
};

struct PhaseRunResult {
    std::string algorithm;
    int m = 0;
    std::vector<int> bits;  // x_1 .. x_m (x_1 most significant)
    double estimate = 0.0;  // in [0, 1)
    long long shots_used = 0;
    std::vector<BitRecord> per_bit;
    std::optional<double> phi_true;
    std::optional<bool> success;            // |estimate - phi| mod 1 < 2^-m when phi known
    bool inconsistent = false;              // Kitaev: arc intersection conflict seen
    std::vector<double> iteration_phases;   // Aspuru-Guzik: per-iteration 4-bit results
};

/// p_j = sin^2(pi(2^m phi - j)) / (2^{2m} sin^2(pi(phi - j/2^m))), the exact
/// outcome distribution of the QFT-based estimator; p_j = 1 at phi = j/2^m.
double analytic_pj(double phi, int m, std::uint64_t j);

/// (P_down, P_up) for remainder delta in [0,1): probabilities of the two
/// closest m-bit estimates.
std::pair<double, double> analytic_bounds(double delta, int m);

/// Exact outcome distribution over j of the QFT-based circuit (H layer,
/// controlled-U^{2^k} ladder, inverse QFT): amplitude propagation, not the
/// closed form.
std::vector<double> qft_pea_distribution(const PhaseProblem& problem);

std::vector<std::uint64_t> qft_pea(const PhaseProblem& problem, Rng& rng, int shots);

PhaseRunResult ipea(const PhaseProblem& problem, Rng& rng,
                    const RepetitionPlan* plan = nullptr);

/// Exact single-iteration ancilla statistics of the IPEA: P(x_k = 0) given
/// the feedback angle. Exposed for analytics and tests.
double ipea_step_prob0(const PhaseProblem& problem, int k, double omega);

PhaseRunResult kitaev_pea(const PhaseProblem& problem, Rng& rng, int trials_per_bit);

/// Aspuru-Guzik recursive scheme with a fixed-size ancilla register.
/// deterministic = true replaces sampling with the most likely outcome per
/// iteration (exact distribution mode).
PhaseRunResult aspuru_guzik(const PhaseProblem& problem, Rng& rng, int ancilla_bits = 4,
                            bool deterministic = false);

/// All continued-fraction convergents of a/q in lowest terms.
std::vector<std::pair<long long, long long>> continued_fraction(long long a, long long q);

/// Permutation unitary |y> -> |k y mod N> on y < N, identity above.
CMatrix mod_mult_unitary(long long k, long long n, int n_bits);

struct OrderFindingResult {
    long long order = 0;
    std::map<long long, int> candidate_counts;
    int shots = 0;
};

/// Phase estimation on modular multiplication with input |1>, continued
/// fraction postprocessing, candidates verified by k^r = 1 mod N.
OrderFindingResult order_finding_demo(long long k, long long n, int m, Rng& rng, int shots);

/// (prod_j e^{-i H_j t/q})^q; converges to e^{-i (sum H_j) t} as q grows.
CMatrix trotter_evolve(const std::vector<CMatrix>& terms, double t, int q);

struct EnergyEstimate {
    double energy = 0.0;
    double phi = 0.0;           // dominant phase estimate
    double dominant_freq = 0.0; // fraction of shots voting for it
    PhaseRunResult run;
};

/// Abrams-Lloyd: estimate an eigenvalue of h from U = e^{-i h t};
/// lambda = 2 pi (1 - phi) / t.
EnergyEstimate abrams_lloyd_energy(const CMatrix& h, const StateVector& approx_eigvec, double t,
                                   int m, Rng& rng, int shots);

/// Burgh-Bartlett phase reference alignment: IPEA against the oracle
/// 2*phi mod 1 (each qubit exchange applies R_z(2 phi)); the returned
/// estimate lives in [0, 1/2) (protocol ambiguity phi ~ phi + 1/2).
PhaseRunResult bb_alignment(double phi_true, int m, Rng& rng, int shots_per_bit = 1);

struct RgBitResult {
    int bit = 0;
    double p0_exact = 0.0;
    double freq0 = 0.0;
    int shots = 0;
};

/// Rudolph-Grover spatial axis estimation, k-th bit of theta:
/// P0 = cos^2(2^{k-1} theta). No feedback variant exists.
RgBitResult rg_theta_bit(double theta, int k, Rng& rng, int shots);

}  // namespace qpe
