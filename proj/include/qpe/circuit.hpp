#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qpe/gates.hpp"
#include "qpe/state.hpp"

namespace qpe {

/// Gate classes the noise model can act on.
enum class GateClass { Rz, Rx, ZZ, XX, Other };

GateClass classify_gate(const std::string& name);
std::string to_string(GateClass c);

struct CircuitOp {
    Gate gate;
    std::vector<int> targets;
    std::optional<GateClass> noise_class;  // overrides name-based classification
};

struct Circuit {
    int n_qubits = 0;
    std::vector<CircuitOp> ops;

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {}

    Circuit& add(const Gate& g, std::vector<int> targets,
                 std::optional<GateClass> noise_class = std::nullopt);
    Circuit& add(const std::string& name, const std::vector<double>& params,
                 std::vector<int> targets);

    /// Reversed ops with adjoint gates.
    Circuit inverse() const;

    /// One op per line: "GATE(params) q_i q_j".
    std::string dump() const;
};

StateVector run(const Circuit& c, StateVector state);
DensityMatrix run(const Circuit& c, DensityMatrix state);

/// Dense unitary of the whole circuit (small registers only).
CMatrix circuit_unitary(const Circuit& c);

/// QFT over Z_{2^m} from the product representation: H plus controlled-R_k
/// ladder, optional final swaps to undo the bit reversal. With truncate_k
/// set, controlled-R_k gates with k >= truncate_k are dropped (AQFT).
Circuit build_qft(int m, std::optional<int> truncate_k = std::nullopt,
                  bool include_final_swaps = true);

struct GroverOperators {
    CMatrix oracle;     // diag(+-1), -1 on marked labels
    CMatrix diffusion;  // H^n (2|0><0| - I) H^n
};

GroverOperators build_grover_iteration(int n, const std::set<std::uint64_t>& marks);

}  // namespace qpe
