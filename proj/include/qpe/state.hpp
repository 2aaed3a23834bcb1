#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpe/linalg.hpp"
#include "qpe/rng.hpp"
#include "qpe/types.hpp"

namespace qpe {

inline constexpr int kMaxPureQubits = 20;
inline constexpr int kMaxMixedQubits = 10;

/// Pure state of an n-qubit register. Qubit 0 is the most significant bit of
/// basis labels, so |j1 j2 ... jn> prints with j1 leftmost.
class StateVector {
  public:
    StateVector(int n_qubits, CVector amps);

    int n_qubits() const { return n_qubits_; }
    const CVector& amps() const { return amps_; }
    Eigen::Index dim() const { return amps_.size(); }

  private:
    int n_qubits_;
    CVector amps_;
};

class DensityMatrix {
  public:
    DensityMatrix(int n_qubits, CMatrix mat);

    int n_qubits() const { return n_qubits_; }
    const CMatrix& mat() const { return mat_; }

  private:
    int n_qubits_;
    CMatrix mat_;
};

struct MeasureOutcome {
    std::string label;
    double probability = 0.0;
    std::variant<StateVector, DensityMatrix> post_state;
};

StateVector basis_state(int n, std::string_view label);
StateVector basis_state(int n, std::uint64_t index);

/// Embed `gate` on the ordered target qubits (identity elsewhere) and apply.
StateVector apply(const StateVector& state, const CMatrix& gate, const std::vector<int>& targets);
DensityMatrix apply(const DensityMatrix& state, const CMatrix& gate, const std::vector<int>& targets);

/// Exact outcome probabilities of measuring `qubits`, no collapse.
std::vector<std::pair<std::string, double>> outcome_distribution(const StateVector& state,
                                                                 const std::vector<int>& qubits);
std::vector<std::pair<std::string, double>> outcome_distribution(const DensityMatrix& state,
                                                                 const std::vector<int>& qubits);

MeasureOutcome measure_qubits(const StateVector& state, const std::vector<int>& qubits, Rng& rng);
MeasureOutcome measure_qubits(const DensityMatrix& state, const std::vector<int>& qubits, Rng& rng);

/// Bloch vector (x, y, z) of a single-qubit pure state.
std::array<double, 3> bloch(const StateVector& state);

DensityMatrix to_density(const StateVector& state);
double purity(const DensityMatrix& rho);

}  // namespace qpe
