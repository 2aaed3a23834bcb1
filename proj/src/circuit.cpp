#include "qpe/circuit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qpe/linalg.hpp"

namespace qpe {

GateClass classify_gate(const std::string& name) {
    if (name == "Rz" || name == "Rk" || name == "P") return GateClass::Rz;
    if (name == "Rx") return GateClass::Rx;
    if (name == "ZZ") return GateClass::ZZ;
    if (name == "XX") return GateClass::XX;
    return GateClass::Other;
}

std::string to_string(GateClass c) {
    switch (c) {
        case GateClass::Rz: return "Rz";
        case GateClass::Rx: return "Rx";
        case GateClass::ZZ: return "ZZ";
        case GateClass::XX: return "XX";
        default: return "Other";
    }
}

Circuit& Circuit::add(const Gate& g, std::vector<int> targets,
                      std::optional<GateClass> noise_class) {
    if (static_cast<int>(targets.size()) != g.arity)
        throw std::invalid_argument("Circuit::add: target count != gate arity");
    ops.push_back(CircuitOp{g, std::move(targets), noise_class});
    return *this;
}

Circuit& Circuit::add(const std::string& name, const std::vector<double>& params,
                      std::vector<int> targets) {
    return add(gate(name, params), std::move(targets));
}

Circuit Circuit::inverse() const {
    Circuit inv(n_qubits);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        Gate g = it->gate;
        g.matrix = it->gate.matrix.adjoint();
        // Self-adjoint library gates keep their name; rotations flip the angle.
        if ((g.name == "Rx" || g.name == "Ry" || g.name == "Rz" || g.name == "P" ||
             g.name == "ZZ" || g.name == "XX" || g.name == "Rk") &&
            g.params.size() == 1) {
            g.params[0] = -g.params[0];
        } else if (max_abs_diff(g.matrix, it->gate.matrix) > kGateTol) {
            g.name = it->gate.name + "^";
        }
        inv.ops.push_back(CircuitOp{std::move(g), it->targets, it->noise_class});
    }
    return inv;
}

std::string Circuit::dump() const {
    std::ostringstream os;
    for (const auto& op : ops) {
        os << op.gate.name;
        if (!op.gate.params.empty()) {
            os << '(';
            for (std::size_t i = 0; i < op.gate.params.size(); ++i) {
                if (i) os << ',';
                os << op.gate.params[i];
            }
            os << ')';
        }
        for (int t : op.targets) os << " q" << t;
        os << '\n';
    }
    return os.str();
}

StateVector run(const Circuit& c, StateVector state) {
    if (state.n_qubits() != c.n_qubits)
        throw std::invalid_argument("run: register size mismatch");
    for (const auto& op : c.ops) state = apply(state, op.gate.matrix, op.targets);
    return state;
}

DensityMatrix run(const Circuit& c, DensityMatrix state) {
    if (state.n_qubits() != c.n_qubits)
        throw std::invalid_argument("run: register size mismatch");
    for (const auto& op : c.ops) state = apply(state, op.gate.matrix, op.targets);
    return state;
}

CMatrix circuit_unitary(const Circuit& c) {
    const Eigen::Index dim = Eigen::Index(1) << c.n_qubits;
    CMatrix u = CMatrix::Identity(dim, dim);
    for (const auto& op : c.ops) {
        const int p = static_cast<int>(op.targets.size());
        const Eigen::Index sub = Eigen::Index(1) << p;
        std::vector<std::uint64_t> bit(p);
        std::uint64_t mask = 0;
        for (int i = 0; i < p; ++i) {
            bit[i] = std::uint64_t(1) << (c.n_qubits - 1 - op.targets[i]);
            mask |= bit[i];
        }
        std::vector<std::uint64_t> offset(sub);
        for (Eigen::Index s = 0; s < sub; ++s) {
            std::uint64_t off = 0;
            for (int i = 0; i < p; ++i)
                if (s >> (p - 1 - i) & 1) off |= bit[i];
            offset[s] = off;
        }
        CMatrix next = CMatrix::Zero(dim, dim);
        for (Eigen::Index col = 0; col < dim; ++col) {
            for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(dim); ++base) {
                if (base & mask) continue;
                for (Eigen::Index r = 0; r < sub; ++r) {
                    Complex acc = 0.0;
                    for (Eigen::Index s = 0; s < sub; ++s)
                        acc += op.gate.matrix(r, s) * u(base | offset[s], col);
                    next(base | offset[r], col) = acc;
                }
            }
        }
        u = std::move(next);
    }
    return u;
}

Circuit build_qft(int m, std::optional<int> truncate_k, bool include_final_swaps) {
    if (m < 1) throw std::invalid_argument("build_qft: m >= 1 required");
    if (truncate_k && *truncate_k < 2) throw std::invalid_argument("build_qft: truncate_k >= 2");
    Circuit c(m);
    for (int i = 0; i < m; ++i) {
        c.add(gate("H"), {i});
        for (int j = i + 1; j < m; ++j) {
            const int k = j - i + 1;
            if (truncate_k && k >= *truncate_k) continue;
            c.add(controlled(gate("Rk", {static_cast<double>(k)})), {j, i});
        }
    }
    if (include_final_swaps)
        for (int i = 0; i < m / 2; ++i) c.add(gate("SWAP"), {i, m - 1 - i});
    return c;
}

GroverOperators build_grover_iteration(int n, const std::set<std::uint64_t>& marks) {
    if (n < 1 || n > 12) throw std::invalid_argument("build_grover_iteration: 1 <= n <= 12");
    if (marks.empty()) throw std::invalid_argument("build_grover_iteration: no marked items");
    const Eigen::Index dim = Eigen::Index(1) << n;
    for (auto x : marks)
        if (x >= static_cast<std::uint64_t>(dim))
            throw std::out_of_range("build_grover_iteration: mark out of range");

    CMatrix oracle = CMatrix::Identity(dim, dim);
    for (auto x : marks) oracle(x, x) = -1.0;

    CMatrix h1 = gate("H").matrix;
    CMatrix hn = h1;
    for (int i = 1; i < n; ++i) hn = tensor_product(hn, h1);
    CMatrix reflect0 = -CMatrix::Identity(dim, dim);
    reflect0(0, 0) = 1.0;
    return GroverOperators{std::move(oracle), hn * reflect0 * hn};
}

}  // namespace qpe
