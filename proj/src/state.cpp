#include "qpe/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qpe {

namespace {

void check_targets(int n_qubits, const std::vector<int>& targets) {
    std::set<int> seen;
    for (int t : targets) {
        if (t < 0 || t >= n_qubits) throw std::out_of_range("target qubit out of range");
        if (!seen.insert(t).second) throw std::invalid_argument("duplicate target qubit");
    }
}

// Bit shift of qubit q in an n-qubit basis index (MSB-first labels).
inline int shift_of(int n, int q) { return n - 1 - q; }

std::string label_of(std::uint64_t bits, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i)
        if (bits >> (n - 1 - i) & 1) s[i] = '1';
    return s;
}

}  // namespace

StateVector::StateVector(int n_qubits, CVector amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {
    if (n_qubits < 1 || n_qubits > kMaxPureQubits)
        throw std::invalid_argument("StateVector: unsupported register size");
    if (amps_.size() != (Eigen::Index(1) << n_qubits))
        throw std::invalid_argument("StateVector: amplitude count != 2^n");
    if (std::abs(amps_.norm() - 1.0) > kStructTol)
        throw std::invalid_argument("StateVector: not normalized");
}

DensityMatrix::DensityMatrix(int n_qubits, CMatrix mat) : n_qubits_(n_qubits), mat_(std::move(mat)) {
    if (n_qubits < 1 || n_qubits > kMaxMixedQubits)
        throw std::invalid_argument("DensityMatrix: unsupported register size");
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    if (mat_.rows() != dim || mat_.cols() != dim)
        throw std::invalid_argument("DensityMatrix: wrong dimension");
    if (!is_density(mat_)) throw std::invalid_argument("DensityMatrix: not a valid density operator");
}

StateVector basis_state(int n, std::string_view label) {
    if (static_cast<int>(label.size()) != n)
        throw std::invalid_argument("basis_state: label length != n");
    std::uint64_t idx = 0;
    for (char c : label) {
        if (c != '0' && c != '1') throw std::invalid_argument("basis_state: label must be bits");
        idx = (idx << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return basis_state(n, idx);
}

StateVector basis_state(int n, std::uint64_t index) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    if (index >= static_cast<std::uint64_t>(dim)) throw std::out_of_range("basis_state: index");
    CVector v = CVector::Zero(dim);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(n, std::move(v));
}

namespace {

// Core kernel: new_amps = (gate embedded on targets) * amps.
CVector apply_to_vector(const CVector& amps, int n, const CMatrix& gate,
                        const std::vector<int>& targets) {
    const int p = static_cast<int>(targets.size());
    const Eigen::Index sub = Eigen::Index(1) << p;
    if (gate.rows() != sub || gate.cols() != sub)
        throw std::invalid_argument("apply: gate dimension != 2^|targets|");

    std::vector<std::uint64_t> bit(p);
    std::uint64_t mask = 0;
    for (int i = 0; i < p; ++i) {
        bit[i] = std::uint64_t(1) << shift_of(n, targets[i]);
        mask |= bit[i];
    }
    // Sub-index s -> offset within a group of 2^p coupled amplitudes.
    std::vector<std::uint64_t> offset(sub);
    for (Eigen::Index s = 0; s < sub; ++s) {
        std::uint64_t off = 0;
        for (int i = 0; i < p; ++i)
            if (s >> (p - 1 - i) & 1) off |= bit[i];
        offset[s] = off;
    }

    const std::uint64_t dim = std::uint64_t(1) << n;
    CVector out(amps.size());
    std::vector<Complex> scratch(sub);
    for (std::uint64_t base = 0; base < dim; ++base) {
        if (base & mask) continue;
        for (Eigen::Index s = 0; s < sub; ++s) scratch[s] = amps(base | offset[s]);
        for (Eigen::Index r = 0; r < sub; ++r) {
            Complex acc = 0.0;
            for (Eigen::Index s = 0; s < sub; ++s) acc += gate(r, s) * scratch[s];
            out(base | offset[r]) = acc;
        }
    }
    return out;
}

}  // namespace

StateVector apply(const StateVector& state, const CMatrix& gate, const std::vector<int>& targets) {
    check_targets(state.n_qubits(), targets);
    if (!is_unitary(gate)) throw std::invalid_argument("apply: gate is not unitary");
    return StateVector(state.n_qubits(), apply_to_vector(state.amps(), state.n_qubits(), gate, targets));
}

DensityMatrix apply(const DensityMatrix& state, const CMatrix& gate, const std::vector<int>& targets) {
    check_targets(state.n_qubits(), targets);
    if (!is_unitary(gate)) throw std::invalid_argument("apply: gate is not unitary");
    const int n = state.n_qubits();
    CMatrix m = state.mat();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        m.col(c) = apply_to_vector(m.col(c), n, gate, targets);
    CMatrix mt = m.adjoint();
    for (Eigen::Index c = 0; c < mt.cols(); ++c)
        mt.col(c) = apply_to_vector(mt.col(c), n, gate, targets);
    return DensityMatrix(n, mt.adjoint());
}

namespace {

template <typename ProbFn>
std::vector<std::pair<std::string, double>> marginal(int n, const std::vector<int>& qubits,
                                                     ProbFn&& prob_of_index) {
    const std::size_t nq = qubits.size();
    const std::uint64_t outs = std::uint64_t(1) << nq;
    std::vector<double> probs(outs, 0.0);
    const std::uint64_t dim = std::uint64_t(1) << n;
    for (std::uint64_t i = 0; i < dim; ++i) {
        std::uint64_t o = 0;
        for (std::size_t k = 0; k < nq; ++k)
            if (i >> shift_of(n, qubits[k]) & 1) o |= std::uint64_t(1) << (nq - 1 - k);
        probs[o] += prob_of_index(i);
    }
    std::vector<std::pair<std::string, double>> out;
    out.reserve(outs);
    for (std::uint64_t o = 0; o < outs; ++o) out.emplace_back(label_of(o, nq), probs[o]);
    return out;
}

std::uint64_t sample_outcome(const std::vector<std::pair<std::string, double>>& dist, Rng& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist[i].second;
        if (u < acc) return i;
    }
    return dist.size() - 1;  // guard against rounding at u ~ 1
}

}  // namespace

std::vector<std::pair<std::string, double>> outcome_distribution(const StateVector& state,
                                                                 const std::vector<int>& qubits) {
    check_targets(state.n_qubits(), qubits);
    const auto& amps = state.amps();
    return marginal(state.n_qubits(), qubits, [&](std::uint64_t i) { return std::norm(amps(i)); });
}

std::vector<std::pair<std::string, double>> outcome_distribution(const DensityMatrix& state,
                                                                 const std::vector<int>& qubits) {
    check_targets(state.n_qubits(), qubits);
    const auto& m = state.mat();
    return marginal(state.n_qubits(), qubits, [&](std::uint64_t i) { return m(i, i).real(); });
}

MeasureOutcome measure_qubits(const StateVector& state, const std::vector<int>& qubits, Rng& rng) {
    auto dist = outcome_distribution(state, qubits);
    const std::uint64_t pick = sample_outcome(dist, rng);
    const int n = state.n_qubits();

    std::uint64_t want = 0, mask = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        const std::uint64_t b = std::uint64_t(1) << shift_of(n, qubits[k]);
        mask |= b;
        if (pick >> (qubits.size() - 1 - k) & 1) want |= b;
    }
    CVector post = state.amps();
    for (Eigen::Index i = 0; i < post.size(); ++i)
        if ((static_cast<std::uint64_t>(i) & mask) != want) post(i) = 0.0;
    post /= post.norm();
    return MeasureOutcome{dist[pick].first, dist[pick].second, StateVector(n, std::move(post))};
}

MeasureOutcome measure_qubits(const DensityMatrix& state, const std::vector<int>& qubits, Rng& rng) {
    auto dist = outcome_distribution(state, qubits);
    const std::uint64_t pick = sample_outcome(dist, rng);
    const int n = state.n_qubits();

    std::uint64_t want = 0, mask = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        const std::uint64_t b = std::uint64_t(1) << shift_of(n, qubits[k]);
        mask |= b;
        if (pick >> (qubits.size() - 1 - k) & 1) want |= b;
    }
    CMatrix post = state.mat();
    for (Eigen::Index r = 0; r < post.rows(); ++r)
        for (Eigen::Index c = 0; c < post.cols(); ++c)
            if ((static_cast<std::uint64_t>(r) & mask) != want ||
                (static_cast<std::uint64_t>(c) & mask) != want)
                post(r, c) = 0.0;
    post /= post.trace().real();
    return MeasureOutcome{dist[pick].first, dist[pick].second, DensityMatrix(n, std::move(post))};
}

std::array<double, 3> bloch(const StateVector& state) {
    if (state.n_qubits() != 1) throw std::invalid_argument("bloch: single-qubit states only");
    const Complex a = state.amps()(0), b = state.amps()(1);
    const Complex ab = std::conj(a) * b;
    return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b)};
}

DensityMatrix to_density(const StateVector& state) {
    return DensityMatrix(state.n_qubits(), state.amps() * state.amps().adjoint());
}

double purity(const DensityMatrix& rho) { return (rho.mat() * rho.mat()).trace().real(); }

}  // namespace qpe
