#include "qpe/linalg.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qpe {

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    return (a - b).cwiseAbs().maxCoeff();
}

bool is_unitary(const CMatrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    CMatrix id = CMatrix::Identity(u.rows(), u.cols());
    return max_abs_diff(u.adjoint() * u, id) <= tol;
}

bool is_hermitian(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return max_abs_diff(a, a.adjoint()) <= tol;
}

bool is_density(const CMatrix& rho, double tol) {
    if (!is_hermitian(rho, tol)) return false;
    if (std::abs(rho.trace() - Complex(1.0)) > tol) return false;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

CMatrix tensor_product(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CVector tensor_product(const CVector& a, const CVector& b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

CMatrix partial_trace(const CMatrix& rho, int n_qubits, const std::set<int>& traced) {
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    if (rho.rows() != dim || rho.cols() != dim)
        throw std::invalid_argument("partial_trace: operator is not 2^n x 2^n");
    for (int q : traced)
        if (q < 0 || q >= n_qubits) throw std::out_of_range("partial_trace: qubit index");

    const int n_keep = n_qubits - static_cast<int>(traced.size());
    const Eigen::Index out_dim = Eigen::Index(1) << n_keep;
    CMatrix out = CMatrix::Zero(out_dim, out_dim);

    // Positions (bit shifts) of kept and traced qubits, MSB-first labels.
    std::vector<int> keep_shift, trace_shift;
    for (int q = 0; q < n_qubits; ++q) {
        const int shift = n_qubits - 1 - q;
        if (traced.count(q))
            trace_shift.push_back(shift);
        else
            keep_shift.push_back(shift);
    }

    const Eigen::Index n_tr = Eigen::Index(1) << trace_shift.size();
    auto expand = [](Eigen::Index bits, const std::vector<int>& shifts) {
        Eigen::Index idx = 0;
        for (std::size_t i = 0; i < shifts.size(); ++i)
            if (bits >> (shifts.size() - 1 - i) & 1) idx |= Eigen::Index(1) << shifts[i];
        return idx;
    };

    for (Eigen::Index r = 0; r < out_dim; ++r) {
        const Eigen::Index r_base = expand(r, keep_shift);
        for (Eigen::Index c = 0; c < out_dim; ++c) {
            const Eigen::Index c_base = expand(c, keep_shift);
            Complex sum = 0.0;
            for (Eigen::Index t = 0; t < n_tr; ++t) {
                const Eigen::Index t_bits = expand(t, trace_shift);
                sum += rho(r_base | t_bits, c_base | t_bits);
            }
            out(r, c) = sum;
        }
    }
    return out;
}

double operator_distance(const CMatrix& u, const CMatrix& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
        throw std::invalid_argument("operator_distance: dimension mismatch");
    Eigen::JacobiSVD<CMatrix> svd(u - v);
    return svd.singularValues()(0);
}

CMatrix herm_exp(const CMatrix& h, Complex scale) {
    if (!is_hermitian(h)) throw std::invalid_argument("herm_exp: input is not hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    CVector phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        phases(i) = std::exp(scale * es.eigenvalues()(i));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

template <typename M>
bool phase_equal(const M& u, const M& v, double tol) {
    Eigen::Index ri = 0, ci = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i)
        for (Eigen::Index j = 0; j < v.cols(); ++j)
            if (std::abs(v(i, j)) > best) { best = std::abs(v(i, j)); ri = i; ci = j; }
    if (best <= tol) return (u.cwiseAbs().maxCoeff() <= tol);
    Complex phase = u(ri, ci) / v(ri, ci);
    const double mag = std::abs(phase);
    if (mag == 0.0) return false;
    phase /= mag;  // keep it a pure phase even if magnitudes differ slightly
    return ((u - phase * v).cwiseAbs().maxCoeff()) <= tol;
}

}  // namespace

bool equal_up_to_global_phase(const CMatrix& u, const CMatrix& v, double tol) {
    if (u.rows() != v.rows() || u.cols() != v.cols())
        throw std::invalid_argument("equal_up_to_global_phase: dimension mismatch");
    return phase_equal(u, v, tol);
}

bool equal_up_to_global_phase(const CVector& u, const CVector& v, double tol) {
    if (u.size() != v.size())
        throw std::invalid_argument("equal_up_to_global_phase: dimension mismatch");
    return phase_equal(u, v, tol);
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
    if (!is_hermitian(a, 1e-8) || !is_hermitian(b, 1e-8))
        throw std::invalid_argument("trace_distance: inputs must be hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace qpe
