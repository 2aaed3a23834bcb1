#pragma once

#include <set>

#include "qpe/types.hpp"

namespace qpe {

// Largest |entry| of a matrix difference; the max-norm used by validators.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

bool is_unitary(const CMatrix& u, double tol = kStructTol);
bool is_hermitian(const CMatrix& a, double tol = kStructTol);
// Hermitian, trace 1 within tol, eigenvalues >= -tol.
bool is_density(const CMatrix& rho, double tol = kStructTol);

/// Kronecker product with block layout a_ij * b.
CMatrix tensor_product(const CMatrix& a, const CMatrix& b);
CVector tensor_product(const CVector& a, const CVector& b);

/// Reduced density operator: trace out the given qubits of a 2^n x 2^n
/// operator. Qubit 0 is the most significant bit of basis labels.
CMatrix partial_trace(const CMatrix& rho, int n_qubits, const std::set<int>& traced);

/// E(U,V) = max_{|psi|=1} |(U-V)psi| = largest singular value of U-V.
double operator_distance(const CMatrix& u, const CMatrix& v);

/// exp(scale * h) for hermitian h via spectral decomposition.
CMatrix herm_exp(const CMatrix& h, Complex scale);

/// True iff u == e^{i delta} v entrywise within tol, with the phase read off
/// the largest-magnitude entry of v.
bool equal_up_to_global_phase(const CMatrix& u, const CMatrix& v, double tol = kStructTol);
bool equal_up_to_global_phase(const CVector& u, const CVector& v, double tol = kStructTol);

/// (1/2)||a - b||_1 for hermitian a, b.
double trace_distance(const CMatrix& a, const CMatrix& b);

}  // namespace qpe
