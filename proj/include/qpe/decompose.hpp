#pragma once

#include "qpe/circuit.hpp"
#include "qpe/types.hpp"

namespace qpe {

enum class EulerBasis { ZY, ZX };

/// U = e^{i delta} Rz(alpha) R(beta) Rz(gamma) with R = Ry or Rx per basis.
struct EulerDecomposition {
    double delta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    EulerBasis basis = EulerBasis::ZY;

    CMatrix reconstruct() const;
};

/// Angles in (-pi, pi] except beta in [0, pi]; gimbal-degenerate cases
/// (beta in {0, pi}) fold all z-rotation into alpha with gamma = 0.
EulerDecomposition euler_decompose(const CMatrix& u, EulerBasis basis);

/// A, B, C with ABC = I and AXBXC = e^{-i delta} u; controlled-u is then
/// C, CNOT, B, CNOT, A on the target plus diag(1, e^{i delta}) on the control.
struct AbcDecomposition {
    CMatrix a, b, c;
    double delta = 0.0;

    /// The assembled two-qubit gate, control first: equals controlled(u).
    CMatrix assemble() const;
};

AbcDecomposition abc_controlled(const CMatrix& u);

/// Z-X angle triple representing U^{2^k}.
struct PowerAngles {
    double alpha = 0.0;
    double theta = 0.0;
    double beta = 0.0;
    int k = 0;
};

/// One squaring step: Rz(a')Rx(t')Rz(b') = [Rz(a)Rx(t)Rz(b)]^2 up to phase.
PowerAngles square_angles(double alpha, double theta, double beta);

/// k-fold squaring; represents U^{2^k} in Z-X form.
PowerAngles power_angles(double alpha, double theta, double beta, int k);

/// CNOT realized with single-qubit rotations around one XX(3 pi/4) coupling
/// pulse per half, matching the native two-qubit interaction.
Circuit cnot_from_xx();

}  // namespace qpe
