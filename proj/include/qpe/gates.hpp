#pragma once

#include <array>
#include <string>
#include <vector>

#include "qpe/types.hpp"

namespace qpe {

/// Named unitary with its closed-form matrix. Parametric gates carry their
/// angle parameters so noise models can resample them.
struct Gate {
    std::string name;
    std::vector<double> params;
    int arity = 1;
    CMatrix matrix;
};

/// Gate factory. Known names:
///   I X Y Z H T S          (no params)
///   Rx Ry Rz P             (angle; P = diag(1, e^{i theta}))
///   Rk                     (integer k; diag(1, e^{2 pi i / 2^k}), negative k conjugates)
///   CNOT CZ SWAP           (no params)
///   ZZ XX                  (gamma_t; e^{-i gamma_t Z(x)Z} / e^{-i gamma_t X(x)X})
/// Matrices are cached per (name, params) with exact param equality.
const Gate& gate(const std::string& name, const std::vector<double>& params = {});

/// Block-diag(I, g): control is the first (most significant) target.
Gate controlled(const Gate& g);
CMatrix controlled(const CMatrix& g);

/// Rotation by theta about a unit axis (nx, ny, nz) on the Bloch sphere.
CMatrix axis_rotation(const std::array<double, 3>& axis, double theta);

}  // namespace qpe
