#pragma once

#include <map>
#include <string>

#include "qpe/circuit.hpp"
#include "qpe/rng.hpp"

namespace qpe {

/// Parametric gate noise: multiplicative uniform angle fluctuations per gate
/// class, additive Gaussian angle noise on X rotations, and pure dephasing
/// around coupling gates (density path).
struct NoiseModel {
    std::map<GateClass, double> delta_uniform;  // class -> Delta, angle *= (1 + U(-D/2, D/2))
    double sigma_x = 0.0;                       // std dev of additive Gaussian on Rx angles
    double dephasing_ratio = 0.0;               // Gamma_phi / gamma

    bool enabled(GateClass c) const;
    double delta(GateClass c) const;
    bool trivial() const;

    static NoiseModel from_json_text(const std::string& text);
    std::string to_json_text() const;
};

double perturb_angle_uniform(double phi, double delta, Rng& rng);
double perturb_angle_gauss(double phi, double sigma, Rng& rng);

/// Multiply the off-diagonal blocks of `qubit`'s 0/1 split by `factor`.
/// Equivalent CPTP form: Kraus pair {sqrt((1+f)/2) I, sqrt((1-f)/2) Z}.
DensityMatrix dephase(const DensityMatrix& rho, int qubit, double factor);

/// Run a circuit with per-op angle sampling. Dephasing (when the model has
/// dephasing_ratio > 0) acts on the qubits of each coupling gate with factor
/// exp(-4 |angle| * ratio), matching the per-iteration ancilla attenuation
/// e^{-|alpha| 2^k Gamma_phi/gamma} of the two-qubit benchmarks.
StateVector apply_noisy(const Circuit& circuit, StateVector initial, const NoiseModel& model,
                        Rng& rng);
DensityMatrix apply_noisy(const Circuit& circuit, DensityMatrix initial, const NoiseModel& model,
                          Rng& rng);

}  // namespace qpe
