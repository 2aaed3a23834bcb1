#include "qpe/noise.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace qpe {

namespace {

using nlohmann::json;

const char* class_key(GateClass c) {
    switch (c) {
        case GateClass::Rz: return "Rz";
        case GateClass::Rx: return "Rx";
        case GateClass::ZZ: return "ZZ";
        case GateClass::XX: return "XX";
        default: return "Other";
    }
}

GateClass class_from_key(const std::string& s) {
    if (s == "Rz") return GateClass::Rz;
    if (s == "Rx") return GateClass::Rx;
    if (s == "ZZ") return GateClass::ZZ;
    if (s == "XX") return GateClass::XX;
    throw std::invalid_argument("NoiseModel: unknown gate class " + s);
}

}  // namespace

bool NoiseModel::enabled(GateClass c) const {
    auto it = delta_uniform.find(c);
    return it != delta_uniform.end() && it->second > 0.0;
}

double NoiseModel::delta(GateClass c) const {
    auto it = delta_uniform.find(c);
    return it == delta_uniform.end() ? 0.0 : it->second;
}

bool NoiseModel::trivial() const {
    if (sigma_x > 0.0 || dephasing_ratio > 0.0) return false;
    for (const auto& [c, d] : delta_uniform)
        if (d > 0.0) return false;
    return true;
}

NoiseModel NoiseModel::from_json_text(const std::string& text) {
    json j = json::parse(text);
    NoiseModel m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "delta") {
            for (auto d = it->begin(); d != it->end(); ++d) {
                const double v = d->get<double>();
                if (v < 0.0) throw std::invalid_argument("NoiseModel: Delta >= 0 required");
                m.delta_uniform[class_from_key(d.key())] = v;
            }
        } else if (it.key() == "sigma_x") {
            m.sigma_x = it->get<double>();
            if (m.sigma_x < 0.0) throw std::invalid_argument("NoiseModel: sigma_x >= 0 required");
        } else if (it.key() == "dephasing_ratio") {
            m.dephasing_ratio = it->get<double>();
            if (m.dephasing_ratio < 0.0)
                throw std::invalid_argument("NoiseModel: dephasing_ratio >= 0 required");
        } else {
            throw std::invalid_argument("NoiseModel: unknown key " + it.key());
        }
    }
    return m;
}

std::string NoiseModel::to_json_text() const {
    json j;
    json d = json::object();
    for (const auto& [c, v] : delta_uniform) d[class_key(c)] = v;
    j["delta"] = d;
    j["sigma_x"] = sigma_x;
    j["dephasing_ratio"] = dephasing_ratio;
    return j.dump();
}

double perturb_angle_uniform(double phi, double delta, Rng& rng) {
    if (delta < 0.0) throw std::invalid_argument("perturb_angle_uniform: delta >= 0");
    if (delta == 0.0) return phi;
    return phi * (1.0 + rng.uniform(-delta / 2.0, delta / 2.0));
}

double perturb_angle_gauss(double phi, double sigma, Rng& rng) {
    if (sigma < 0.0) throw std::invalid_argument("perturb_angle_gauss: sigma >= 0");
    if (sigma == 0.0) return phi;
    return phi + sigma * rng.normal();
}

DensityMatrix dephase(const DensityMatrix& rho, int qubit, double factor) {
    if (!(factor >= 0.0 && factor <= 1.0))
        throw std::domain_error("dephase: factor in [0,1] required");
    if (qubit < 0 || qubit >= rho.n_qubits()) throw std::out_of_range("dephase: qubit index");
    const int n = rho.n_qubits();
    const std::uint64_t bit = std::uint64_t(1) << (n - 1 - qubit);
    CMatrix m = rho.mat();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if ((static_cast<std::uint64_t>(r) & bit) != (static_cast<std::uint64_t>(c) & bit))
                m(r, c) *= factor;
    return DensityMatrix(n, std::move(m));
}

namespace {

bool is_coupling(GateClass c) { return c == GateClass::ZZ || c == GateClass::XX; }

// Resample a single-parameter gate's angle under the model.
Gate sampled_gate(const CircuitOp& op, const NoiseModel& model, Rng& rng) {
    const GateClass cls = op.noise_class.value_or(classify_gate(op.gate.name));
    if (cls == GateClass::Other || op.gate.params.size() != 1) return op.gate;

    double angle = op.gate.params[0];
    bool touched = false;
    const double d = model.delta(cls);
    if (d > 0.0) {
        angle = perturb_angle_uniform(angle, d, rng);
        touched = true;
    }
    if (cls == GateClass::Rx && model.sigma_x > 0.0) {
        angle = perturb_angle_gauss(angle, model.sigma_x, rng);
        touched = true;
    }
    if (!touched) return op.gate;
    // Rk angles are dyadic exponents, not radians; noise acts on real angles only.
    if (op.gate.name == "Rk") return op.gate;
    return gate(op.gate.name, {angle});
}

}  // namespace

StateVector apply_noisy(const Circuit& circuit, StateVector initial, const NoiseModel& model,
                        Rng& rng) {
    if (model.dephasing_ratio > 0.0)
        throw std::invalid_argument("apply_noisy: dephasing requires the density-matrix path");
    for (const auto& op : circuit.ops) {
        const Gate g = sampled_gate(op, model, rng);
        initial = apply(initial, g.matrix, op.targets);
    }
    return initial;
}

DensityMatrix apply_noisy(const Circuit& circuit, DensityMatrix initial, const NoiseModel& model,
                          Rng& rng) {
    for (const auto& op : circuit.ops) {
        const Gate g = sampled_gate(op, model, rng);
        initial = apply(initial, g.matrix, op.targets);
        const GateClass cls = op.noise_class.value_or(classify_gate(op.gate.name));
        if (model.dephasing_ratio > 0.0 && is_coupling(cls) && op.gate.params.size() == 1) {
            const double factor =
                std::exp(-4.0 * std::abs(op.gate.params[0]) * model.dephasing_ratio);
            for (int q : op.targets) initial = dephase(initial, q, factor);
        }
    }
    return initial;
}

}  // namespace qpe
