#include "qpe/gates.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "qpe/linalg.hpp"

namespace qpe {

namespace {

const Complex kI(0.0, 1.0);

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

CMatrix pauli_x() { return mat2(0, 1, 1, 0); }
CMatrix pauli_y() { return mat2(0, -kI, kI, 0); }
CMatrix pauli_z() { return mat2(1, 0, 0, -1); }

CMatrix rot(const CMatrix& pauli, double phi) {
    return std::cos(phi / 2) * CMatrix::Identity(2, 2) - kI * std::sin(phi / 2) * pauli;
}

CMatrix build(const std::string& name, const std::vector<double>& p, int& arity) {
    arity = 1;
    auto need = [&](std::size_t n) {
        if (p.size() != n) throw std::invalid_argument("gate " + name + ": wrong parameter count");
    };
    if (name == "I") { need(0); return CMatrix::Identity(2, 2); }
    if (name == "X") { need(0); return pauli_x(); }
    if (name == "Y") { need(0); return pauli_y(); }
    if (name == "Z") { need(0); return pauli_z(); }
    if (name == "H") { need(0); CMatrix m = mat2(1, 1, 1, -1); return m / std::sqrt(2.0); }
    if (name == "T") { need(0); return mat2(1, 0, 0, std::exp(kI * (kPi / 4))); }
    if (name == "S") { need(0); return mat2(1, 0, 0, kI); }
    if (name == "Rx") { need(1); return rot(pauli_x(), p[0]); }
    if (name == "Ry") { need(1); return rot(pauli_y(), p[0]); }
    if (name == "Rz") { need(1); return rot(pauli_z(), p[0]); }
    if (name == "P") { need(1); return mat2(1, 0, 0, std::exp(kI * p[0])); }
    if (name == "Rk") {
        need(1);
        const double k = p[0];
        const double sign = k < 0 ? -1.0 : 1.0;
        return mat2(1, 0, 0, std::exp(sign * kI * (2.0 * kPi / std::pow(2.0, std::abs(k)))));
    }
    arity = 2;
    if (name == "CNOT") {
        need(0);
        CMatrix m = CMatrix::Identity(4, 4);
        m(2, 2) = 0; m(3, 3) = 0; m(2, 3) = 1; m(3, 2) = 1;
        return m;
    }
    if (name == "CZ") {
        need(0);
        CMatrix m = CMatrix::Identity(4, 4);
        m(3, 3) = -1;
        return m;
    }
    if (name == "SWAP") {
        need(0);
        CMatrix m = CMatrix::Identity(4, 4);
        m(1, 1) = 0; m(2, 2) = 0; m(1, 2) = 1; m(2, 1) = 1;
        return m;
    }
    if (name == "ZZ") {
        need(1);
        const Complex lo = std::exp(-kI * p[0]), hi = std::exp(kI * p[0]);
        CMatrix m = CMatrix::Zero(4, 4);
        m(0, 0) = lo; m(1, 1) = hi; m(2, 2) = hi; m(3, 3) = lo;
        return m;
    }
    if (name == "XX") {
        need(1);
        const Complex i1 = std::cos(p[0]), i2 = -kI * std::sin(p[0]);
        CMatrix m = CMatrix::Zero(4, 4);
        m(0, 0) = i1; m(1, 1) = i1; m(2, 2) = i1; m(3, 3) = i1;
        m(0, 3) = i2; m(1, 2) = i2; m(2, 1) = i2; m(3, 0) = i2;
        return m;
    }
    throw std::invalid_argument("unknown gate: " + name);
}

}  // namespace

const Gate& gate(const std::string& name, const std::vector<double>& params) {
    static std::map<std::pair<std::string, std::vector<double>>, Gate> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(name, params);
    auto it = cache.find(key);
    if (it == cache.end()) {
        int arity = 1;
        CMatrix m = build(name, params, arity);
        it = cache.emplace(std::move(key), Gate{name, params, arity, std::move(m)}).first;
    }
    return it->second;
}

CMatrix controlled(const CMatrix& g) {
    const Eigen::Index d = g.rows();
    CMatrix m = CMatrix::Identity(2 * d, 2 * d);
    m.block(d, d, d, d) = g;
    return m;
}

Gate controlled(const Gate& g) {
    return Gate{"C" + g.name, g.params, g.arity + 1, controlled(g.matrix)};
}

CMatrix axis_rotation(const std::array<double, 3>& axis, double theta) {
    const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("axis_rotation: axis must be a unit vector");
    CMatrix n_dot_sigma = axis[0] * pauli_x() + axis[1] * pauli_y() + axis[2] * pauli_z();
    return std::cos(theta / 2) * CMatrix::Identity(2, 2) - kI * std::sin(theta / 2) * n_dot_sigma;
}

}  // namespace qpe
