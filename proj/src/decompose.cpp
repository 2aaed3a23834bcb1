#include "qpe/decompose.hpp"

#include <cmath>
#include <stdexcept>

#include "qpe/linalg.hpp"

namespace qpe {

namespace {

const Complex kI(0.0, 1.0);

double clamp1(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

double wrap_pi(double x) {
    x = std::fmod(x + kPi, 2.0 * kPi);
    if (x < 0) x += 2.0 * kPi;
    return x - kPi;
}

CMatrix rx(double t) { return gate("Rx", {t}).matrix; }
CMatrix ry(double t) { return gate("Ry", {t}).matrix; }
CMatrix rz(double t) { return gate("Rz", {t}).matrix; }

void require_unitary2(const CMatrix& u, const char* who) {
    if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u))
        throw std::invalid_argument(std::string(who) + ": 2x2 unitary required");
}

}  // namespace

CMatrix EulerDecomposition::reconstruct() const {
    const CMatrix mid = basis == EulerBasis::ZY ? ry(beta) : rx(beta);
    return std::exp(kI * delta) * rz(alpha) * mid * rz(gamma);
}

EulerDecomposition euler_decompose(const CMatrix& u, EulerBasis basis) {
    require_unitary2(u, "euler_decompose");

    // Split off the global phase: det(Rz R Rz) = 1, det u = e^{2 i delta}.
    double delta = 0.5 * std::arg(u.determinant());
    if (delta <= -kPi / 2) delta += kPi;
    CMatrix v = std::exp(-kI * delta) * u;

    // In SU(2), v00 = e^{-i(a+g)/2} cos(b/2) and
    //   ZY: v10 =  e^{ i(a-g)/2} sin(b/2)
    //   ZX: v10 = -i e^{ i(a-g)/2} sin(b/2)
    const double beta = 2.0 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
    double alpha, gamma;
    const double phase10_offset = basis == EulerBasis::ZX ? kPi / 2 : 0.0;
    if (std::abs(v(1, 0)) < 1e-12) {                  // beta ~ 0
        alpha = wrap_pi(-2.0 * std::arg(v(0, 0)));
        gamma = 0.0;
    } else if (std::abs(v(0, 0)) < 1e-12) {           // beta ~ pi
        alpha = wrap_pi(2.0 * (std::arg(v(1, 0)) + phase10_offset));
        gamma = 0.0;
    } else {
        const double sum = -2.0 * std::arg(v(0, 0));
        const double dif = 2.0 * (std::arg(v(1, 0)) + phase10_offset);
        alpha = wrap_pi((sum + dif) / 2.0);
        gamma = wrap_pi((sum - dif) / 2.0);
    }

    EulerDecomposition d{delta, alpha, beta, gamma, basis};
    // The (-pi, pi] wrap of alpha/gamma can flip the SU(2) sign; absorb it
    // into delta so reconstruct() is exact, keeping delta in (-pi, pi].
    CMatrix rec = d.reconstruct();
    if (max_abs_diff(rec, u) > 1e-9) {
        d.delta = wrap_pi(d.delta + kPi);
        if (d.delta == -kPi) d.delta = kPi;
    }
    return d;
}

CMatrix AbcDecomposition::assemble() const {
    const CMatrix x = gate("X").matrix;
    const CMatrix cnot = gate("CNOT").matrix;
    const CMatrix id = CMatrix::Identity(2, 2);
    CMatrix total = tensor_product(id, a) * cnot * tensor_product(id, b) * cnot *
                    tensor_product(id, c);
    CMatrix phase = CMatrix::Identity(2, 2);
    phase(1, 1) = std::exp(kI * delta);
    return tensor_product(phase, id) * total;
}

AbcDecomposition abc_controlled(const CMatrix& u) {
    require_unitary2(u, "abc_controlled");
    EulerDecomposition e = euler_decompose(u, EulerBasis::ZY);
    AbcDecomposition d;
    d.delta = e.delta;
    d.a = rz(e.alpha) * ry(e.beta / 2);
    d.b = ry(-e.beta / 2) * rz(-(e.alpha + e.gamma) / 2);
    d.c = rz((-e.alpha + e.gamma) / 2);
    return d;
}

PowerAngles square_angles(double alpha, double theta, double beta) {
    // Solve Rx(t) Rz(s) Rx(t) = Rz(nu1) Rx(nu2) Rz(nu1) for s = alpha + beta.
    // Matching the SU(2) components (no Y term appears on either side):
    //   sin(nu2/2)          = sin(t) cos(s/2)
    //   cos(nu2/2) sin(nu1) = sin(s/2)
    //   cos(nu2/2) cos(nu1) = cos(t) cos(s/2)
    // The principal arcsin keeps cos(nu2/2) >= 0; atan2 then fixes nu1 in the
    // right quadrant. Any residual overall sign is a global phase.
    const double s = alpha + beta;
    const double nu2 = 2.0 * std::asin(clamp1(std::sin(theta) * std::cos(s / 2)));
    const double nu1 = std::atan2(std::sin(s / 2), std::cos(s / 2) * std::cos(theta));
    return PowerAngles{alpha + nu1, nu2, beta + nu1, 1};
}

PowerAngles power_angles(double alpha, double theta, double beta, int k) {
    if (k < 0) throw std::invalid_argument("power_angles: k >= 0 required");
    PowerAngles p{alpha, theta, beta, 0};
    for (int i = 0; i < k; ++i) {
        PowerAngles q = square_angles(p.alpha, p.theta, p.beta);
        p.alpha = q.alpha;
        p.theta = q.theta;
        p.beta = q.beta;
    }
    p.k = k;
    return p;
}

Circuit cnot_from_xx() {
    Circuit c(2);
    c.add("Rx", {kPi / 2}, {0}).add("Rx", {kPi / 2}, {1});
    c.add("Rz", {kPi / 2}, {0}).add("Rz", {kPi}, {1});
    c.add("XX", {3 * kPi / 4}, {0, 1});
    c.add("Rz", {kPi / 2}, {0}).add("Rz", {kPi}, {1});
    c.add("Rx", {kPi / 2}, {0}).add("Rx", {kPi}, {1});
    c.add("Rz", {kPi / 2}, {0});
    return c;
}

}  // namespace qpe
