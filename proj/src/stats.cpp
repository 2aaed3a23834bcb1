#include "qpe/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace qpe {

namespace {

// Lentz's continued fraction for the incomplete beta (Numerical Recipes form).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double reg_inc_beta(double x, double a, double b) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("reg_inc_beta: x in [0,1] required");
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("reg_inc_beta: a, b > 0 required");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double majority_vote_success(double p0, int n) {
    if (n < 1 || n % 2 == 0) throw std::invalid_argument("majority_vote_success: odd N required");
    return 1.0 - reg_inc_beta(1.0 - p0, (n + 1) / 2.0, (n + 1) / 2.0);
}

int n_repetitions(double p0, double eps) {
    if (!(p0 > 0.5) || p0 > 1.0)
        throw std::domain_error("n_repetitions: 0.5 < p0 <= 1 required (no finite N otherwise)");
    if (!(eps > 0.0) || eps >= 0.5) throw std::domain_error("n_repetitions: 0 < eps < 0.5 required");

    auto fails = [&](int n) { return reg_inc_beta(1.0 - p0, (n + 1) / 2.0, (n + 1) / 2.0); };
    if (fails(1) <= eps) return 1;

    // Gallop to a passing N, then bisect over odd values.
    constexpr int kMaxN = 100'000'001;
    int lo = 1, hi = 3;
    while (fails(hi) > eps) {
        lo = hi;
        if (hi > kMaxN / 4) throw std::runtime_error("n_repetitions: N exceeds limit");
        hi = hi * 4 + 1;
    }
    while (hi - lo > 2) {
        int mid = (lo + hi) / 2;
        if (mid % 2 == 0) ++mid;
        if (fails(mid) <= eps)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace qpe
