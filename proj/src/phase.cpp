#include "qpe/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qpe/linalg.hpp"
#include "qpe/stats.hpp"

namespace qpe {

namespace {

const Complex kIm(0.0, 1.0);

double mod1(double x) {
    double f = std::fmod(x, 1.0);
    if (f < 0) f += 1.0;
    return f >= 1.0 ? 0.0 : f;  // f + 1.0 can round up to exactly 1.0
}

double circle_dist(double a, double b) {
    const double d = std::abs(mod1(a) - mod1(b));
    return std::min(d, 1.0 - d);
}

int ceil_log2(long long n) {
    int b = 0;
    while ((1LL << b) < n) ++b;
    return b;
}

long long pow_mod(long long base, long long exp, long long mod) {
    long long r = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return r;
}

long long gcd_ll(long long a, long long b) { return b == 0 ? a : gcd_ll(b, a % b); }

}  // namespace

PhaseProblem PhaseProblem::from_phase(double phi, int m) {
    if (!(phi >= 0.0 && phi < 1.0)) throw std::domain_error("PhaseProblem: phi in [0,1) required");
    if (m < 1) throw std::invalid_argument("PhaseProblem: m >= 1 required");
    PhaseProblem p;
    p.oracle_phi = phi;
    p.m = m;
    return p;
}

PhaseProblem PhaseProblem::from_unitary(const CMatrix& u, const StateVector& init, int m) {
    if (!is_unitary(u)) throw std::invalid_argument("PhaseProblem: unitary required");
    if (m < 1) throw std::invalid_argument("PhaseProblem: m >= 1 required");
    if (u.rows() != init.dim()) throw std::invalid_argument("PhaseProblem: state/unitary mismatch");
    PhaseProblem p;
    p.unitary = u;
    p.prepare = [init]() { return init; };
    p.m = m;
    return p;
}

int PhaseProblem::system_qubits() const {
    if (is_oracle()) return 0;
    return ceil_log2(unitary.rows());
}

RepetitionPlan plan_from_probabilities(const std::vector<double>& p_k, double eps) {
    RepetitionPlan plan;
    plan.p_k = p_k;
    const double per_bit_eps = eps / static_cast<double>(p_k.size());
    for (double p : p_k) {
        plan.p_target.push_back(1.0 - per_bit_eps);
        plan.n_k.push_back(n_repetitions(p, per_bit_eps));
        plan.total_measurements += plan.n_k.back();
    }
    return plan;
}

double analytic_pj(double phi, int m, std::uint64_t j) {
    if (!(phi >= 0.0 && phi < 1.0)) throw std::domain_error("analytic_pj: phi in [0,1)");
    if (m < 1 || j >= (std::uint64_t(1) << m)) throw std::domain_error("analytic_pj: bad (m, j)");
    const double pow2m = std::pow(2.0, m);
    const double frac = phi - static_cast<double>(j) / pow2m;
    if (frac == 0.0) return 1.0;
    const double den = std::sin(kPi * frac);
    if (den == 0.0) return 1.0;  // phi = j/2^m exactly (removable singularity)
    const double num = std::sin(kPi * (pow2m * phi - static_cast<double>(j)));
    return (num * num) / (pow2m * pow2m * den * den);
}

std::pair<double, double> analytic_bounds(double delta, int m) {
    if (!(delta >= 0.0 && delta < 1.0)) throw std::domain_error("analytic_bounds: delta in [0,1)");
    if (m < 1) throw std::domain_error("analytic_bounds: m >= 1");
    const double pow2m = std::pow(2.0, m);
    if (delta == 0.0) return {1.0, 0.0};
    const double down = std::pow(std::sin(kPi * delta) / (pow2m * std::sin(kPi * delta / pow2m)), 2);
    const double up =
        std::pow(std::sin(kPi * (1.0 - delta)) / (pow2m * std::sin(kPi * (1.0 - delta) / pow2m)), 2);
    return {down, up};
}

namespace {

// Controlled powers U^{2^k} by repeated matrix squaring, cached per call site.
std::vector<CMatrix> power_ladder(const CMatrix& u, int count) {
    std::vector<CMatrix> pows;
    pows.reserve(count);
    pows.push_back(u);
    for (int i = 1; i < count; ++i) pows.push_back(pows.back() * pows.back());
    return pows;
}

std::vector<int> iota_vec(int from, int count) {
    std::vector<int> v(count);
    std::iota(v.begin(), v.end(), from);
    return v;
}

// Ancillas-first composite register for the QFT-based scheme.
StateVector qft_pea_final_state(const PhaseProblem& prob) {
    const int m = prob.m;
    if (prob.is_oracle()) {
        // Phase kicks applied directly: amps_j = e^{2 pi i j phi} / sqrt(2^m).
        const Eigen::Index dim = Eigen::Index(1) << m;
        CVector amps(dim);
        const double phi = *prob.oracle_phi;
        for (Eigen::Index j = 0; j < dim; ++j)
            amps(j) = std::exp(kIm * (2.0 * kPi * static_cast<double>(j) * phi)) /
                      std::sqrt(static_cast<double>(dim));
        StateVector st(m, std::move(amps));
        return run(build_qft(m).inverse(), std::move(st));
    }

    const int n = prob.system_qubits();
    if (m + n > kMaxPureQubits) throw std::runtime_error("qft_pea: register too large");
    StateVector sys = prob.prepare();
    CVector anc = CVector::Zero(Eigen::Index(1) << m);
    anc(0) = 1.0;
    StateVector st(m + n, tensor_product(anc, sys.amps()));

    for (int l = 0; l < m; ++l) st = apply(st, gate("H").matrix, {l});
    auto pows = power_ladder(prob.unitary, m);
    for (int l = 0; l < m; ++l) {
        // Ancilla l (MSB of j) controls U^{2^{m-1-l}}.
        std::vector<int> targets{l};
        for (int q : iota_vec(m, n)) targets.push_back(q);
        st = apply(st, controlled(pows[m - 1 - l]), targets);
    }
    Circuit iqft = build_qft(m).inverse();
    for (const auto& op : iqft.ops) st = apply(st, op.gate.matrix, op.targets);
    return st;
}

std::uint64_t sample_index(const std::vector<double>& probs, Rng& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return probs.size() - 1;
}

}  // namespace

std::vector<double> qft_pea_distribution(const PhaseProblem& problem) {
    StateVector st = qft_pea_final_state(problem);
    auto dist = outcome_distribution(st, iota_vec(0, problem.m));
    std::vector<double> probs(dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i) probs[i] = dist[i].second;
    return probs;
}

std::vector<std::uint64_t> qft_pea(const PhaseProblem& problem, Rng& rng, int shots) {
    if (shots < 1) throw std::invalid_argument("qft_pea: shots >= 1");
    auto probs = qft_pea_distribution(problem);
    std::vector<std::uint64_t> samples(shots);
    for (int s = 0; s < shots; ++s) samples[s] = sample_index(probs, rng);
    return samples;
}

namespace {

// One IPEA/Kitaev iteration on the explicit-unitary path. Returns P(x=0) and,
// if `collapse` is set, also samples the ancilla and updates the system state.
struct ExplicitEngine {
    const PhaseProblem& prob;
    std::vector<CMatrix> pows;
    std::optional<StateVector> kept_system;

    explicit ExplicitEngine(const PhaseProblem& p) : prob(p) {
        if (!p.is_oracle()) pows = power_ladder(p.unitary, p.m);
    }

    StateVector system_state() {
        if (prob.reuse_register && kept_system) return *kept_system;
        return prob.prepare();
    }

    // Ancilla circuit: H, controlled-U^{2^{k-1}}, Rz(omega), H.
    double prob0(int k, double omega, Rng* rng, int* outcome) {
        const int n = prob.system_qubits();
        StateVector sys = system_state();
        CVector anc(2);
        anc << 1.0, 0.0;
        StateVector st(1 + n, tensor_product(anc, sys.amps()));
        st = apply(st, gate("H").matrix, {0});
        std::vector<int> targets{0};
        for (int q : iota_vec(1, n)) targets.push_back(q);
        st = apply(st, controlled(pows[k - 1]), targets);
        if (omega != 0.0) st = apply(st, gate("Rz", {omega}).matrix, {0});
        st = apply(st, gate("H").matrix, {0});

        auto dist = outcome_distribution(st, {0});
        const double p0 = dist[0].second;
        if (rng != nullptr && outcome != nullptr) {
            MeasureOutcome mo = measure_qubits(st, {0}, *rng);
            *outcome = mo.label == "0" ? 0 : 1;
            if (prob.reuse_register) {
                const auto& post = std::get<StateVector>(mo.post_state);
                const Eigen::Index sys_dim = Eigen::Index(1) << n;
                const Eigen::Index off = (*outcome == 0) ? 0 : sys_dim;
                CVector sub = post.amps().segment(off, sys_dim);
                kept_system = StateVector(n, sub / sub.norm());
            }
        }
        return p0;
    }
};

}  // namespace

double ipea_step_prob0(const PhaseProblem& problem, int k, double omega) {
    if (k < 1 || k > problem.m) throw std::invalid_argument("ipea_step_prob0: bad k");
    if (problem.is_oracle()) {
        const double kick = 2.0 * kPi * std::pow(2.0, k - 1) * (*problem.oracle_phi);
        const double c = std::cos((kick + omega) / 2.0);
        return c * c;
    }
    ExplicitEngine eng(problem);
    return eng.prob0(k, omega, nullptr, nullptr);
}

PhaseRunResult ipea(const PhaseProblem& problem, Rng& rng, const RepetitionPlan* plan) {
    const int m = problem.m;
    if (plan && static_cast<int>(plan->n_k.size()) != m)
        throw std::invalid_argument("ipea: plan size != m");

    PhaseRunResult res;
    res.algorithm = "ipea";
    res.m = m;
    res.bits.assign(m, 0);
    res.phi_true = problem.oracle_phi;

    ExplicitEngine eng(problem);
    double omega = 0.0;  // omega_m = 0
    for (int k = m; k >= 1; --k) {
        const int n_k = plan ? plan->n_k[k - 1] : 1;
        int count0 = 0;
        double p0 = 0.0;
        for (int t = 0; t < n_k; ++t) {
            int outcome = 0;
            if (problem.is_oracle()) {
                p0 = ipea_step_prob0(problem, k, omega);
                outcome = rng.bernoulli(p0) ? 0 : 1;
            } else {
                p0 = eng.prob0(k, omega, &rng, &outcome);
            }
            if (outcome == 0) ++count0;
        }
        const int bit = (2 * count0 > n_k) ? 0 : 1;
        res.bits[k - 1] = bit;
        res.per_bit.push_back(BitRecord{k, omega, n_k, static_cast<double>(count0) / n_k});
        res.shots_used += n_k;
        // omega_{k-1} = -2 pi (0.0 x_k x_{k+1} ... x_m)
        omega = (omega - 2.0 * kPi * bit / 2.0) / 2.0;
    }

    double est = 0.0;
    for (int k = 1; k <= m; ++k) est += res.bits[k - 1] * std::pow(2.0, -k);
    res.estimate = est;
    if (res.phi_true)
        res.success = circle_dist(est, *res.phi_true) < std::pow(2.0, -m);
    return res;
}

namespace {

struct Arc {
    double start;  // in [0, 1)
    double width;
};

// Decision slack in the 2^{k-1} phi space: a bit decided the "wrong" way
// because the value sat near the 1/4 boundary must not evict the true phase
// from the intersection, so every arc is widened by this margin. The final
// intersection grows from 2^-(m+1) to at most (1 + 4s) 2^-(m+1), keeping the
// center within 2^-m of the phase whenever no decision errs beyond the slack.
constexpr double kArcSlack = 3.0 / 32.0;

// phi-space preimage arcs of "2^{k-1} phi mod 1 is within 1/4 (+ slack) of e_k".
std::vector<Arc> arcs_for_bit(int k, int x_k) {
    const double branches = std::pow(2.0, k - 1);
    const double e_k = x_k == 0 ? 0.0 : 0.5;
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(branches));
    const double width = (0.5 + 2.0 * kArcSlack) / branches;
    for (double p = 0; p < branches; ++p)
        arcs.push_back(Arc{mod1((e_k - 0.25 - kArcSlack) / branches + p / branches), width});
    return arcs;
}

std::vector<Arc> intersect(const std::vector<Arc>& lhs, const std::vector<Arc>& rhs) {
    std::vector<Arc> out;
    for (const Arc& a : lhs) {
        for (const Arc& b : rhs) {
            const double d = mod1(b.start - a.start);
            for (double dd : {d, d - 1.0}) {
                const double lo = std::max(0.0, dd);
                const double hi = std::min(a.width, dd + b.width);
                if (hi > lo + 1e-15) out.push_back(Arc{mod1(a.start + lo), hi - lo});
            }
        }
    }
    return out;
}

}  // namespace

PhaseRunResult kitaev_pea(const PhaseProblem& problem, Rng& rng, int trials_per_bit) {
    if (trials_per_bit < 1 || trials_per_bit % 2 == 0)
        throw std::invalid_argument("kitaev_pea: odd trials_per_bit required");
    const int m = problem.m;

    PhaseRunResult res;
    res.algorithm = "kitaev";
    res.m = m;
    res.bits.assign(m, 0);
    res.phi_true = problem.oracle_phi;

    ExplicitEngine eng(problem);
    auto sample_freq0 = [&](int k, double shift_angle, int trials) {
        int count0 = 0;
        for (int t = 0; t < trials; ++t) {
            int outcome = 0;
            if (problem.is_oracle()) {
                const double kick = 2.0 * kPi * std::pow(2.0, k - 1) * (*problem.oracle_phi);
                const double c = std::cos((kick + shift_angle) / 2.0);
                outcome = rng.bernoulli(c * c) ? 0 : 1;
            } else {
                eng.prob0(k, shift_angle, &rng, &outcome);
            }
            if (outcome == 0) ++count0;
        }
        return static_cast<double>(count0) / trials;
    };

    // Each bit's budget is split between the plain circuit (frequency tracks
    // cos^2(pi v_k), v_k = 2^{k-1} phi mod 1) and the same circuit with the
    // R_z(2 pi (0.01)) phase shift (tracks cos^2(pi (v_k + 1/4))). The two
    // quadratures pin down a frequency-implied value of v_k on the whole
    // circle; plain-only data is blind exactly at the 0-vs-1/2 decision
    // boundary, where single-quadrature majorities degenerate to coin flips.
    const int n_plain = (trials_per_bit + 1) / 2;
    const int n_quad = trials_per_bit - n_plain;
    std::vector<double> freq_plain(m), freq_quad(m, 0.0);
    std::vector<Arc> arcs;
    for (int k = 1; k <= m; ++k) {
        const double fp = sample_freq0(k, 0.0, n_plain);
        const double fq = n_quad > 0 ? sample_freq0(k, kPi / 2.0, n_quad) : 0.0;
        freq_plain[k - 1] = fp;
        freq_quad[k - 1] = fq;
        res.shots_used += trials_per_bit;

        // x_k = 0 iff the frequency-implied value sits no farther from 0
        // than from 1/2 (ties resolve to 0).
        int x_k;
        if (n_quad > 0) {
            const double v_hat =
                mod1(std::atan2(-(2.0 * fq - 1.0), 2.0 * fp - 1.0) / (2.0 * kPi));
            const double d0 = std::min(v_hat, 1.0 - v_hat);
            x_k = d0 <= std::abs(v_hat - 0.5) ? 0 : 1;
        } else {
            x_k = fp >= 0.5 ? 0 : 1;
        }
        res.bits[k - 1] = x_k;
        res.per_bit.push_back(BitRecord{k, 0.0, trials_per_bit, fp});

        auto next = arcs_for_bit(k, x_k);
        if (k == 1) {
            arcs = std::move(next);
            continue;
        }
        auto merged = intersect(arcs, next);
        if (merged.empty()) {
            res.inconsistent = true;  // conflicting decision: keep the wider prior arcs
            continue;
        }
        arcs = std::move(merged);
    }

    // The paper's additional iteration: plain U with the ancilla phase
    // shifted by 2 pi (0.01). It breaks the phi <-> 1 - phi mirror left by
    // the unshifted statistics.
    const double f0_shift = sample_freq0(1, kPi / 2.0, trials_per_bit);
    res.shots_used += trials_per_bit;

    // Rank candidates by the binomial log-likelihood of all counts. Grid
    // points are point hypotheses for small arcs, so the probabilities are
    // Laplace-smoothed: a point sitting exactly on a dyadic value (p = 0 or
    // 1) must not veto a single stray count.
    auto loglik = [&](double y) {
        auto term = [](double freq, int n, double p) {
            if (n == 0) return 0.0;
            const double p_eff = (p * n + 0.5) / (n + 1.0);
            return n * (freq * std::log(p_eff) + (1.0 - freq) * std::log1p(-p_eff));
        };
        double score = 0.0;
        for (int k = 1; k <= m; ++k) {
            const double v = mod1(std::pow(2.0, k - 1) * y);
            score += term(freq_plain[k - 1], n_plain, std::pow(std::cos(kPi * v), 2));
            score += term(freq_quad[k - 1], n_quad, std::pow(std::cos(kPi * (v + 0.25)), 2));
        }
        score += term(f0_shift, trials_per_bit, std::pow(std::cos(kPi * (y + 0.25)), 2));
        return score;
    };

    // Maximize over a fine grid inside each surviving arc (and the mirrors):
    // restricted maximum likelihood, with the arcs doing the heavy pruning.
    double best_est = 0.0, best_score = -1e300;
    for (const Arc& a : arcs) {
        constexpr int kGrid = 17;
        for (int g = 0; g < kGrid; ++g) {
            const double y = mod1(a.start + a.width * (g + 0.5) / kGrid);
            for (double cand : {y, mod1(-y)}) {
                const double score = loglik(cand);
                if (score > best_score) {
                    best_score = score;
                    best_est = cand;
                }
            }
        }
    }
    res.estimate = best_est;
    if (res.phi_true)
        res.success = circle_dist(best_est, *res.phi_true) < std::pow(2.0, -m);
    return res;
}

PhaseRunResult aspuru_guzik(const PhaseProblem& problem, Rng& rng, int ancilla_bits,
                            bool deterministic) {
    if (ancilla_bits < 1) throw std::invalid_argument("aspuru_guzik: ancilla_bits >= 1");
    const int m = problem.m;

    PhaseRunResult res;
    res.algorithm = "aspuru_guzik";
    res.m = m;
    res.phi_true = problem.oracle_phi;

    double working = problem.is_oracle() ? *problem.oracle_phi : 0.0;
    CMatrix v = problem.unitary;
    const double scale = std::pow(2.0, ancilla_bits);

    double estimate = 0.0;
    for (int k = 1; k <= m; ++k) {
        PhaseProblem sub = problem.is_oracle()
                               ? PhaseProblem::from_phase(mod1(working), ancilla_bits)
                               : [&] {
                                     PhaseProblem s;
                                     s.unitary = v;
                                     s.prepare = problem.prepare;
                                     s.m = ancilla_bits;
                                     return s;
                                 }();
        auto probs = qft_pea_distribution(sub);
        std::uint64_t j;
        if (deterministic) {
            j = static_cast<std::uint64_t>(
                std::max_element(probs.begin(), probs.end()) - probs.begin());
        } else {
            j = sample_index(probs, rng);
        }
        const double phi_k = static_cast<double>(j) / scale;
        res.iteration_phases.push_back(phi_k);
        // The register reads the working phase mod 1; fold results above 1/2
        // into a negative correction so the running estimate tracks wraps
        // (phi = est_k + residual/2^k with residual in [-1/2, 1/2)).
        const double signed_phi_k = phi_k >= 0.5 ? phi_k - 1.0 : phi_k;
        estimate += signed_phi_k / std::pow(2.0, k - 1);
        res.shots_used += 1;

        if (problem.is_oracle()) {
            working = mod1(2.0 * (mod1(working) - phi_k));
        } else {
            const Complex ph = std::exp(-kIm * (2.0 * kPi * phi_k));
            v = (ph * v) * (ph * v);
        }
    }

    res.estimate = mod1(estimate);
    res.bits.assign(m, 0);
    const double pow2m = std::pow(2.0, m);
    auto jr = static_cast<std::uint64_t>(std::llround(res.estimate * pow2m)) %
              (std::uint64_t(1) << m);
    for (int k = 1; k <= m; ++k) res.bits[k - 1] = (jr >> (m - k)) & 1;
    if (res.phi_true)
        res.success = circle_dist(res.estimate, *res.phi_true) < std::pow(2.0, -m);
    return res;
}

std::vector<std::pair<long long, long long>> continued_fraction(long long a, long long q) {
    if (q <= 0) throw std::domain_error("continued_fraction: q > 0 required");
    if (a < 0 || a >= q) throw std::domain_error("continued_fraction: 0 <= a < q required");
    std::vector<std::pair<long long, long long>> convergents;
    if (a == 0) {
        convergents.emplace_back(0, 1);
        return convergents;
    }
    // Euclidean expansion of a/q; h/k recurrences give the convergents.
    long long num = a, den = q;
    long long h_prev = 1, h_prev2 = 0;  // numerators
    long long k_prev = 0, k_prev2 = 1;  // denominators
    while (den != 0) {
        const long long coeff = num / den;
        const long long rem = num % den;
        const long long h = coeff * h_prev + h_prev2;
        const long long k = coeff * k_prev + k_prev2;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        convergents.emplace_back(h, k);
        num = den;
        den = rem;
    }
    return convergents;
}

CMatrix mod_mult_unitary(long long k, long long n, int n_bits) {
    if (n < 2) throw std::domain_error("mod_mult_unitary: N >= 2 required");
    if (gcd_ll(k % n, n) != 1) throw std::domain_error("mod_mult_unitary: gcd(k, N) = 1 required");
    const Eigen::Index dim = Eigen::Index(1) << n_bits;
    if (dim < n) throw std::invalid_argument("mod_mult_unitary: 2^n_bits >= N required");
    CMatrix u = CMatrix::Zero(dim, dim);
    for (Eigen::Index y = 0; y < dim; ++y) {
        const Eigen::Index img = y < n ? static_cast<Eigen::Index>((k * y) % n) : y;
        u(img, y) = 1.0;
    }
    return u;
}

OrderFindingResult order_finding_demo(long long k, long long n, int m, Rng& rng, int shots) {
    if (n > 32 || m > 11) throw std::invalid_argument("order_finding_demo: desk scale only");
    const int n_bits = ceil_log2(n);
    PhaseProblem prob =
        PhaseProblem::from_unitary(mod_mult_unitary(k, n, n_bits), basis_state(n_bits, std::uint64_t(1)), m);

    OrderFindingResult result;
    result.shots = shots;
    auto samples = qft_pea(prob, rng, shots);
    const long long q = 1LL << m;
    for (auto j : samples) {
        for (auto [num, den] : continued_fraction(static_cast<long long>(j), q)) {
            if (den >= 1 && den <= n && pow_mod(k, den, n) == 1) {
                ++result.candidate_counts[den];
                break;  // smallest verified denominator for this sample
            }
        }
    }
    if (result.candidate_counts.empty())
        throw std::runtime_error("order_finding_demo: no verified candidate within shot budget");
    long long best = 0;
    int best_count = -1;
    for (auto [den, count] : result.candidate_counts)
        if (count > best_count) { best = den; best_count = count; }
    result.order = best;
    return result;
}

CMatrix trotter_evolve(const std::vector<CMatrix>& terms, double t, int q) {
    if (terms.empty()) throw std::invalid_argument("trotter_evolve: no terms");
    if (q < 1) throw std::invalid_argument("trotter_evolve: q >= 1");
    const Eigen::Index dim = terms.front().rows();
    CMatrix slice = CMatrix::Identity(dim, dim);
    for (const auto& h : terms) {
        if (h.rows() != dim || h.cols() != dim)
            throw std::invalid_argument("trotter_evolve: dimension mismatch");
        slice = slice * herm_exp(h, -kIm * (t / q));
    }
    CMatrix out = CMatrix::Identity(dim, dim);
    CMatrix base = slice;
    int e = q;
    while (e > 0) {  // fast power
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

EnergyEstimate abrams_lloyd_energy(const CMatrix& h, const StateVector& approx_eigvec, double t,
                                   int m, Rng& rng, int shots) {
    if (!is_hermitian(h)) throw std::invalid_argument("abrams_lloyd_energy: hermitian h required");
    const CMatrix u = herm_exp(h, -kIm * t);
    PhaseProblem prob = PhaseProblem::from_unitary(u, approx_eigvec, m);
    auto samples = qft_pea(prob, rng, shots);

    std::map<std::uint64_t, int> counts;
    for (auto j : samples) ++counts[j];
    std::uint64_t best = 0;
    int best_count = -1;
    for (auto [j, c] : counts)
        if (c > best_count) { best = j; best_count = c; }

    EnergyEstimate est;
    est.phi = static_cast<double>(best) / std::pow(2.0, m);
    est.dominant_freq = static_cast<double>(best_count) / shots;
    // lambda = 2 pi (1 - phi) / t, with phi = 0 meaning lambda = 0.
    est.energy = est.phi == 0.0 ? 0.0 : 2.0 * kPi * (1.0 - est.phi) / t;
    est.run.algorithm = "abrams_lloyd";
    est.run.m = m;
    est.run.estimate = est.phi;
    est.run.shots_used = shots;
    return est;
}

PhaseRunResult bb_alignment(double phi_true, int m, Rng& rng, int shots_per_bit) {
    if (!(phi_true >= 0.0 && phi_true < 1.0))
        throw std::domain_error("bb_alignment: phi in [0,1) required");
    if (shots_per_bit < 1 || shots_per_bit % 2 == 0)
        throw std::invalid_argument("bb_alignment: odd shots_per_bit required");
    // Each A-B qubit exchange applies Rz(2 phi): the IPEA sees phase 2 phi mod 1.
    PhaseProblem prob = PhaseProblem::from_phase(mod1(2.0 * phi_true), m);
    std::optional<RepetitionPlan> plan;
    if (shots_per_bit > 1) {
        RepetitionPlan p;
        p.n_k.assign(m, shots_per_bit);
        p.p_k.assign(m, 0.0);
        p.p_target.assign(m, 0.0);
        p.total_measurements = static_cast<long long>(m) * shots_per_bit;
        plan = std::move(p);
    }
    PhaseRunResult res = ipea(prob, rng, plan ? &*plan : nullptr);
    res.algorithm = "bb_alignment";
    res.phi_true = phi_true;
    res.estimate = res.estimate / 2.0;  // in [0, 1/2): protocol ambiguity phi ~ phi + 1/2
    const double d = std::min(circle_dist(res.estimate, phi_true),
                              circle_dist(mod1(res.estimate + 0.5), phi_true));
    res.success = d < std::pow(2.0, -(m + 1));
    return res;
}

RgBitResult rg_theta_bit(double theta, int k, Rng& rng, int shots) {
    if (k < 1) throw std::invalid_argument("rg_theta_bit: k >= 1 required");
    if (shots < 1) throw std::invalid_argument("rg_theta_bit: shots >= 1 required");
    const double c = std::cos(std::pow(2.0, k - 1) * theta);
    RgBitResult r;
    r.p0_exact = c * c;
    r.shots = shots;
    int count0 = 0;
    for (int s = 0; s < shots; ++s)
        if (rng.bernoulli(r.p0_exact)) ++count0;
    r.freq0 = static_cast<double>(count0) / shots;
    r.bit = r.freq0 >= 0.5 ? 0 : 1;
    return r;
}

}  // namespace qpe
