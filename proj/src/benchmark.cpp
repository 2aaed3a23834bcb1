#include "qpe/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qpe/stats.hpp"

namespace qpe {

namespace {

double mod1(double x) {
    double f = std::fmod(x, 1.0);
    if (f < 0) f += 1.0;
    return f >= 1.0 ? 0.0 : f;
}

double circle_dist(double a, double b) {
    const double d = std::abs(mod1(a) - mod1(b));
    return std::min(d, 1.0 - d);
}

double mod_2pi(double x) {
    double f = std::fmod(x, 2.0 * kPi);
    if (f < 0) f += 2.0 * kPi;
    return f;
}

}  // namespace

BenchmarkId benchmark_id_from_string(const std::string& s) {
    if (s == "I" || s == "I_xx_cnots") return BenchmarkId::I_xx_cnots;
    if (s == "II_zz" || s == "II") return BenchmarkId::II_zz;
    if (s == "II_xx") return BenchmarkId::II_xx;
    if (s == "III" || s == "III_unknown_gamma") return BenchmarkId::III_unknown_gamma;
    throw std::invalid_argument("unknown benchmark id: " + s);
}

std::string to_string(BenchmarkId id) {
    switch (id) {
        case BenchmarkId::I_xx_cnots: return "I_xx_cnots";
        case BenchmarkId::II_zz: return "II_zz";
        case BenchmarkId::II_xx: return "II_xx";
        default: return "III_unknown_gamma";
    }
}

double BenchmarkSpec::phi() const { return mod1(alpha / (2.0 * kPi)); }

Circuit build_benchmark_step(const BenchmarkSpec& spec, int k, double omega) {
    if (k < 1 || k > spec.m) throw std::invalid_argument("build_benchmark_step: bad k");
    Circuit c(2);
    const double pow2 = std::pow(2.0, k - 1);

    switch (spec.id) {
        case BenchmarkId::I_xx_cnots: {
            // Controlled (diag(e^{-i a}, e^{i a}))^{2^{k-1}} from two XX-based
            // CNOT blocks; minimized sequence, note the repeated block.
            const double theta = mod_2pi(spec.alpha * pow2);
            c.add("Rz", {theta}, {1});
            c.add("Rx", {kPi / 2}, {0});
            c.add("Rx", {kPi / 2}, {1});
            c.add("XX", {3 * kPi / 4}, {0, 1});
            c.add("Rz", {theta}, {1});
            c.add("Rx", {kPi / 2}, {0});
            c.add("Rx", {kPi / 2}, {1});
            c.add("XX", {3 * kPi / 4}, {0, 1});
            c.add("Rx", {omega}, {0});
            break;
        }
        case BenchmarkId::II_zz: {
            const double gt = 0.5 * mod_2pi(spec.alpha * pow2);
            c.add("Rx", {kPi / 2}, {0});
            c.add("ZZ", {gt}, {0, 1});
            c.add("Rz", {omega}, {0});
            c.add("Rx", {-kPi / 2}, {0});
            break;
        }
        case BenchmarkId::II_xx: {
            const double gt = 0.5 * mod_2pi(spec.alpha * pow2);
            c.add("Rx", {kPi / 2}, {1});
            c.add("Rz", {-kPi / 2}, {1});
            c.add("XX", {gt}, {0, 1});
            c.add("Rx", {-omega}, {0});
            c.add("Rz", {kPi / 4}, {0});
            break;
        }
        case BenchmarkId::III_unknown_gamma: {
            // Gamma unknown: the coupling runs for time 2^{k-1} t, no modular
            // reduction of the angle.
            const double gt = (spec.alpha / 2.0) * pow2;
            c.add("Rx", {kPi / 2}, {0});
            c.add("ZZ", {gt}, {0, 1});
            c.add("Rz", {omega}, {0});
            c.add("Rx", {-kPi / 2}, {0});
            break;
        }
    }
    return c;
}

namespace {

// floor(phi * 2^m) with a snap for values a hair under the next integer;
// guards 1-ulp drift in phases reconstructed from alpha = 2 pi phi.
long long scaled_floor(double phi, int m) {
    const double scaled = mod1(phi) * std::pow(2.0, m);
    long long j = static_cast<long long>(std::floor(scaled));
    if (scaled - static_cast<double>(j) > 1.0 - 1e-9) ++j;
    return j % (1LL << m);
}

}  // namespace

std::vector<int> true_bits(double phi, int m) {
    const long long j = scaled_floor(phi, m);
    std::vector<int> bits(m);
    for (int k = 1; k <= m; ++k) bits[k - 1] = static_cast<int>(j >> (m - k) & 1);
    return bits;
}

double remainder_delta(double phi, int m) {
    const double scaled = mod1(phi) * std::pow(2.0, m);
    double delta = scaled - std::floor(scaled);
    if (delta > 1.0 - 1e-9) delta = 0.0;
    return delta;
}

namespace {

// Measure one benchmark iteration; returns the sampled ancilla bit.
int sample_step(const BenchmarkSpec& spec, int k, double omega, Rng& rng) {
    Circuit step = build_benchmark_step(spec, k, omega);
    int outcome;
    if (spec.noise.dephasing_ratio > 0.0) {
        DensityMatrix rho = to_density(basis_state(2, std::string("00")));
        rho = apply_noisy(step, std::move(rho), spec.noise, rng);
        MeasureOutcome mo = measure_qubits(rho, {0}, rng);
        outcome = mo.label == "0" ? 0 : 1;
    } else {
        StateVector st = basis_state(2, std::string("00"));
        st = apply_noisy(step, std::move(st), spec.noise, rng);
        MeasureOutcome mo = measure_qubits(st, {0}, rng);
        outcome = mo.label == "0" ? 0 : 1;
    }
    return outcome;
}

}  // namespace

BenchmarkResult run_benchmark(const BenchmarkSpec& spec, Rng& rng) {
    if (spec.trials < 1) throw std::invalid_argument("run_benchmark: trials >= 1");
    const int m = spec.m;
    const double phi = spec.phi();
    const auto bits_true = true_bits(phi, m);

    BenchmarkResult out;
    out.trials = spec.trials;
    out.bit_correct_freq.assign(m, 0.0);

    int successes = 0;
    for (int trial = 0; trial < spec.trials; ++trial) {
        Rng trng = rng.split(trial);
        double omega = 0.0;
        std::vector<int> bits(m, 0);
        for (int k = m; k >= 1; --k) {
            const int x_k = sample_step(spec, k, omega, trng);
            bits[k - 1] = x_k;
            if (x_k == bits_true[k - 1]) out.bit_correct_freq[k - 1] += 1.0;
            omega = (omega - 2.0 * kPi * x_k / 2.0) / 2.0;
            ++out.total_measurements;
        }
        double est = 0.0;
        for (int k = 1; k <= m; ++k) est += bits[k - 1] * std::pow(2.0, -k);
        if (circle_dist(est, phi) < std::pow(2.0, -m)) ++successes;
    }
    for (double& f : out.bit_correct_freq) f /= spec.trials;
    out.success_rate = static_cast<double>(successes) / spec.trials;
    return out;
}

double conditional_bit_success(const BenchmarkSpec& spec, int k, int trials, Rng& rng) {
    const auto bits_true = true_bits(spec.phi(), spec.m);
    // Feedback as if every later bit was measured correctly.
    double omega = 0.0;
    for (int j = spec.m; j > k; --j) omega = (omega - 2.0 * kPi * bits_true[j - 1] / 2.0) / 2.0;

    int correct = 0;
    for (int t = 0; t < trials; ++t) {
        Rng trng = rng.split(t);
        if (sample_step(spec, k, omega, trng) == bits_true[k - 1]) ++correct;
    }
    return static_cast<double>(correct) / trials;
}

double analytic_p_k(double delta, int m, int k) {
    const double c = std::cos(kPi * std::pow(2.0, k - 1) * delta * std::pow(2.0, -m));
    return c * c;
}

double analytic_p_k_err(double delta, int m, int k, double alpha, double sigma_x, double ratio) {
    const double atten =
        std::exp(-sigma_x * sigma_x - std::abs(alpha) * std::pow(2.0, k) * ratio);
    return 0.5 * (1.0 + atten * std::cos(kPi * std::pow(2.0, k) * delta * std::pow(2.0, -m)));
}

RepetitionPlan measurement_budget(const BenchmarkSpec& spec) {
    const double delta = remainder_delta(spec.phi(), spec.m);
    std::vector<double> p_k(spec.m);
    const bool noisy = spec.id == BenchmarkId::III_unknown_gamma &&
                       (spec.noise.sigma_x > 0.0 || spec.noise.dephasing_ratio > 0.0);
    for (int k = 1; k <= spec.m; ++k)
        p_k[k - 1] = noisy ? analytic_p_k_err(delta, spec.m, k, spec.alpha, spec.noise.sigma_x,
                                              spec.noise.dephasing_ratio)
                           : analytic_p_k(delta, spec.m, k);
    for (double p : p_k)
        if (p <= 0.5) throw std::domain_error("measurement_budget: per-bit P_k <= 0.5");
    return plan_from_probabilities(p_k, spec.eps);
}

int dephasing_budget_max_m(double ratio, double alpha, double eps, long long budget, int m_limit) {
    int best = 0;
    for (int m = 1; m <= m_limit; ++m) {
        long long total = 0;
        bool feasible = true;
        for (int k = 1; k <= m && feasible; ++k) {
            const double p = 0.5 * (1.0 + std::exp(-std::abs(alpha) * std::pow(2.0, k) * ratio));
            if (p <= 0.5) {
                feasible = false;
                break;
            }
            try {
                total += n_repetitions(p, eps / m);
            } catch (const std::exception&) {
                feasible = false;
            }
            if (total > budget) feasible = false;
        }
        if (feasible && total <= budget) best = m;
    }
    return best;
}

namespace {

void set_sweep_param(BenchmarkSpec& s, const std::string& param, double v) {
    if (param == "delta_all") {
        s.noise.delta_uniform[GateClass::Rz] = v;
        s.noise.delta_uniform[GateClass::Rx] = v;
        s.noise.delta_uniform[GateClass::ZZ] = v;
        s.noise.delta_uniform[GateClass::XX] = v;
    } else if (param == "delta_Rz") {
        s.noise.delta_uniform[GateClass::Rz] = v;
    } else if (param == "delta_Rx") {
        s.noise.delta_uniform[GateClass::Rx] = v;
    } else if (param == "delta_coupling") {
        s.noise.delta_uniform[GateClass::ZZ] = v;
        s.noise.delta_uniform[GateClass::XX] = v;
    } else if (param == "sigma_x") {
        s.noise.sigma_x = v;
    } else if (param == "dephasing_ratio") {
        s.noise.dephasing_ratio = v;
    } else if (param == "m") {
        s.m = static_cast<int>(v);
    } else {
        throw std::invalid_argument("sweep: unknown param " + param);
    }
}

}  // namespace

std::vector<SweepRow> sweep(const BenchmarkSpec& spec, const std::string& param,
                            const std::vector<double>& values, Rng& rng, bool average_alpha) {
    std::vector<SweepRow> rows;
    constexpr int kAlphaGrid = 64;
    for (std::size_t vi = 0; vi < values.size(); ++vi) {
        BenchmarkSpec s = spec;
        set_sweep_param(s, param, values[vi]);
        Rng vrng = rng.split(vi);

        BenchmarkResult agg;
        if (average_alpha) {
            // Success curves are means over evenly distributed alpha: a fixed
            // stratified grid with per-cell jitter.
            agg.bit_correct_freq.assign(s.m, 0.0);
            const int trials_per_alpha = std::max(1, s.trials / kAlphaGrid);
            for (int a = 0; a < kAlphaGrid; ++a) {
                Rng arng = vrng.split(a);
                BenchmarkSpec sa = s;
                sa.alpha = (a + arng.uniform()) * (2.0 * kPi / kAlphaGrid);
                sa.trials = trials_per_alpha;
                BenchmarkResult r = run_benchmark(sa, arng);
                agg.success_rate += r.success_rate;
                agg.total_measurements += r.total_measurements;
                agg.trials += r.trials;
                for (int b = 0; b < s.m; ++b) agg.bit_correct_freq[b] += r.bit_correct_freq[b];
            }
            agg.success_rate /= kAlphaGrid;
            for (double& f : agg.bit_correct_freq) f /= kAlphaGrid;
        } else {
            agg = run_benchmark(s, vrng);
        }
        rows.push_back(SweepRow{param, values[vi], agg});
    }
    return rows;
}

std::vector<FigPreset> figure_presets() {
    std::vector<FigPreset> presets;
    auto deltas = std::vector<double>{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 1.0};

    {  // Benchmark I success vs uniform noise level, m = 10.
        FigPreset p;
        p.name = "fig1";
        p.spec.id = BenchmarkId::I_xx_cnots;
        p.spec.m = 10;
        p.spec.trials = 640;
        p.param = "delta_all";
        p.values = deltas;
        presets.push_back(std::move(p));
    }
    {  // Benchmark I measurement totals vs m at fixed noise.
        FigPreset p;
        p.name = "fig2";
        p.spec.id = BenchmarkId::I_xx_cnots;
        p.spec.trials = 320;
        p.spec.noise.delta_uniform[GateClass::Rz] = 0.2;
        p.spec.noise.delta_uniform[GateClass::Rx] = 0.2;
        p.spec.noise.delta_uniform[GateClass::XX] = 0.2;
        p.param = "m";
        p.values = {2, 4, 6, 8, 10};
        presets.push_back(std::move(p));
    }
    {  // Benchmark II_zz success vs uniform noise level, m = 10.
        FigPreset p;
        p.name = "fig3";
        p.spec.id = BenchmarkId::II_zz;
        p.spec.m = 10;
        p.spec.trials = 640;
        p.param = "delta_all";
        p.values = deltas;
        presets.push_back(std::move(p));
    }
    {  // Benchmark II_zz measurement totals vs m.
        FigPreset p;
        p.name = "fig4";
        p.spec.id = BenchmarkId::II_zz;
        p.spec.trials = 320;
        p.spec.noise.delta_uniform[GateClass::Rz] = 0.2;
        p.spec.noise.delta_uniform[GateClass::ZZ] = 0.2;
        p.param = "m";
        p.values = {2, 4, 6, 8, 10};
        presets.push_back(std::move(p));
    }
    {  // Benchmark III success vs dephasing rate at m = 5 (alpha = 1).
        FigPreset p;
        p.name = "fig5";
        p.spec.id = BenchmarkId::III_unknown_gamma;
        p.spec.alpha = 1.0;
        p.spec.m = 5;
        p.spec.trials = 2000;
        p.param = "dephasing_ratio";
        p.values = {0.0, 0.01, 0.02, 0.05, 0.1, 0.2};
        p.average_alpha = false;
        presets.push_back(std::move(p));
    }
    {  // Benchmark III achievable-m budget study (analytic floor).
        FigPreset p;
        p.name = "fig6";
        p.spec.id = BenchmarkId::III_unknown_gamma;
        p.spec.alpha = 1.0;
        p.spec.trials = 1;
        p.param = "dephasing_ratio";
        p.values = {0.01, 0.02, 0.05, 0.1};
        p.average_alpha = false;
        presets.push_back(std::move(p));
    }
    return presets;
}

}  // namespace qpe
