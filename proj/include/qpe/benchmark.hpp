#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpe/noise.hpp"
#include "qpe/phase.hpp"

namespace qpe {

/// The two-qubit IPEA benchmark circuits:
///   I_xx_cnots       controlled powers of a Z rotation via two XX-coupling CNOT blocks
///   II_zz / II_xx    the coupling term used directly
///   III_unknown_gamma  II_zz with the coupling angle unreduced (gamma unknown)
enum class BenchmarkId { I_xx_cnots, II_zz, II_xx, III_unknown_gamma };

BenchmarkId benchmark_id_from_string(const std::string& s);
std::string to_string(BenchmarkId id);

struct BenchmarkSpec {
    BenchmarkId id = BenchmarkId::II_zz;
    double alpha = 0.0;  // target angle; phi = alpha / 2 pi. For III, alpha = 2 gamma t.
    int m = 8;
    NoiseModel noise;
    int trials = 100;
    double eps = 0.05;  // overall target error for repetition plans
    std::uint64_t seed = 0;

    double phi() const;
};

struct BenchmarkResult {
    double success_rate = 0.0;
    std::vector<double> bit_correct_freq;  // index k-1: frequency x_k == phi_k
    long long total_measurements = 0;
    int trials = 0;
};

/// Exact gate sequence of the benchmark's k-th IPEA iteration (ancilla is
/// qubit 0, system qubit 1), with the feedback angle omega_k supplied by the
/// caller. Ops carry noise classes for the model.
Circuit build_benchmark_step(const BenchmarkSpec& spec, int k, double omega = 0.0);

/// Full m-bit feedback IPEA runs under the spec's noise model.
/// Success: estimate within 2^-m of phi (mod 1).
BenchmarkResult run_benchmark(const BenchmarkSpec& spec, Rng& rng);

/// Single-iteration success frequency with the feedback forced to the true
/// bits (isolates the conditional per-bit law P_k).
double conditional_bit_success(const BenchmarkSpec& spec, int k, int trials, Rng& rng);

/// True bits and remainder of phi = alpha / 2 pi.
std::vector<int> true_bits(double phi, int m);
double remainder_delta(double phi, int m);

/// Noise-free per-bit law and its noisy counterpart for benchmark III:
///   P_k     = cos^2(pi 2^{k-1} delta 2^-m)
///   P_k^err = (1 + e^{-sigma_x^2 - |alpha| 2^k ratio} cos(pi 2^k delta 2^-m)) / 2
double analytic_p_k(double delta, int m, int k);
double analytic_p_k_err(double delta, int m, int k, double alpha, double sigma_x, double ratio);

/// Repetition plan from the analytic per-bit law at the spec's parameters.
/// Throws if any P_k <= 0.5 (no finite plan exists).
RepetitionPlan measurement_budget(const BenchmarkSpec& spec);

/// Largest m whose noise-floor repetition plan (delta = 0, per-bit success
/// (1 + e^{-|alpha| 2^k ratio})/2, per-bit target eps/m) fits the budget.
int dephasing_budget_max_m(double ratio, double alpha, double eps, long long budget,
                           int m_limit = 16);

struct SweepRow {
    std::string param;
    double value = 0.0;
    BenchmarkResult result;
};

/// One benchmark run per value; curves averaged over a stratified 64-point
/// alpha grid with seed-derived jitter (except when sweeping alpha-dependent
/// parameters is meaningless, callers pick the fixed-alpha path via spec).
std::vector<SweepRow> sweep(const BenchmarkSpec& spec, const std::string& param,
                            const std::vector<double>& values, Rng& rng, bool average_alpha = true);

/// Named figure-reproduction presets (fig1..fig6).
struct FigPreset {
    std::string name;
    BenchmarkSpec spec;
    std::string param;
    std::vector<double> values;
    bool average_alpha = true;
};

std::vector<FigPreset> figure_presets();

}  // namespace qpe
