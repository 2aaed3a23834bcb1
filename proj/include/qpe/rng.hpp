#pragma once

#include <cmath>
#include <cstdint>

namespace qpe {

/// Splittable counter-based generator (SplitMix64 core). Every stochastic
/// operation takes an explicit Rng so experiments replay bit-exactly; child
/// streams derived via split() are independent of draw order in the parent.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream + kStreamSalt))) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no cached spare; draws two uniforms).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Derive an independent child stream; (seed, i) -> stream i.
    Rng split(std::uint64_t index) const {
        Rng child(0);
        child.key_ = mix(key_ ^ mix(index + kSplitSalt));
        child.counter_ = 0;
        return child;
    }

  private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    static constexpr std::uint64_t kStreamSalt = 0x6a09e667f3bcc909ULL;
    static constexpr std::uint64_t kSplitSalt = 0xbb67ae8584caa73bULL;

    static std::uint64_t mix(std::uint64_t z) {
        z += kGolden;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace qpe
