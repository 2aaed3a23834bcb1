#pragma once

#include <map>
#include <string>
#include <vector>

#include "qpe/benchmark.hpp"
#include "qpe/phase.hpp"

namespace qpe {

inline constexpr const char* kToolVersion = "qpelab 0.1.0";

/// JSON record {algorithm, m, phi_true?, bits, estimate, shots, per_bit: [...]}.
std::string to_json(const PhaseRunResult& r, int indent = 2);

/// CSV rows under the fixed header
/// "param,value,success_rate,total_measurements,m,seed"; metadata emitted as
/// leading '#' comment lines (no timestamps, so replays are byte-identical).
std::string sweep_csv(const std::vector<SweepRow>& rows, int m, std::uint64_t seed,
                      const std::map<std::string, std::string>& meta);

std::string sweep_json(const std::vector<SweepRow>& rows, int m, std::uint64_t seed,
                       const std::map<std::string, std::string>& meta, int indent = 2);

/// Write to path, or stdout when path is empty.
void emit(const std::string& text, const std::string& path);

}  // namespace qpe
