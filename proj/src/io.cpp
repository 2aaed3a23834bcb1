#include "qpe/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qpe {

using nlohmann::json;

std::string to_json(const PhaseRunResult& r, int indent) {
    json j;
    j["algorithm"] = r.algorithm;
    j["m"] = r.m;
    if (r.phi_true) j["phi_true"] = *r.phi_true;
    j["bits"] = r.bits;
    j["estimate"] = r.estimate;
    j["shots"] = r.shots_used;
    json per_bit = json::array();
    for (const auto& b : r.per_bit)
        per_bit.push_back({{"k", b.k}, {"omega_k", b.omega}, {"n_k", b.n_k}, {"freq", b.freq}});
    j["per_bit"] = per_bit;
    if (r.success) j["success"] = *r.success;
    if (r.inconsistent) j["inconsistent"] = true;
    if (!r.iteration_phases.empty()) j["iteration_phases"] = r.iteration_phases;
    return j.dump(indent);
}

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows, int m, std::uint64_t seed,
                      const std::map<std::string, std::string>& meta) {
    std::ostringstream os;
    os << "# tool: " << kToolVersion << '\n';
    os << "# seed: " << seed << '\n';
    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
    os << "param,value,success_rate,total_measurements,m,seed\n";
    for (const auto& row : rows) {
        const int row_m = row.param == "m" ? static_cast<int>(row.value) : m;
        os << row.param << ',' << format_double(row.value) << ','
           << format_double(row.result.success_rate) << ',' << row.result.total_measurements
           << ',' << row_m << ',' << seed << '\n';
    }
    return os.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows, int m, std::uint64_t seed,
                       const std::map<std::string, std::string>& meta, int indent) {
    json j;
    j["tool"] = kToolVersion;
    j["seed"] = seed;
    for (const auto& [k, v] : meta) j["meta"][k] = v;
    json data = json::array();
    for (const auto& row : rows) {
        json r;
        r["param"] = row.param;
        r["value"] = row.value;
        r["success_rate"] = row.result.success_rate;
        r["total_measurements"] = row.result.total_measurements;
        r["m"] = row.param == "m" ? static_cast<int>(row.value) : m;
        r["seed"] = seed;
        data.push_back(r);
    }
    j["data"] = data;
    return j.dump(indent);
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit: cannot open " + path);
    f << text;
    if (!f) throw std::runtime_error("emit: write failed for " + path);
}

}  // namespace qpe
