#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mixtop {

using json = nlohmann::json;

// A config validation failure; `field` names the offending config path.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string &field, const std::string &what)
        : std::invalid_argument("config field '" + field + "': " + what), field(field) {}
    std::string field;
};

struct RunOptions {
    uint64_t seed = 1;
    size_t budget_qubits = 24;  // syndrome bits and enumeration sites
    uint64_t mc_samples = 0;    // > 0 switches noisy entropies to sampling
    std::string trace_path;     // optimizer trace as JSON lines, if set
};

// quantities: entropy, cmi, negativity, braiding-table, memory-class,
// tee-witness, convex-roof
const std::vector<std::string> &quantities();

// one config per sweep point, in row-major order of the sweep keys
std::vector<json> expand_sweep(const json &config);

// Evaluates every sweep point (in parallel) and returns the output
// document: version, config, options, rows and any fits.
json run_experiment(const json &config, const RunOptions &opt);

// flat table of doc["rows"]; columns in order of first appearance
std::string to_csv(const json &doc);

}  // namespace mixtop
