#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "breaktime/engine.hpp"
#include "breaktime/simulate.hpp"
#include "breaktime/validation.hpp"

namespace breaktime {

struct SimulationParams {
    std::uint64_t n = 100000;
    std::uint64_t seed = 0;
    std::uint64_t max_attempts = kDefaultMaxAttempts;
};

// A scenario file is a single JSON object:
//
//   {
//     "name": "exp-uptime-fixed-job",
//     "uptime":   {"family": "exponential", "rate": 1.0},
//     "downtime": {"family": "deterministic", "value": 0.5},
//     "proc":     {"family": "deterministic", "value": 0.693},
//     "simulation": {"n": 1000000, "seed": 42, "max_attempts": 1000000}
//   }
//
// The distribution record keys are exactly the family parameter names:
// exponential{rate}, uniform{lo,hi}, gamma{shape,scale}, weibull{shape,scale},
// lognormal{log_mean,log_sd}, deterministic{value}. The simulation block is
// optional and its members default to n=100000, seed=0, max_attempts=1000000.
struct ScenarioFile {
    std::string name;
    EnvironmentScenario scenario;
    std::optional<SimulationParams> simulation;
};

// Throws ParseError with a file:line anchored message on malformed JSON,
// and with a field-anchored message on schema or parameter violations.
ScenarioFile load_scenario_file(const std::string& path);
ScenarioFile parse_scenario_json(const std::string& text, const std::string& origin);

// All floating-point values serialize via "%.17g" so a parsed copy is
// bit-identical to the emitted one.
std::string format_double(double value);

std::string report_to_json(const std::string& name, const MomentReport& report);
std::string report_to_text(const std::string& name, const MomentReport& report);
std::string estimate_to_json(const std::string& name, const SimulationEstimate& estimate);
std::string estimate_to_text(const std::string& name, const SimulationEstimate& estimate);
std::string validation_to_text(const std::string& name, const SimulationEstimate& estimate,
                               const ValidationResult& result);

struct ParsedReport {
    std::string name;
    MomentReport report;
};

struct ParsedEstimate {
    std::string name;
    SimulationEstimate estimate;
};

ParsedReport parse_report_json(const std::string& text);
ParsedEstimate parse_estimate_json(const std::string& text);

}  // namespace breaktime
