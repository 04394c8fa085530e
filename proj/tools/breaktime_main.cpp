#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "breaktime/errors.hpp"
#include "breaktime/scenario_io.hpp"

namespace {

using namespace breaktime;

// exit codes: 0 ok, 1 validation mismatch, 2 input error,
//             3 degenerate model, 4 numerical failure

unsigned workers_from_env() {
    const char* raw = std::getenv("BREAKTIME_WORKERS");
    if (raw == nullptr) return 0;
    char* end = nullptr;
    const unsigned long value = std::strtoul(raw, &end, 10);
    if (end == raw || value == 0 || value > 1024) return 0;  // malformed: fall back to auto
    return static_cast<unsigned>(value);
}

SimulationParams resolve_params(const ScenarioFile& file, const std::optional<std::uint64_t>& n,
                                const std::optional<std::uint64_t>& seed) {
    SimulationParams params = file.simulation.value_or(SimulationParams{});
    if (n) params.n = *n;
    if (seed) params.seed = *seed;
    if (params.n < 2) throw ParseError("n must be >= 2");
    return params;
}

int run_analyze(const std::string& path, bool as_json) {
    const ScenarioFile file = load_scenario_file(path);
    const MomentReport report = analyze(file.scenario);
    std::cout << (as_json ? report_to_json(file.name, report)
                          : report_to_text(file.name, report));
    return 0;
}

int run_simulate(const std::string& path, bool as_json, const std::optional<std::uint64_t>& n,
                 const std::optional<std::uint64_t>& seed) {
    const ScenarioFile file = load_scenario_file(path);
    const SimulationParams params = resolve_params(file, n, seed);
    const SimulationEstimate estimate = estimate_moments(file.scenario, params.n, params.seed,
                                                         params.max_attempts, workers_from_env());
    std::cout << (as_json ? estimate_to_json(file.name, estimate)
                          : estimate_to_text(file.name, estimate));
    return 0;
}

int run_validate(const std::string& path, const std::optional<std::uint64_t>& n,
                 const std::optional<std::uint64_t>& seed, double corrupt_e_r2) {
    const ScenarioFile file = load_scenario_file(path);
    const SimulationParams params = resolve_params(file, n, seed);
    MomentReport report = analyze(file.scenario);
    report.e_r2 *= corrupt_e_r2;  // 1.0 unless the sensitivity hook is used
    const SimulationEstimate estimate = estimate_moments(file.scenario, params.n, params.seed,
                                                         params.max_attempts, workers_from_env());
    const ValidationResult result = compare_moments(report, estimate);
    std::cout << validation_to_text(file.name, estimate, result);
    return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moments of preempt-repeat job completion times under machine breakdowns"};
    app.require_subcommand(1);

    std::string path;
    bool as_json = false;
    std::optional<std::uint64_t> n_override;
    std::optional<std::uint64_t> seed_override;
    double corrupt_e_r2 = 1.0;

    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "closed-form / quadrature moments of a scenario");
    analyze_cmd->add_option("file", path, "scenario file")->required();
    analyze_cmd->add_flag("--json", as_json, "emit a JSON object");

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Monte Carlo estimate of the same moments");
    simulate_cmd->add_option("file", path, "scenario file")->required();
    simulate_cmd->add_flag("--json", as_json, "emit a JSON object");
    simulate_cmd->add_option("--n", n_override, "number of simulated paths");
    simulate_cmd->add_option("--seed", seed_override, "root seed");

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "compare analytic moments against the simulation");
    validate_cmd->add_option("file", path, "scenario file")->required();
    validate_cmd->add_option("--n", n_override, "number of simulated paths");
    validate_cmd->add_option("--seed", seed_override, "root seed");
    // Harness sensitivity hook: scales the analytic E[R^2] before comparison
    // so tests can confirm the z-score gate actually rejects.
    validate_cmd->add_option("--corrupt-e-r2", corrupt_e_r2)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze_cmd)) return run_analyze(path, as_json);
        if (app.got_subcommand(simulate_cmd)) return run_simulate(path, as_json, n_override, seed_override);
        return run_validate(path, n_override, seed_override, corrupt_e_r2);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const QuadratureFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const NumericalInconsistency& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const NeverCompletes& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const AttemptCapExceeded& e) {
        std::cerr << "error: " << e.what() << " (" << e.truncated_paths << " truncated paths)\n";
        return 3;
    } catch (const AtomCollision& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const UndefinedMoment& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
