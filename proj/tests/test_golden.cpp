#include <string>

#include <doctest.h>

#include "breaktime/scenario_io.hpp"

using namespace breaktime;

namespace {

struct Golden {
    const char* file;
    double e_r;
    double e_r2;
};

// Expected values computed independently with 40-digit quadrature over the
// conditional-moment integrals, and confirmed by 1e7-path Monte Carlo runs
// of the retry process (all within 2 standard errors).
const Golden kGolden[] = {
    {"exp_exp_exp_down.json", 1.5, 5.0},
    {"exp_det_det_down.json", 1.5, 3.5911169166403281},
    {"exp_exp_uniform_down.json", 1.5, 4.6666666666666667},
    {"gamma_uniform_uniform_down.json", 1.3782740208061100, 2.7112550890818387},
    {"weibull_lognormal_exp_down.json", 0.87878519114954858, 1.4983361884695927},
    {"weibull_lognormal_det_down.json", 2.1060197343347126, 8.1890732935480889},
};

}  // namespace

TEST_CASE("golden scenarios reproduce their reference moments") {
    for (const Golden& golden : kGolden) {
        CAPTURE(golden.file);
        const ScenarioFile file =
            load_scenario_file(std::string(BREAKTIME_SCENARIO_DIR) + "/" + golden.file);
        const MomentReport report = analyze(file.scenario);
        CHECK(report.e_r == doctest::Approx(golden.e_r).epsilon(1e-10));
        CHECK(report.e_r2 == doctest::Approx(golden.e_r2).epsilon(1e-10));
        CHECK(report.var_r == doctest::Approx(golden.e_r2 - golden.e_r * golden.e_r)
                                  .epsilon(1e-8));
    }
}
