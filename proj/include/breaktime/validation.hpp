#pragma once

#include "breaktime/engine.hpp"
#include "breaktime/simulate.hpp"

namespace breaktime {

struct MomentComparison {
    double analytic = 0.0;
    double simulated = 0.0;
    double se = 0.0;
    double z = 0.0;
};

struct ValidationResult {
    MomentComparison first;   // E[R]
    MomentComparison second;  // E[R^2]
    bool pass = false;        // |z| <= threshold for both moments
    double threshold = 5.0;
};

// Cross-check the analytic moments against a Monte Carlo estimate.
// A zero standard error (constant completion time) passes only when the
// values agree to within rounding.
ValidationResult compare_moments(const MomentReport& report, const SimulationEstimate& estimate,
                                 double z_threshold = 5.0);

}  // namespace breaktime
