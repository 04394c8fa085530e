#include "breaktime/validation.hpp"

#include <cmath>
#include <limits>

namespace breaktime {
namespace {

MomentComparison compare_one(double analytic, double simulated, double se) {
    MomentComparison cmp;
    cmp.analytic = analytic;
    cmp.simulated = simulated;
    cmp.se = se;
    const double diff = simulated - analytic;
    if (se > 0.0) {
        cmp.z = diff / se;
    } else if (std::fabs(diff) <= 1e-12 * std::max(1.0, std::fabs(analytic))) {
        cmp.z = 0.0;
    } else {
        cmp.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    return cmp;
}

}  // namespace

ValidationResult compare_moments(const MomentReport& report, const SimulationEstimate& estimate,
                                 double z_threshold) {
    ValidationResult result;
    result.threshold = z_threshold;
    result.first = compare_one(report.e_r, estimate.mean_r, estimate.se_mean);
    result.second = compare_one(report.e_r2, estimate.mean_r2, estimate.se_mean2);
    result.pass = std::fabs(result.first.z) <= z_threshold &&
                  std::fabs(result.second.z) <= z_threshold;
    return result;
}

}  // namespace breaktime
