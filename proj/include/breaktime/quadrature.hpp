#pragma once

#include <functional>
#include <vector>

namespace breaktime {

struct QuadratureResult {
    double value = 0.0;
    double est_abs_error = 0.0;
    int segments = 0;
};

// Adaptive Gauss-Kronrod (G7, K15) integration of f over [lo, hi].
//
// The interval is seeded with the given interior breakpoints (support
// edges, atoms), then the segment with the largest embedded-rule error
// estimate is bisected until the summed estimate drops below abs_tol.
// Throws QuadratureFailure if the tolerance is still unmet after
// max_segments subdivisions. Deterministic for a given integrand.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double abs_tol, const std::vector<double>& breakpoints = {},
                           int max_segments = 4000);

}  // namespace breaktime
