#pragma once

namespace breaktime {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// Series expansion for x < a + 1, continued fraction otherwise.
double regularized_gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed on the
// branch that keeps full relative precision in the tail.
double regularized_gamma_q(double a, double x);

// Standard normal CDF.
double normal_cdf(double z);

}  // namespace breaktime
