#pragma once

#include <optional>

#include "breaktime/distribution.hpp"

namespace breaktime {

enum class MomentMethod { ClosedForm, Quadrature };

// Success/failure statistics of a single attempt: the job finishes iff the
// drawn uptime covers the drawn processing time (ties count as success).
//
//   q = P{U < p}                 one_minus_q = P{U >= p}
//   a = E[p   | U >= p]          c = E[p^2 | U >= p]
//   b = E[U   | U <  p]          d = E[U^2 | U <  p]
//
// a and c are undefined when the success event has probability zero
// (q = 1); b and d are undefined when failure is impossible (q = 0).
// Undefined moments are empty optionals, never placeholder numbers.
// one_minus_q is carried separately because 1 - q computed in doubles
// loses the tail when q is within a few ulp of 1.
struct ConditionalMoments {
    double q = 0.0;
    double one_minus_q = 1.0;
    std::optional<double> a;
    std::optional<double> b;
    std::optional<double> c;
    std::optional<double> d;
    MomentMethod method = MomentMethod::ClosedForm;
    double est_abs_error = 0.0;  // 0 for closed forms
};

// q = P{U < p} for independent uptime and processing laws.
// Throws AtomCollision when both laws are point masses at the same value.
double success_probability(const DistributionSpec& uptime, const DistributionSpec& proc);

// Full quintuple. Uses closed forms for (Exponential, Deterministic),
// (Exponential, Exponential), (Deterministic, any continuous) and
// (any continuous, Deterministic) pairs, plus exact handling when the
// two supports do not overlap; everything else goes through adaptive
// quadrature of the Stieltjes integrals
//   q = int F_U dF_p,  a,c = int t^k P{U>=t} dF_p / (1-q),
//   b,d = int u^k P{p>u} dF_U / q.
ConditionalMoments conditional_stats(const DistributionSpec& uptime,
                                     const DistributionSpec& proc);

// Same quantities with the closed-form shortcuts disabled: every integral
// against a continuous law is evaluated numerically. Atom contributions are
// still point evaluations (there is nothing to integrate). Exists so closed
// forms and quadrature can be checked against each other.
ConditionalMoments conditional_stats_generic(const DistributionSpec& uptime,
                                             const DistributionSpec& proc);

}  // namespace breaktime
