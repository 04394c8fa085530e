#pragma once

#include <string>
#include <vector>

#include "breaktime/conditional.hpp"
#include "breaktime/distribution.hpp"

namespace breaktime {

// One job on one machine: i.i.d. uptimes, i.i.d. downtimes, i.i.d.
// per-attempt processing times, all mutually independent. Work lost at a
// breakdown is redone from scratch on the next uptime.
struct EnvironmentScenario {
    DistributionSpec uptime;
    DistributionSpec downtime;
    DistributionSpec proc;
};

struct MomentReport {
    double q = 0.0;      // attempt failure probability, = cm.q
    double e_r = 0.0;    // E[R], R = completion time
    double e_r2 = 0.0;   // E[R^2]
    double var_r = 0.0;  // E[R^2] - E[R]^2
    ConditionalMoments cm;
    std::vector<std::string> notes;  // provenance of each quantity
};

// Warn when the failure probability is this close to 1: the geometric
// factor q/(1-q) then exceeds ~1e12 and results, while still computed,
// are numerically extreme.
inline constexpr double kNearDegenerateOneMinusQ = 1e-12;

// E[R] = a + (b + mu) q/(1-q); exact E[p] when q = 0 (b is not touched).
// Only the downtime mean enters, so the downtime law needs no second
// moment for this quantity. Throws NeverCompletes when q = 1.
double expected_completion(const ConditionalMoments& cm, double mu);

// E[R^2] = c + (2ab + 2 mu a + 2 mu b + d + nu) q/(1-q) + 2 (mu+b)^2 (q/(1-q))^2;
// exact E[p^2] when q = 0.
double second_moment(const ConditionalMoments& cm, double mu, double nu);

// Var[R] = E[R^2] - E[R]^2, clamped to zero within a 1e-9 relative slack
// for quadrature noise; materially negative values raise
// NumericalInconsistency.
double completion_variance(double e_r, double e_r2);
double completion_variance(const ConditionalMoments& cm, double mu, double nu);

// Exponential(lambda) uptime with a fixed processing time t:
// E[R] = (1/lambda + mu) (e^{lambda t} - 1).
double exponential_uptime_closed_form(double lambda, double t, double mu);

struct InstantaneousMoments {
    double e_r;
    double e_r2;
};

// Breakdowns that reset work but consume no time: the general formulas
// with mu = nu = 0.
InstantaneousMoments instantaneous_approximation(const ConditionalMoments& cm);

// Full analytic report for a scenario.
MomentReport analyze(const EnvironmentScenario& scenario);

}  // namespace breaktime
