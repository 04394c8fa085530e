#include "breaktime/engine.hpp"

#include <cmath>
#include <cstdio>

#include "breaktime/errors.hpp"

namespace breaktime {
namespace {

void require_completion_possible(const ConditionalMoments& cm) {
    if (cm.one_minus_q <= 0.0) {
        throw NeverCompletes("job never completes (q=1): every attempt fails");
    }
}

double require_defined(const std::optional<double>& moment, const char* name) {
    if (!moment) {
        throw UndefinedMoment(std::string("conditional moment ") + name +
                              " is undefined for this scenario");
    }
    return *moment;
}

std::string format_note(const char* fmt, double x) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), fmt, x);
    return buf;
}

}  // namespace

double expected_completion(const ConditionalMoments& cm, double mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw InvalidParameter("expected_completion: mu must be finite and >= 0");
    }
    require_completion_possible(cm);
    const double a = require_defined(cm.a, "a");
    if (cm.q == 0.0) return a;  // R = p almost surely
    const double b = require_defined(cm.b, "b");
    return a + (b + mu) * (cm.q / cm.one_minus_q);
}

double second_moment(const ConditionalMoments& cm, double mu, double nu) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw InvalidParameter("second_moment: mu must be finite and >= 0");
    }
    if (!(nu >= mu * mu) || !std::isfinite(nu)) {
        throw InvalidParameter("second_moment: nu must be finite and >= mu^2");
    }
    require_completion_possible(cm);
    const double c = require_defined(cm.c, "c");
    if (cm.q == 0.0) return c;  // R = p almost surely
    const double a = require_defined(cm.a, "a");
    const double b = require_defined(cm.b, "b");
    const double d = require_defined(cm.d, "d");
    const double g = cm.q / cm.one_minus_q;
    return c + (2.0 * a * b + 2.0 * mu * a + 2.0 * mu * b + d + nu) * g +
           2.0 * (mu + b) * (mu + b) * g * g;
}

double completion_variance(double e_r, double e_r2) {
    const double var = e_r2 - e_r * e_r;
    if (var >= 0.0) return var;
    if (-var <= 1e-9 * e_r2) return 0.0;  // quadrature noise on c, d
    throw NumericalInconsistency(
        format_note("completion_variance: E[R^2] - E[R]^2 is materially negative (%.6e)", var));
}

double completion_variance(const ConditionalMoments& cm, double mu, double nu) {
    return completion_variance(expected_completion(cm, mu), second_moment(cm, mu, nu));
}

double exponential_uptime_closed_form(double lambda, double t, double mu) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidParameter("exponential_uptime_closed_form: lambda must be > 0");
    }
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw InvalidParameter("exponential_uptime_closed_form: t must be > 0");
    }
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw InvalidParameter("exponential_uptime_closed_form: mu must be >= 0");
    }
    return (1.0 / lambda + mu) * std::expm1(lambda * t);
}

InstantaneousMoments instantaneous_approximation(const ConditionalMoments& cm) {
    return {expected_completion(cm, 0.0), second_moment(cm, 0.0, 0.0)};
}

MomentReport analyze(const EnvironmentScenario& scenario) {
    MomentReport report;
    report.cm = conditional_stats(scenario.uptime, scenario.proc);
    report.q = report.cm.q;

    if (report.cm.method == MomentMethod::ClosedForm) {
        report.notes.push_back("conditional moments: closed form");
    } else {
        report.notes.push_back(format_note(
            "conditional moments: adaptive quadrature (est abs error <= %.3e)",
            report.cm.est_abs_error));
    }

    const double mu = raw_moment(scenario.downtime, 1);
    const double nu = raw_moment(scenario.downtime, 2);
    report.e_r = expected_completion(report.cm, mu);
    report.e_r2 = second_moment(report.cm, mu, nu);
    report.var_r = completion_variance(report.e_r, report.e_r2);
    report.notes.push_back("E[R], E[R^2]: attempt-moment formulas; Var[R] = E[R^2] - E[R]^2");

    if (report.cm.one_minus_q < kNearDegenerateOneMinusQ) {
        report.notes.push_back(
            "WARNING: near-degenerate scenario (q > 1 - 1e-12); moments are numerically extreme");
    }
    return report;
}

}  // namespace breaktime
