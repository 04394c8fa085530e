#include "breaktime/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "breaktime/errors.hpp"
#include "breaktime/quadrature.hpp"

namespace breaktime {
namespace {

constexpr double kIntegralTol = 1e-10;   // absolute, per integral
constexpr double kQuantileEps = 1e-12;   // truncation point: 1 - eps quantile

void check_atom_collision(const DistributionSpec& uptime, const DistributionSpec& proc) {
    if (uptime.family() == Family::Deterministic && proc.family() == Family::Deterministic &&
        std::get<Deterministic>(uptime.law()).value == std::get<Deterministic>(proc.law()).value) {
        throw AtomCollision("uptime and processing time are point masses at the same value; "
                            "the success/failure tie has positive probability");
    }
}

ConditionalMoments certain_success(const DistributionSpec& proc) {
    ConditionalMoments cm;
    cm.q = 0.0;
    cm.one_minus_q = 1.0;
    cm.a = raw_moment(proc, 1);
    cm.c = raw_moment(proc, 2);
    return cm;
}

ConditionalMoments certain_failure(const DistributionSpec& uptime) {
    ConditionalMoments cm;
    cm.q = 1.0;
    cm.one_minus_q = 0.0;
    cm.b = raw_moment(uptime, 1);
    cm.d = raw_moment(uptime, 2);
    return cm;
}

// Exact degeneracies detectable from the supports. With at most one atom
// involved, a tie at a shared boundary has probability zero.
std::optional<ConditionalMoments> detect_support_degeneracy(const DistributionSpec& uptime,
                                                            const DistributionSpec& proc) {
    if (proc.upper_support() <= uptime.lower_support()) return certain_success(proc);
    if (uptime.upper_support() <= proc.lower_support()) return certain_failure(uptime);
    return std::nullopt;
}

// Deterministic uptime u0 against a continuous processing law.
ConditionalMoments det_uptime_stats(double u0, const DistributionSpec& proc) {
    ConditionalMoments cm;
    cm.q = tail_prob(proc, u0);      // P{p > u0}
    cm.one_minus_q = cdf(proc, u0);  // P{p <= u0}
    if (cm.one_minus_q > 0.0) {
        cm.a = partial_raw_moment(proc, 1, u0) / cm.one_minus_q;
        cm.c = partial_raw_moment(proc, 2, u0) / cm.one_minus_q;
    }
    if (cm.q > 0.0) {
        cm.b = u0;
        cm.d = u0 * u0;
    }
    return cm;
}

// Continuous uptime against a deterministic processing time t0.
ConditionalMoments det_proc_stats(const DistributionSpec& uptime, double t0) {
    ConditionalMoments cm;
    cm.q = cdf(uptime, t0);            // P{U < t0}, no atom at t0
    cm.one_minus_q = tail_prob(uptime, t0);
    if (cm.one_minus_q > 0.0) {
        cm.a = t0;
        cm.c = t0 * t0;
    }
    if (cm.q > 0.0) {
        cm.b = partial_raw_moment(uptime, 1, t0) / cm.q;
        cm.d = partial_raw_moment(uptime, 2, t0) / cm.q;
    }
    return cm;
}

ConditionalMoments exp_exp_stats(double uptime_rate, double proc_rate) {
    const double total = uptime_rate + proc_rate;
    ConditionalMoments cm;
    cm.q = uptime_rate / total;
    cm.one_minus_q = proc_rate / total;
    cm.a = 1.0 / total;
    cm.b = 1.0 / total;
    cm.c = 2.0 / (total * total);
    cm.d = 2.0 / (total * total);
    return cm;
}

// Support edges plus interior quantiles of both laws. The quantile seeds
// guarantee the initial segmentation brackets each law's mass, so a widely
// spread law cannot hide between the nodes of one huge first segment and
// fake convergence.
std::vector<double> integration_breakpoints(const DistributionSpec& uptime,
                                            const DistributionSpec& proc) {
    static constexpr double kSeedQuantiles[] = {0.01, 0.1, 0.25, 0.5,   0.75,
                                                0.9,  0.99, 0.999, 1.0 - 1e-6, 1.0 - 1e-9};
    std::vector<double> pts;
    for (const DistributionSpec* dist : {&uptime, &proc}) {
        pts.push_back(dist->lower_support());
        if (std::isfinite(dist->upper_support())) pts.push_back(dist->upper_support());
        for (double p : kSeedQuantiles) pts.push_back(quantile(*dist, p));
    }
    return pts;
}

struct TailBounds {
    double mass;  // tail probability of the measure beyond the truncation point
    double m1;    // bound on int_T^inf t^k weight(t) dF(t), k = 1, 2; the
    double m2;    // weight is the other law's survival, <= its value at T
};

TailBounds tail_bounds(const DistributionSpec& measure, const DistributionSpec& weight_law,
                       double t_max) {
    if (!std::isfinite(t_max)) return {0.0, 0.0, 0.0};
    const double weight_cap = std::min(1.0, tail_prob(weight_law, t_max));
    return {tail_prob(measure, t_max),
            weight_cap * std::max(0.0, raw_moment(measure, 1) -
                                           partial_raw_moment(measure, 1, t_max)),
            weight_cap * std::max(0.0, raw_moment(measure, 2) -
                                           partial_raw_moment(measure, 2, t_max))};
}

struct IntegralSide {
    double num1 = 0.0;   // int t   * weight(t) dF(t)
    double num2 = 0.0;   // int t^2 * weight(t) dF(t)
    double err1 = 0.0;
    double err2 = 0.0;
};

// Numerator integrals against a continuous law `measure` with the other
// law's weight function P{other side beats t}.
IntegralSide integrate_numerators(const DistributionSpec& measure,
                                  const DistributionSpec& weight_law,
                                  const std::function<double(double)>& weight, double t_max,
                                  const std::vector<double>& breakpoints) {
    IntegralSide side;
    const TailBounds tail = tail_bounds(measure, weight_law, t_max);
    auto r1 = integrate([&](double t) { return t * weight(t) * pdf(measure, t); }, 0.0, t_max,
                        kIntegralTol, breakpoints);
    auto r2 = integrate([&](double t) { return t * t * weight(t) * pdf(measure, t); }, 0.0, t_max,
                        kIntegralTol, breakpoints);
    side.num1 = r1.value;
    side.num2 = r2.value;
    side.err1 = r1.est_abs_error + tail.m1;
    side.err2 = r2.est_abs_error + tail.m2;
    return side;
}

ConditionalMoments generic_stats(const DistributionSpec& uptime, const DistributionSpec& proc) {
    const double t_max = std::max(quantile(uptime, 1.0 - kQuantileEps),
                                  quantile(proc, 1.0 - kQuantileEps));
    const std::vector<double> breakpoints = integration_breakpoints(uptime, proc);

    ConditionalMoments cm;
    cm.method = MomentMethod::Quadrature;

    // Failure probability q and its complement. Both are integrated
    // directly so that neither is left to a cancellation-prone 1 - x.
    double q, s, err_q, err_s;
    if (proc.is_continuous()) {
        const double proc_tail_mass = tail_prob(proc, t_max);
        auto qr = integrate([&](double t) { return cdf(uptime, t) * pdf(proc, t); }, 0.0, t_max,
                            kIntegralTol, breakpoints);
        auto sr = integrate([&](double t) { return tail_prob(uptime, t) * pdf(proc, t); }, 0.0,
                            t_max, kIntegralTol, breakpoints);
        q = qr.value;
        s = sr.value;
        err_q = qr.est_abs_error + proc_tail_mass;
        err_s = sr.est_abs_error + proc_tail_mass * std::min(1.0, tail_prob(uptime, t_max));
    } else {
        const double t0 = std::get<Deterministic>(proc.law()).value;
        q = cdf(uptime, t0);
        s = tail_prob(uptime, t0);  // P{U >= t0}: no uptime atom here
        err_q = err_s = 0.0;
    }
    q = std::clamp(q, 0.0, 1.0);
    s = std::clamp(s, 0.0, 1.0);
    const double total = q + s;
    if (total > 0.0) {
        q /= total;
        s /= total;
    }
    cm.q = q;
    cm.one_minus_q = s;

    double worst_err = err_q;

    // a, c: moments of p over the success event, normalized by P{U >= p}.
    if (s > 0.0) {
        double num1, num2, err1, err2;
        if (proc.is_continuous()) {
            auto side = integrate_numerators(
                proc, uptime, [&](double t) { return tail_prob(uptime, t); }, t_max,
                breakpoints);
            num1 = side.num1;
            num2 = side.num2;
            err1 = side.err1;
            err2 = side.err2;
        } else {
            const double t0 = std::get<Deterministic>(proc.law()).value;
            num1 = t0 * s;
            num2 = t0 * t0 * s;
            err1 = err2 = 0.0;
        }
        cm.a = num1 / s;
        cm.c = num2 / s;
        worst_err = std::max({worst_err, (err1 + *cm.a * err_s) / s, (err2 + *cm.c * err_s) / s});
    }

    // b, d: moments of U over the failure event, normalized by q.
    if (q > 0.0) {
        double num1, num2, err1, err2;
        if (uptime.is_continuous()) {
            auto side = integrate_numerators(
                uptime, proc, [&](double u) { return tail_prob(proc, u); }, t_max, breakpoints);
            num1 = side.num1;
            num2 = side.num2;
            err1 = side.err1;
            err2 = side.err2;
        } else {
            const double u0 = std::get<Deterministic>(uptime.law()).value;
            num1 = u0 * q;
            num2 = u0 * u0 * q;
            err1 = err2 = 0.0;
        }
        cm.b = num1 / q;
        cm.d = num2 / q;
        worst_err = std::max({worst_err, (err1 + *cm.b * err_q) / q, (err2 + *cm.d * err_q) / q});
    }

    cm.est_abs_error = worst_err;
    return cm;
}

}  // namespace

ConditionalMoments conditional_stats(const DistributionSpec& uptime,
                                     const DistributionSpec& proc) {
    check_atom_collision(uptime, proc);
    if (auto degenerate = detect_support_degeneracy(uptime, proc)) return *degenerate;

    if (uptime.family() == Family::Deterministic) {
        return det_uptime_stats(std::get<Deterministic>(uptime.law()).value, proc);
    }
    if (proc.family() == Family::Deterministic) {
        return det_proc_stats(uptime, std::get<Deterministic>(proc.law()).value);
    }
    if (uptime.family() == Family::Exponential && proc.family() == Family::Exponential) {
        return exp_exp_stats(std::get<Exponential>(uptime.law()).rate,
                             std::get<Exponential>(proc.law()).rate);
    }
    return generic_stats(uptime, proc);
}

ConditionalMoments conditional_stats_generic(const DistributionSpec& uptime,
                                             const DistributionSpec& proc) {
    check_atom_collision(uptime, proc);
    if (uptime.family() == Family::Deterministic && proc.family() == Family::Deterministic) {
        const double u0 = std::get<Deterministic>(uptime.law()).value;
        const double t0 = std::get<Deterministic>(proc.law()).value;
        return u0 < t0 ? certain_failure(uptime) : certain_success(proc);
    }
    return generic_stats(uptime, proc);
}

double success_probability(const DistributionSpec& uptime, const DistributionSpec& proc) {
    return conditional_stats(uptime, proc).q;
}

}  // namespace breaktime
