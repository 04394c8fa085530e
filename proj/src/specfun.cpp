#include "breaktime/specfun.hpp"

#include <cmath>
#include <limits>

#include "breaktime/errors.hpp"

namespace breaktime {
namespace {

constexpr int kMaxIterations = 400;
constexpr double kEpsilon = 1e-16;

// gamma(a,x)/Gamma(a) by power series, reliable for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEpsilon) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NumericalInconsistency("incomplete gamma series did not converge");
}

// Gamma(a,x)/Gamma(a) by modified Lentz continued fraction, for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEpsilon) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NumericalInconsistency("incomplete gamma continued fraction did not converge");
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || std::isnan(x)) {
        throw InvalidParameter("regularized_gamma_p requires a > 0 and finite x");
    }
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || std::isnan(x)) {
        throw InvalidParameter("regularized_gamma_q requires a > 0 and finite x");
    }
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / 1.4142135623730950488016887242097);
}

}  // namespace breaktime
