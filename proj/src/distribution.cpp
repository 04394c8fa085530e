#include "breaktime/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "breaktime/errors.hpp"
#include "breaktime/specfun.hpp"

namespace breaktime {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2 = 1.4142135623730950488016887242097;
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

void require(bool ok, const char* message) {
    if (!ok) throw InvalidParameter(message);
}

void require_finite(double x, const char* message) {
    require(std::isfinite(x), message);
}

// Marsaglia-Tsang rejection sampler for Gamma(shape, 1), shape >= 1.
double gamma_variate_unit_scale(double shape, RandomState& rng) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double z = rng.standard_normal();
        const double t = 1.0 + c * z;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = rng.uniform_positive();
        if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
        if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

Exponential::Exponential(double rate) : rate(rate) {
    require_finite(rate, "exponential: rate must be finite");
    require(rate > 0.0, "exponential: rate must be > 0");
}

Uniform::Uniform(double lo, double hi) : lo(lo), hi(hi) {
    require_finite(lo, "uniform: lo must be finite");
    require_finite(hi, "uniform: hi must be finite");
    require(lo >= 0.0, "uniform: lo must be >= 0");
    require(hi > lo, "uniform: hi must be > lo");
}

Gamma::Gamma(double shape, double scale) : shape(shape), scale(scale) {
    require_finite(shape, "gamma: shape must be finite");
    require_finite(scale, "gamma: scale must be finite");
    require(shape > 0.0, "gamma: shape must be > 0");
    require(scale > 0.0, "gamma: scale must be > 0");
}

Weibull::Weibull(double shape, double scale) : shape(shape), scale(scale) {
    require_finite(shape, "weibull: shape must be finite");
    require_finite(scale, "weibull: scale must be finite");
    require(shape > 0.0, "weibull: shape must be > 0");
    require(scale > 0.0, "weibull: scale must be > 0");
}

LogNormal::LogNormal(double log_mean, double log_sd) : log_mean(log_mean), log_sd(log_sd) {
    require_finite(log_mean, "lognormal: log_mean must be finite");
    require_finite(log_sd, "lognormal: log_sd must be finite");
    require(log_sd > 0.0, "lognormal: log_sd must be > 0");
}

Deterministic::Deterministic(double value) : value(value) {
    require_finite(value, "deterministic: value must be finite");
    require(value >= 0.0, "deterministic: value must be >= 0");
}

double DistributionSpec::lower_support() const {
    return std::visit(
        [](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Uniform>) return law.lo;
            else if constexpr (std::is_same_v<T, Deterministic>) return law.value;
            else return 0.0;
        },
        law_);
}

double DistributionSpec::upper_support() const {
    return std::visit(
        [](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Uniform>) return law.hi;
            else if constexpr (std::is_same_v<T, Deterministic>) return law.value;
            else return kInf;
        },
        law_);
}

const char* family_name(Family family) {
    switch (family) {
        case Family::Exponential: return "exponential";
        case Family::Uniform: return "uniform";
        case Family::Gamma: return "gamma";
        case Family::Weibull: return "weibull";
        case Family::LogNormal: return "lognormal";
        case Family::Deterministic: return "deterministic";
    }
    return "?";
}

double pdf(const DistributionSpec& dist, double x) {
    require_finite(x, "pdf: x must be finite");
    if (x < 0.0) return 0.0;
    return std::visit(
        [x](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return law.rate * std::exp(-law.rate * x);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return (x >= law.lo && x <= law.hi) ? 1.0 / (law.hi - law.lo) : 0.0;
            } else if constexpr (std::is_same_v<T, Gamma>) {
                if (x == 0.0) {
                    if (law.shape > 1.0) return 0.0;
                    if (law.shape == 1.0) return 1.0 / law.scale;
                    return kInf;
                }
                return std::exp((law.shape - 1.0) * std::log(x) - x / law.scale -
                                std::lgamma(law.shape) - law.shape * std::log(law.scale));
            } else if constexpr (std::is_same_v<T, Weibull>) {
                if (x == 0.0) {
                    if (law.shape > 1.0) return 0.0;
                    if (law.shape == 1.0) return 1.0 / law.scale;
                    return kInf;
                }
                const double y = x / law.scale;
                return (law.shape / law.scale) * std::pow(y, law.shape - 1.0) *
                       std::exp(-std::pow(y, law.shape));
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                if (x == 0.0) return 0.0;
                const double z = (std::log(x) - law.log_mean) / law.log_sd;
                return kInvSqrt2Pi / (x * law.log_sd) * std::exp(-0.5 * z * z);
            } else {
                throw UnsupportedForDeterministic("pdf: point mass has no density");
            }
        },
        dist.law());
}

double cdf(const DistributionSpec& dist, double x) {
    require_finite(x, "cdf: x must be finite");
    if (x < 0.0) return 0.0;
    const double value = std::visit(
        [x](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return -std::expm1(-law.rate * x);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (x <= law.lo) return 0.0;
                if (x >= law.hi) return 1.0;
                return (x - law.lo) / (law.hi - law.lo);
            } else if constexpr (std::is_same_v<T, Gamma>) {
                return regularized_gamma_p(law.shape, x / law.scale);
            } else if constexpr (std::is_same_v<T, Weibull>) {
                if (x == 0.0) return 0.0;
                return -std::expm1(-std::pow(x / law.scale, law.shape));
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                if (x == 0.0) return 0.0;
                return normal_cdf((std::log(x) - law.log_mean) / law.log_sd);
            } else {
                return x >= law.value ? 1.0 : 0.0;
            }
        },
        dist.law());
    return std::clamp(value, 0.0, 1.0);
}

double survival(const DistributionSpec& dist, double x) {
    return 1.0 - cdf(dist, x);
}

double tail_prob(const DistributionSpec& dist, double x) {
    require_finite(x, "tail_prob: x must be finite");
    if (x < 0.0) return 1.0;
    const double value = std::visit(
        [x](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return std::exp(-law.rate * x);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (x <= law.lo) return 1.0;
                if (x >= law.hi) return 0.0;
                return (law.hi - x) / (law.hi - law.lo);
            } else if constexpr (std::is_same_v<T, Gamma>) {
                return regularized_gamma_q(law.shape, x / law.scale);
            } else if constexpr (std::is_same_v<T, Weibull>) {
                if (x == 0.0) return 1.0;
                return std::exp(-std::pow(x / law.scale, law.shape));
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                if (x == 0.0) return 1.0;
                return normal_cdf(-(std::log(x) - law.log_mean) / law.log_sd);
            } else {
                return x < law.value ? 1.0 : 0.0;
            }
        },
        dist.law());
    return std::clamp(value, 0.0, 1.0);
}

double raw_moment(const DistributionSpec& dist, int k) {
    require(k == 1 || k == 2, "raw_moment: order must be 1 or 2");
    return std::visit(
        [k](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return k == 1 ? 1.0 / law.rate : 2.0 / (law.rate * law.rate);
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (k == 1) return 0.5 * (law.lo + law.hi);
                return (law.lo * law.lo + law.lo * law.hi + law.hi * law.hi) / 3.0;
            } else if constexpr (std::is_same_v<T, Gamma>) {
                return k == 1 ? law.shape * law.scale
                              : law.shape * (law.shape + 1.0) * law.scale * law.scale;
            } else if constexpr (std::is_same_v<T, Weibull>) {
                return std::pow(law.scale, k) * std::tgamma(1.0 + k / law.shape);
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                const double s2 = law.log_sd * law.log_sd;
                return k == 1 ? std::exp(law.log_mean + 0.5 * s2)
                              : std::exp(2.0 * law.log_mean + 2.0 * s2);
            } else {
                return k == 1 ? law.value : law.value * law.value;
            }
        },
        dist.law());
}

double partial_raw_moment(const DistributionSpec& dist, int k, double x) {
    require(k == 1 || k == 2, "partial_raw_moment: order must be 1 or 2");
    if (std::isnan(x)) throw InvalidParameter("partial_raw_moment: x must not be NaN");
    if (x <= 0.0) return 0.0;
    return std::visit(
        [k, x](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                const double r = law.rate;
                if (std::isinf(x)) return k == 1 ? 1.0 / r : 2.0 / (r * r);
                const double e = std::exp(-r * x);
                if (k == 1) return (1.0 - e * (1.0 + r * x)) / r;
                return 2.0 / (r * r) - e * (x * x + 2.0 * x / r + 2.0 / (r * r));
            } else if constexpr (std::is_same_v<T, Uniform>) {
                if (x <= law.lo) return 0.0;
                const double xc = std::min(x, law.hi);
                const double kk = k + 1;
                return (std::pow(xc, kk) - std::pow(law.lo, kk)) / (kk * (law.hi - law.lo));
            } else if constexpr (std::is_same_v<T, Gamma>) {
                const double y = std::isinf(x) ? kInf : x / law.scale;
                if (k == 1) {
                    return law.shape * law.scale * regularized_gamma_p(law.shape + 1.0, y);
                }
                return law.shape * (law.shape + 1.0) * law.scale * law.scale *
                       regularized_gamma_p(law.shape + 2.0, y);
            } else if constexpr (std::is_same_v<T, Weibull>) {
                const double y = std::isinf(x) ? kInf : std::pow(x / law.scale, law.shape);
                const double order = 1.0 + k / law.shape;
                return std::pow(law.scale, k) * std::tgamma(order) *
                       regularized_gamma_p(order, y);
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                const double s = law.log_sd;
                const double full = k == 1 ? std::exp(law.log_mean + 0.5 * s * s)
                                           : std::exp(2.0 * law.log_mean + 2.0 * s * s);
                if (std::isinf(x)) return full;
                const double z = (std::log(x) - law.log_mean - k * s * s) / s;
                return full * normal_cdf(z);
            } else {
                return x >= law.value ? (k == 1 ? law.value : law.value * law.value) : 0.0;
            }
        },
        dist.law());
}

double quantile(const DistributionSpec& dist, double p) {
    require(p >= 0.0 && p <= 1.0, "quantile: p must lie in [0, 1]");
    if (p == 0.0) return dist.lower_support();
    if (p == 1.0) return dist.upper_support();
    return std::visit(
        [p, &dist](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return -std::log1p(-p) / law.rate;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return law.lo + p * (law.hi - law.lo);
            } else if constexpr (std::is_same_v<T, Weibull>) {
                return law.scale * std::pow(-std::log1p(-p), 1.0 / law.shape);
            } else if constexpr (std::is_same_v<T, Deterministic>) {
                return law.value;
            } else {
                // Gamma / LogNormal: bisection on the CDF.
                double lo = 0.0;
                double hi = 1.0;
                while (cdf(dist, hi) < p && hi < 1e300) hi *= 2.0;
                for (int i = 0; i < 200; ++i) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid == lo || mid == hi) break;
                    (cdf(dist, mid) < p ? lo : hi) = mid;
                }
                return 0.5 * (lo + hi);
            }
        },
        dist.law());
}

double sample(const DistributionSpec& dist, RandomState& rng) {
    return std::visit(
        [&rng](const auto& law) -> double {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return -std::log(rng.uniform_positive()) / law.rate;
            } else if constexpr (std::is_same_v<T, Uniform>) {
                return law.lo + (law.hi - law.lo) * rng.uniform();
            } else if constexpr (std::is_same_v<T, Gamma>) {
                if (law.shape >= 1.0) {
                    return law.scale * gamma_variate_unit_scale(law.shape, rng);
                }
                // shape < 1: boost from shape + 1 by a uniform power.
                const double g = gamma_variate_unit_scale(law.shape + 1.0, rng);
                return law.scale * g * std::pow(rng.uniform_positive(), 1.0 / law.shape);
            } else if constexpr (std::is_same_v<T, Weibull>) {
                return law.scale * std::pow(-std::log(rng.uniform_positive()), 1.0 / law.shape);
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                return std::exp(law.log_mean + law.log_sd * rng.standard_normal());
            } else {
                return law.value;
            }
        },
        dist.law());
}

}  // namespace breaktime
