#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "breaktime/rng.hpp"

namespace breaktime {

// Distribution families for uptimes, downtimes and processing times.
// All supports are contained in [0, +inf); every family has finite first
// and second raw moments. Parameters are validated at construction, so
// the evaluation functions below may assume a well-formed law.

struct Exponential {
    explicit Exponential(double rate);
    double rate;
    bool operator==(const Exponential&) const = default;
};

struct Uniform {
    Uniform(double lo, double hi);  // requires hi > lo >= 0
    double lo;
    double hi;
    bool operator==(const Uniform&) const = default;
};

struct Gamma {
    Gamma(double shape, double scale);
    double shape;
    double scale;
    bool operator==(const Gamma&) const = default;
};

struct Weibull {
    Weibull(double shape, double scale);
    double shape;
    double scale;
    bool operator==(const Weibull&) const = default;
};

struct LogNormal {
    LogNormal(double log_mean, double log_sd);  // log_sd > 0
    double log_mean;
    double log_sd;
    bool operator==(const LogNormal&) const = default;
};

// Point mass: the one family with an atom. It has a step CDF and no
// density; callers that need Stieltjes handling dispatch on is_continuous().
struct Deterministic {
    explicit Deterministic(double value);  // value >= 0
    double value;
    bool operator==(const Deterministic&) const = default;
};

enum class Family { Exponential, Uniform, Gamma, Weibull, LogNormal, Deterministic };

class DistributionSpec {
public:
    using Law = std::variant<Exponential, Uniform, Gamma, Weibull, LogNormal, Deterministic>;

    DistributionSpec(Exponential law) : law_(law) {}
    DistributionSpec(Uniform law) : law_(law) {}
    DistributionSpec(Gamma law) : law_(law) {}
    DistributionSpec(Weibull law) : law_(law) {}
    DistributionSpec(LogNormal law) : law_(law) {}
    DistributionSpec(Deterministic law) : law_(law) {}

    const Law& law() const { return law_; }
    Family family() const { return static_cast<Family>(law_.index()); }
    bool is_continuous() const { return family() != Family::Deterministic; }

    // Support bounds; upper_support() is +inf for unbounded families.
    double lower_support() const;
    double upper_support() const;

    bool operator==(const DistributionSpec&) const = default;

private:
    Law law_;
};

const char* family_name(Family family);

// Density. Zero outside the support; throws UnsupportedForDeterministic
// for the point-mass family, which has no density.
double pdf(const DistributionSpec& dist, double x);

// P{X <= x}; right-continuous, so cdf(Deterministic(v), v) == 1.
double cdf(const DistributionSpec& dist, double x);

// Exactly 1 - cdf(dist, x); survival(d,x) + cdf(d,x) == 1 holds bit-exactly.
double survival(const DistributionSpec& dist, double x);

// P{X > x} with full relative precision in the far tail, where
// 1 - cdf(x) would round away. Equals survival() up to rounding.
double tail_prob(const DistributionSpec& dist, double x);

// E[X^k] for k in {1, 2}.
double raw_moment(const DistributionSpec& dist, int k);

// Partial raw moment: integral of t^k over [0, x] against the law,
// i.e. E[X^k; X <= x]. Closed form for every family.
double partial_raw_moment(const DistributionSpec& dist, int k, double x);

// Smallest x with cdf(x) >= p. Closed-form inverse where available,
// CDF bisection otherwise.
double quantile(const DistributionSpec& dist, double p);

// One draw. Inverse-CDF for Exponential/Uniform/Weibull, Marsaglia-Tsang
// for Gamma, exp of a Box-Muller normal for LogNormal. Deterministic
// consumes no randomness, which keeps replay streams aligned.
double sample(const DistributionSpec& dist, RandomState& rng);

}  // namespace breaktime
