#pragma once

#include <cstdint>

#include "breaktime/engine.hpp"
#include "breaktime/rng.hpp"

namespace breaktime {

struct PathOutcome {
    double completion_time;
    std::uint64_t attempts;  // index of the first successful attempt
};

struct SimulationEstimate {
    std::uint64_t n = 0;
    double mean_r = 0.0;
    double mean_r2 = 0.0;
    double se_mean = 0.0;   // sample sd of R / sqrt(n)
    double se_mean2 = 0.0;  // sample sd of R^2 / sqrt(n)
    double mean_attempts = 0.0;
    std::uint64_t max_attempts_hit = 0;  // always 0 for a returned estimate
    std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kDefaultMaxAttempts = 1000000;

// One completion time sampled by direct construction: attempts draw
// (p, U) until U >= p; every failed attempt adds its uptime and a fresh
// downtime to the clock. The downtime of the successful attempt is never
// drawn, so replaying a stream stays aligned. Draw order per attempt is
// fixed: p, U, then D only on failure.
PathOutcome simulate_completion(const EnvironmentScenario& scenario, RandomState& rng,
                                std::uint64_t max_attempts = kDefaultMaxAttempts);

// The same process executed as an explicit machine timeline: the clock
// moves through up and down phases, accumulated work resets on each
// breakdown, and the job finishes when uninterrupted work reaches the
// attempt's processing requirement. Uses the same draw order as
// simulate_completion and returns a bit-identical completion time; this
// is the semantic cross-check for the attempt-sum construction.
double event_driven_replay(const EnvironmentScenario& scenario, RandomState& rng,
                           std::uint64_t max_attempts = kDefaultMaxAttempts);

// Runs n independent paths, path i on substream RandomState(seed, i), and
// aggregates moment estimates. Deterministic for fixed inputs at any
// worker count: paths are accumulated in fixed-size blocks that are
// reduced in index order with compensated summation. workers = 0 picks
// the hardware concurrency. Throws AttemptCapExceeded if any path fails
// to complete, carrying the count of truncated paths; truncated paths
// are never averaged into an estimate.
SimulationEstimate estimate_moments(const EnvironmentScenario& scenario, std::uint64_t n,
                                    std::uint64_t seed,
                                    std::uint64_t max_attempts = kDefaultMaxAttempts,
                                    unsigned workers = 0);

}  // namespace breaktime
