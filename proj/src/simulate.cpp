#include "breaktime/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "breaktime/errors.hpp"

namespace breaktime {
namespace {

constexpr std::uint64_t kBlockSize = 4096;  // paths per reduction block

class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

struct BlockSums {
    double r = 0.0;
    double r2 = 0.0;
    double r4 = 0.0;
    double attempts = 0.0;
    std::uint64_t truncated = 0;
};

BlockSums run_block(const EnvironmentScenario& scenario, std::uint64_t seed,
                    std::uint64_t first_path, std::uint64_t last_path,
                    std::uint64_t max_attempts) {
    NeumaierSum r, r2, r4, attempts;
    std::uint64_t truncated = 0;
    for (std::uint64_t i = first_path; i < last_path; ++i) {
        RandomState rng(seed, i);
        try {
            const PathOutcome outcome = simulate_completion(scenario, rng, max_attempts);
            const double v = outcome.completion_time;
            r.add(v);
            r2.add(v * v);
            r4.add(v * v * v * v);
            attempts.add(static_cast<double>(outcome.attempts));
        } catch (const AttemptCapExceeded&) {
            ++truncated;
        }
    }
    return {r.value(), r2.value(), r4.value(), attempts.value(), truncated};
}

unsigned resolve_workers(unsigned workers, std::uint64_t blocks) {
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = std::min<unsigned>(workers, 64);
    return static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
}

}  // namespace

PathOutcome simulate_completion(const EnvironmentScenario& scenario, RandomState& rng,
                                std::uint64_t max_attempts) {
    if (max_attempts < 1) throw InvalidParameter("simulate_completion: max_attempts must be >= 1");
    double elapsed = 0.0;
    for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        const double p = sample(scenario.proc, rng);
        const double u = sample(scenario.uptime, rng);
        if (u >= p) return {elapsed + p, attempt};
        elapsed += u;
        elapsed += sample(scenario.downtime, rng);
    }
    throw AttemptCapExceeded("simulate_completion: no success within the attempt cap", 1);
}

double event_driven_replay(const EnvironmentScenario& scenario, RandomState& rng,
                           std::uint64_t max_attempts) {
    if (max_attempts < 1) throw InvalidParameter("event_driven_replay: max_attempts must be >= 1");
    double clock = 0.0;
    for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        const double work_required = sample(scenario.proc, rng);
        const double up_phase = sample(scenario.uptime, rng);
        // The machine works from the start of the up phase; work accrues at
        // unit rate until the job is done or the phase ends.
        const double work_done = std::min(work_required, up_phase);
        if (work_done >= work_required) {
            return clock + work_required;  // finished mid-phase
        }
        clock += up_phase;                      // breakdown: progress is lost
        clock += sample(scenario.downtime, rng);  // repair phase
    }
    throw AttemptCapExceeded("event_driven_replay: no success within the attempt cap", 1);
}

SimulationEstimate estimate_moments(const EnvironmentScenario& scenario, std::uint64_t n,
                                    std::uint64_t seed, std::uint64_t max_attempts,
                                    unsigned workers) {
    if (n < 2) throw InvalidParameter("estimate_moments: n must be >= 2");

    const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<BlockSums> sums(blocks);
    const unsigned worker_count = resolve_workers(workers, blocks);

    if (worker_count <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) {
            sums[b] = run_block(scenario, seed, b * kBlockSize,
                                std::min(n, (b + 1) * kBlockSize), max_attempts);
        }
    } else {
        std::atomic<std::uint64_t> next_block{0};
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (unsigned w = 0; w < worker_count; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint64_t b = next_block.fetch_add(1);
                    if (b >= blocks) return;
                    sums[b] = run_block(scenario, seed, b * kBlockSize,
                                        std::min(n, (b + 1) * kBlockSize), max_attempts);
                }
            });
        }
        for (auto& thread : pool) thread.join();
    }

    // Combine block sums in index order; the result is independent of
    // which worker ran which block.
    NeumaierSum r, r2, r4, attempts;
    std::uint64_t truncated = 0;
    for (const BlockSums& block : sums) {
        r.add(block.r);
        r2.add(block.r2);
        r4.add(block.r4);
        attempts.add(block.attempts);
        truncated += block.truncated;
    }
    if (truncated > 0) {
        throw AttemptCapExceeded("estimate_moments: " + std::to_string(truncated) + " of " +
                                     std::to_string(n) + " paths hit the attempt cap",
                                 truncated);
    }

    const double count = static_cast<double>(n);
    SimulationEstimate est;
    est.n = n;
    est.seed = seed;
    est.mean_r = r.value() / count;
    est.mean_r2 = r2.value() / count;
    est.mean_attempts = attempts.value() / count;
    const double var_r = std::max(0.0, (r2.value() - count * est.mean_r * est.mean_r) / (count - 1.0));
    const double var_r2 =
        std::max(0.0, (r4.value() - count * est.mean_r2 * est.mean_r2) / (count - 1.0));
    est.se_mean = std::sqrt(var_r / count);
    est.se_mean2 = std::sqrt(var_r2 / count);
    return est;
}

}  // namespace breaktime
