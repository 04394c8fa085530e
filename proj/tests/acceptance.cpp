// Acceptance suite: runs every release criterion and prints one line per
// criterion. Exit code is the number of failed criteria.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "breaktime/conditional.hpp"
#include "breaktime/engine.hpp"
#include "breaktime/errors.hpp"
#include "breaktime/scenario_io.hpp"
#include "breaktime/simulate.hpp"

using namespace breaktime;

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string command = env + " " + BREAKTIME_CLI_PATH + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return {-1, "popen failed"};
    std::string output;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), got);
    }
    return {WEXITSTATUS(pclose(pipe)), output};
}

std::string scenario_path(const char* file) {
    return std::string(BREAKTIME_SCENARIO_DIR) + "/" + file;
}

bool check(bool ok, std::string& detail, const std::string& on_failure) {
    if (!ok && detail.empty()) detail = on_failure;
    return ok;
}

// --- criterion 1: closed-form reproduction over a parameter grid ---------

bool criterion_closed_form_grid(std::string& detail) {
    for (double lambda : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (double t : {0.1, 0.5, 1.0, 2.0, 4.0}) {
            for (double mu : {0.0, 0.5, 2.0}) {
                const auto cm = conditional_stats(Exponential(lambda), Deterministic(t));
                const double generic = expected_completion(cm, mu);
                const double closed = exponential_uptime_closed_form(lambda, t, mu);
                const double rel = std::fabs(generic - closed) / closed;
                if (!(rel <= 1e-9)) {
                    std::ostringstream oss;
                    oss << "lambda=" << lambda << " t=" << t << " mu=" << mu
                        << " rel err " << rel;
                    detail = oss.str();
                    return false;
                }
            }
        }
    }
    detail = "75 grid points within 1e-9 relative";
    return true;
}

// --- criterion 2: analytic moments vs Monte Carlo on the golden set ------

bool criterion_golden_validation(std::string& detail) {
    const std::vector<const char*> files = {
        "exp_exp_exp_down.json",       "exp_det_det_down.json",
        "exp_exp_uniform_down.json",   "gamma_uniform_uniform_down.json",
        "weibull_lognormal_exp_down.json", "weibull_lognormal_det_down.json",
    };
    for (const char* file : files) {
        const auto result = run_cli("validate " + scenario_path(file));
        if (result.exit_code != 0) {
            detail = std::string(file) + " exited " + std::to_string(result.exit_code);
            return false;
        }
    }
    detail = std::to_string(files.size()) + " scenarios, n=1e6 each, all |z| <= 5";
    return true;
}

// --- criterion 3: geometric attempt-count law -----------------------------

bool criterion_attempt_law(std::string& detail) {
    const EnvironmentScenario scenario{Exponential(1.0), Deterministic(0.5),
                                       Deterministic(0.69314718055994531)};  // q = 1/2
    const double q = success_probability(scenario.uptime, scenario.proc);
    const std::uint64_t n = 1000000;
    std::array<std::uint64_t, 11> histogram{};
    for (std::uint64_t i = 0; i < n; ++i) {
        RandomState rng(20250810, i);
        const auto outcome = simulate_completion(scenario, rng);
        if (outcome.attempts <= 10) ++histogram[outcome.attempts];
    }
    double worst = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const double expected = (1.0 - q) * std::pow(q, k - 1);
        const double observed = histogram[k] / static_cast<double>(n);
        const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(n));
        const double z = std::fabs(observed - expected) / se;
        worst = std::max(worst, z);
        if (z > 5.0) {
            detail = "attempt count " + std::to_string(k) + " off by " + std::to_string(z) +
                     " binomial se";
            return false;
        }
    }
    std::ostringstream oss;
    oss << "P{attempts=k}, k=1..10, worst |z| = " << worst;
    detail = oss.str();
    return true;
}

// --- criterion 4: q = 0 and q = 1 degeneracies ----------------------------

bool criterion_degeneracies(std::string& detail) {
    const EnvironmentScenario first_try{Deterministic(5.0), Exponential(1.0),
                                        Uniform(0.0, 1.0)};
    const auto report = analyze(first_try);
    if (!check(report.q == 0.0, detail, "q should be exactly 0")) return false;
    if (!check(report.e_r == raw_moment(first_try.proc, 1), detail,
               "E[R] != E[p] exactly")) {
        return false;
    }
    if (!check(report.e_r2 == raw_moment(first_try.proc, 2), detail,
               "E[R^2] != E[p^2] exactly")) {
        return false;
    }
    for (std::uint64_t i = 0; i < 10000; ++i) {
        RandomState rng(4, i);
        if (simulate_completion(first_try, rng).attempts != 1) {
            detail = "a q=0 path took more than one attempt";
            return false;
        }
    }

    const EnvironmentScenario never{Deterministic(1.0), Deterministic(1.0), Deterministic(2.0)};
    try {
        analyze(never);
        detail = "q=1 scenario did not raise NeverCompletes";
        return false;
    } catch (const NeverCompletes&) {
    }
    try {
        estimate_moments(never, 100, 0, 1000);
        detail = "q=1 simulation did not raise AttemptCapExceeded";
        return false;
    } catch (const AttemptCapExceeded&) {
    }
    detail = "q=0 moments exact, attempts == 1; q=1 raises on both paths";
    return true;
}

// --- criterion 5: instantaneous-breakdown limit ---------------------------

bool criterion_instantaneous_limit(std::string& detail) {
    const auto cm = conditional_stats(Exponential(1.0), Exponential(1.0));
    const auto approx = instantaneous_approximation(cm);
    std::vector<double> err_r, err_r2;
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        const DistributionSpec downtime = Deterministic(eps);
        const double mu = raw_moment(downtime, 1);
        const double nu = raw_moment(downtime, 2);
        err_r.push_back(std::fabs(expected_completion(cm, mu) - approx.e_r));
        err_r2.push_back(std::fabs(second_moment(cm, mu, nu) - approx.e_r2));
    }
    for (std::size_t i = 1; i < err_r.size(); ++i) {
        const double shrink = 1e-2;  // eps ratio between consecutive points
        if (!(err_r[i] <= 2.0 * shrink * err_r[i - 1]) ||
            !(err_r2[i] <= 2.0 * shrink * err_r2[i - 1])) {
            detail = "errors do not shrink linearly with eps";
            return false;
        }
    }
    std::ostringstream oss;
    oss << "E[R] err " << err_r[0] << " -> " << err_r[2] << " as eps 1e-2 -> 1e-6";
    detail = oss.str();
    return true;
}

// --- criterion 6: randomized property suite -------------------------------

DistributionSpec random_law(RandomState& rng) {
    switch (rng.next_u64() % 6) {
        case 0: return Exponential(0.5 + 2.0 * rng.uniform());
        case 1: {
            const double lo = rng.uniform();
            return Uniform(lo, lo + 0.5 + rng.uniform());
        }
        case 2: return Gamma(1.0 + 3.0 * rng.uniform(), 0.4 + rng.uniform());
        case 3: return Weibull(0.8 + 2.0 * rng.uniform(), 0.5 + rng.uniform());
        case 4: return LogNormal(-0.5 + rng.uniform(), 0.3 + 0.7 * rng.uniform());
        default: return Deterministic(0.3 + rng.uniform());
    }
}

DistributionSpec scale_law(const DistributionSpec& dist, double s) {
    return std::visit(
        [s](const auto& law) -> DistributionSpec {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Exponential>) return Exponential(law.rate / s);
            else if constexpr (std::is_same_v<T, Uniform>) return Uniform(s * law.lo, s * law.hi);
            else if constexpr (std::is_same_v<T, Gamma>) return Gamma(law.shape, s * law.scale);
            else if constexpr (std::is_same_v<T, Weibull>) return Weibull(law.shape, s * law.scale);
            else if constexpr (std::is_same_v<T, LogNormal>)
                return LogNormal(law.log_mean + std::log(s), law.log_sd);
            else return Deterministic(s * law.value);
        },
        dist.law());
}

bool moments_match(const std::optional<double>& lhs, const std::optional<double>& rhs,
                   double scale, double tol) {
    if (lhs.has_value() != rhs.has_value()) return false;
    if (!lhs) return true;
    return std::fabs(*lhs - *rhs / scale) <= tol * std::max(1.0, std::fabs(*lhs));
}

bool criterion_property_suite(std::string& detail) {
    RandomState rng(987654321);
    int quadrature_pairs = 0, closed_pairs = 0;
    for (int round = 0; round < 200; ++round) {
        DistributionSpec uptime = random_law(rng);
        DistributionSpec proc = random_law(rng);
        if (uptime.family() == Family::Deterministic &&
            proc.family() == Family::Deterministic &&
            std::get<Deterministic>(uptime.law()).value ==
                std::get<Deterministic>(proc.law()).value) {
            proc = Exponential(1.0);
        }
        const DistributionSpec downtime = random_law(rng);

        const auto cm = conditional_stats(uptime, proc);
        if (!(cm.q >= 0.0 && cm.q <= 1.0)) {
            detail = "q outside [0,1]";
            return false;
        }
        if (cm.a && cm.c && !(*cm.c >= (*cm.a) * (*cm.a) * (1.0 - 1e-9))) {
            detail = "c < a^2";
            return false;
        }
        if (cm.b && cm.d && !(*cm.d >= (*cm.b) * (*cm.b) * (1.0 - 1e-9))) {
            detail = "d < b^2";
            return false;
        }

        if (cm.one_minus_q > 0.0) {
            const double mu = raw_moment(downtime, 1);
            const double nu = raw_moment(downtime, 2);
            if (!(completion_variance(cm, mu, nu) >= 0.0)) {
                detail = "negative variance";
                return false;
            }
        }

        // scaling covariance: (U, p) -> (sU, sp)
        const double s = 0.5 + 4.0 * rng.uniform();
        const auto scaled = conditional_stats(scale_law(uptime, s), scale_law(proc, s));
        const double tol =
            1e-9 + 10.0 * (cm.est_abs_error + scaled.est_abs_error / std::min(1.0, s * s));
        if (std::fabs(scaled.q - cm.q) > tol) {
            detail = "q changed under scaling";
            return false;
        }
        if (!moments_match(cm.a, scaled.a, s, tol) || !moments_match(cm.b, scaled.b, s, tol) ||
            !moments_match(cm.c, scaled.c, s * s, tol) ||
            !moments_match(cm.d, scaled.d, s * s, tol)) {
            detail = "conditional moments do not scale (s=" + std::to_string(s) + ")";
            return false;
        }

        // closed form vs forced quadrature wherever a closed form exists
        if (cm.method == MomentMethod::ClosedForm) {
            ++closed_pairs;
            const auto generic = conditional_stats_generic(uptime, proc);
            const bool well_conditioned = std::min(cm.q, cm.one_minus_q) >= 1e-3;
            const double rel = well_conditioned ? 1e-8 : 1e-6;
            auto agree = [&](std::optional<double> x, std::optional<double> y) {
                if (x.has_value() != y.has_value()) return false;
                if (!x) return true;
                return std::fabs(*x - *y) <= rel * std::max(well_conditioned ? *x : 1.0, 1e-30);
            };
            if (std::fabs(cm.q - generic.q) > rel * std::max(cm.q, 1e-30) &&
                std::fabs(cm.q - generic.q) > 1e-10) {
                detail = "closed vs quadrature q mismatch";
                return false;
            }
            if (!agree(cm.a, generic.a) || !agree(cm.b, generic.b) || !agree(cm.c, generic.c) ||
                !agree(cm.d, generic.d)) {
                detail = "closed vs quadrature conditional moment mismatch";
                return false;
            }
        } else {
            ++quadrature_pairs;
        }
    }
    std::ostringstream oss;
    oss << "200 scenarios (" << closed_pairs << " closed-form pairs, " << quadrature_pairs
        << " quadrature pairs)";
    detail = oss.str();
    return true;
}

// --- criterion 7: byte-identical outputs ----------------------------------

bool criterion_determinism(std::string& detail) {
    const std::string simulate_args =
        "simulate " + scenario_path("exp_exp_exp_down.json") + " --json --n 200000 --seed 9";
    const auto s1 = run_cli(simulate_args);
    const auto s2 = run_cli(simulate_args);
    if (s1.exit_code != 0 || s1.output != s2.output) {
        detail = "simulate output differs between runs";
        return false;
    }
    const auto w1 = run_cli(simulate_args, "BREAKTIME_WORKERS=1");
    const auto w4 = run_cli(simulate_args, "BREAKTIME_WORKERS=4");
    const auto w8 = run_cli(simulate_args, "BREAKTIME_WORKERS=8");
    if (w1.output != w4.output || w1.output != w8.output || w1.output != s1.output) {
        detail = "simulate output depends on the worker count";
        return false;
    }
    const std::string validate_args = "validate " + scenario_path("exp_det_det_down.json");
    const auto v1 = run_cli(validate_args, "BREAKTIME_WORKERS=1");
    const auto v2 = run_cli(validate_args, "BREAKTIME_WORKERS=8");
    if (v1.exit_code != 0 || v1.output != v2.output) {
        detail = "validate output differs";
        return false;
    }
    detail = "simulate/validate byte-identical across reruns and 1/4/8 workers";
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* title;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {"exponential-uptime closed form reproduced by the generic path",
         criterion_closed_form_grid},
        {"analytic moments vs Monte Carlo on six golden scenarios", criterion_golden_validation},
        {"attempt counts follow the geometric law", criterion_attempt_law},
        {"q=0 and q=1 degeneracies", criterion_degeneracies},
        {"instantaneous-breakdown limit", criterion_instantaneous_limit},
        {"randomized conditional-moment property suite", criterion_property_suite},
        {"deterministic outputs across runs and worker counts", criterion_determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failed;
        std::printf("[%s] criterion %zu: %s%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].title, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }
    if (failed > 0) {
        std::printf("%d criterion(s) failed\n", failed);
    } else {
        std::printf("all %zu criteria passed\n", criteria.size());
    }
    return failed;
}
