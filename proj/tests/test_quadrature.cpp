#include <cmath>

#include <doctest.h>

#include "breaktime/errors.hpp"
#include "breaktime/quadrature.hpp"

using namespace breaktime;

TEST_CASE("polynomials and smooth integrands") {
    auto cube = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(cube.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    auto sine = integrate([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846,
                          1e-12);
    CHECK(sine.value == doctest::Approx(2.0).epsilon(1e-13));

    auto decay = integrate([](double x) { return std::exp(-x); }, 0.0, 50.0, 1e-12);
    CHECK(decay.value == doctest::Approx(1.0 - std::exp(-50.0)).epsilon(1e-13));
}

TEST_CASE("error estimate is truthful") {
    auto bump = integrate([](double x) { return std::exp(-x * x * 50.0); }, 0.0, 20.0, 1e-11);
    const double exact = 0.5 * std::sqrt(3.14159265358979323846 / 50.0);  // erf(...) ~ 1 here
    CHECK(std::fabs(bump.value - exact) <= bump.est_abs_error + 1e-13);
    CHECK(bump.est_abs_error <= 1e-11);
}

TEST_CASE("kinks handled via breakpoints and adaptivity") {
    auto f = [](double x) { return std::fabs(x - 1.0 / 3.0); };
    const double exact = (1.0 / 9.0 + 4.0 / 9.0) / 2.0;
    auto with_bp = integrate(f, 0.0, 1.0, 1e-12, {1.0 / 3.0});
    CHECK(with_bp.value == doctest::Approx(exact).epsilon(1e-13));
    auto without_bp = integrate(f, 0.0, 1.0, 1e-12);
    CHECK(without_bp.value == doctest::Approx(exact).epsilon(1e-11));
}

TEST_CASE("integrable endpoint singularity") {
    auto spike = integrate([](double x) { return 0.5 / std::sqrt(x); }, 0.0, 1.0, 1e-10);
    CHECK(spike.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("empty interval and input validation") {
    auto nothing = integrate([](double x) { return x; }, 2.0, 2.0, 1e-10);
    CHECK(nothing.value == 0.0);
    CHECK(nothing.est_abs_error == 0.0);
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 3.0, 2.0, 1e-10), InvalidParameter);
}

TEST_CASE("failure when the budget cannot reach tolerance") {
    CHECK_THROWS_AS(
        integrate([](double x) { return std::sin(1.0 / (x + 1e-6)); }, 0.0, 1.0, 1e-14, {}, 4),
        QuadratureFailure);
}
