#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "plsec/quadrature.hpp"

using namespace plsec;
using Catch::Approx;

TEST_CASE("integrate elementary oracles") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 50.0) ==
          Approx(1.0).epsilon(1e-10));
}

TEST_CASE("integrate handles sharp local features") {
    // narrow Gaussian bump inside a wide interval
    const double v = integrate(
        [](double x) { return std::exp(-1e4 * (x - 0.3) * (x - 0.3)); }, 0.0, 10.0);
    CHECK(v == Approx(std::sqrt(M_PI / 1e4)).epsilon(1e-8));
}

TEST_CASE("integrate_to_infinity oracles") {
    CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0) ==
          Approx(1.0).epsilon(1e-10));
    CHECK(integrate_to_infinity([](double x) { return x * std::exp(-x); }, 0.0) ==
          Approx(1.0).epsilon(1e-10));
    // int_1^inf dx/x^2 = 1
    CHECK(integrate_to_infinity([](double x) { return 1.0 / (x * x); }, 1.0) ==
          Approx(1.0).epsilon(1e-9));
    // shifted lower limit: int_2^inf e^-x = e^-2
    CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 2.0) ==
          Approx(std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("settings validation") {
    QuadratureSettings bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.max_subdivisions = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("quadrature failure carries best estimate") {
    QuadratureSettings tight;
    tight.rel_tol = 1e-15;
    tight.abs_tol = 1e-300;
    tight.max_subdivisions = 2;
    bool threw = false;
    try {
        // oscillatory integrand that cannot converge in two splits
        integrate([](double x) { return std::sin(50.0 * x * x); }, 0.0, 10.0, tight);
    } catch (const QuadratureFailure& e) {
        threw = true;
        CHECK(std::isfinite(e.best_estimate));
        CHECK(e.error_bound > 0.0);
    }
    CHECK(threw);
}
