#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "smddc/bessel.hpp"

using namespace smddc;

TEST_CASE("small-argument limit") {
    CHECK(x_k1(0.0) == 1.0);
    CHECK(x_k1(1e-12) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(x_k1(1e-6) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(x_k1(1e-3) < 1.0);
}

TEST_CASE("reference values") {
    CHECK(bessel_k1(1.0) == doctest::Approx(0.6019072301972346).epsilon(1e-14));
    CHECK(bessel_k1(2.0) == doctest::Approx(0.1398658818165224).epsilon(1e-14));
    CHECK(bessel_k1(1.0) == doctest::Approx(oracle::k1_quadrature(1.0)).epsilon(1e-12));
    CHECK(bessel_k1(2.0) == doctest::Approx(oracle::k1_quadrature(2.0)).epsilon(1e-12));
}

TEST_CASE("agrees with quadrature across the range") {
    for (double lx = -6.0; lx <= std::log10(50.0); lx += 0.05) {
        const double x = std::pow(10.0, lx);
        const double ref = oracle::k1_quadrature(x);
        CAPTURE(x);
        CHECK(std::abs(bessel_k1(x) - ref) <= 1e-10 * ref);
    }
}

TEST_CASE("continuity at the branch switch") {
    const double below = bessel_k1(std::nextafter(2.0, 0.0));
    const double above = bessel_k1(std::nextafter(2.0, 3.0));
    CHECK(std::abs(below - above) <= 1e-14 * above);
}

TEST_CASE("scaled and product forms are consistent") {
    for (double x : {1e-4, 0.3, 1.7, 2.0, 2.5, 10.0, 40.0}) {
        CAPTURE(x);
        CHECK(bessel_k1_scaled(x) == doctest::Approx(std::exp(x) * bessel_k1(x)).epsilon(1e-13));
        CHECK(x_k1(x) == doctest::Approx(x * bessel_k1(x)).epsilon(1e-13));
    }
    CHECK(std::isfinite(bessel_k1_scaled(1000.0)));
    CHECK(bessel_k1_scaled(1000.0) == doctest::Approx(std::sqrt(M_PI / 2000.0) * (1 + 3.0 / 8000.0)).epsilon(1e-6));
}

TEST_CASE("monotone decreasing") {
    double prev = bessel_k1(1e-3);
    for (double x = 2e-3; x < 30.0; x *= 1.1) {
        const double v = bessel_k1(x);
        REQUIRE(v < prev);
        prev = v;
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(bessel_k1(0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k1(-1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k1(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(x_k1(-1e-9), std::domain_error);
}
