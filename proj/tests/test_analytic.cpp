#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "smddc/analytic.hpp"

using namespace smddc;

namespace {

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

PacketCountDistribution dist2(double a0, double a1, double a2) { return PacketCountDistribution({a0, a1, a2}); }

}  // namespace

TEST_CASE("distribution and session validation") {
    CHECK_THROWS_AS(PacketCountDistribution({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(PacketCountDistribution({-0.1, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(PacketCountDistribution({}), std::invalid_argument);
    const PacketCountDistribution d({0.2, 0.3, 0.5});
    CHECK(d.max_packets() == 2);
    CHECK(d[1] == 0.3);
    CHECK(d[5] == 0.0);
    CHECK(d[-1] == 0.0);
    CHECK_THROWS_AS(SessionSpec(50, 49), std::invalid_argument);
    CHECK_THROWS_AS(SessionSpec(0, 10), std::invalid_argument);
    const SessionSpec s(50, 55);
    CHECK(s.kappa() == doctest::Approx(50.0 / 55.0));
    CHECK(s.tau() == doctest::Approx(1.1));
}

TEST_CASE("beta1") {
    CHECK(beta1(4.0, 20.0) == doctest::Approx(std::exp(-0.2)).epsilon(1e-15));
    CHECK(beta1(7.0, 7.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(beta1(4.0, 0.0), std::invalid_argument);
}

TEST_CASE("beta2 symmetric") {
    CHECK(beta2_symmetric(4.0, 20.0, 1e12) == doctest::Approx(1.0).epsilon(1e-9));
    for (auto [r1, r2, om] : {std::tuple{4.0, 20.0, 20.0}, {1.0, 2.0, 5.0}, {2.0, 6.0, 50.0}, {4.0, 20.0, 200.0}}) {
        CAPTURE(om);
        CHECK(rel_close(beta2_symmetric(r1, r2, om), oracle::beta2_quadrature(r1, r2, om), 1e-9));
        CHECK(beta2_symmetric(r1, r2, om) <= beta1(r1, om));
    }
}

TEST_CASE("beta2 sdo") {
    for (double om : {5.0, 15.0, 20.0, 80.0}) {
        CHECK(std::abs(beta2_sdo(4.0, 20.0, om, 2) - beta2_symmetric(4.0, 20.0, om)) <= 1e-12);
        double prev = 0.0;
        for (int k = 2; k <= 10; ++k) {
            const double b = beta2_sdo(4.0, 20.0, om, k);
            CAPTURE(k);
            CHECK(rel_close(b, oracle::beta2_sdo_quadrature(4.0, 20.0, om, k), 1e-8));
            CHECK(b >= prev);
            CHECK(b <= beta1(4.0, om));
            prev = b;
        }
    }
    CHECK_THROWS_AS(beta2_sdo(4.0, 20.0, 20.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(beta2_sdo(4.0, 20.0, 20.0, 65), std::invalid_argument);
    const double b64 = beta2_sdo(4.0, 20.0, 20.0, 64);
    CHECK(b64 >= 0.0);
    CHECK(b64 <= beta1(4.0, 20.0));
}

TEST_CASE("beta1 far") {
    CHECK(beta1_far(4.0, 1.0, 20.0) == doctest::Approx(beta1(4.0, 20.0)).epsilon(1e-15));
    CHECK(beta1_far(4.0, 1e15, 20.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(beta1_far(4.0, 0.1, 100.0) == doctest::Approx(std::exp(-0.4)).epsilon(1e-15));
}

TEST_CASE("alphas and mean") {
    const std::vector<double> b1{0.8};
    auto d = alphas_from_betas(b1);
    CHECK(d.probs().size() == 2);
    CHECK(d[0] == doctest::Approx(0.2));
    CHECK(d[1] == doctest::Approx(0.8));
    CHECK(mean_packets(d) == doctest::Approx(0.8));

    const std::vector<double> b2{0.8, 0.5};
    d = alphas_from_betas(b2);
    CHECK(d[0] == doctest::Approx(0.2));
    CHECK(d[1] == doctest::Approx(0.3));
    CHECK(d[2] == doctest::Approx(0.5));
    CHECK(mean_packets(d) == doctest::Approx(1.3));
    CHECK(mean_packets(d) == doctest::Approx(0.8 + 0.5));

    const std::vector<double> bad{0.5, 0.8};
    CHECK_THROWS_AS(alphas_from_betas(bad), std::invalid_argument);
}

TEST_CASE("oma chernoff") {
    const SessionSpec s(50, 60);
    auto c = chernoff_oma(1.0, s);
    CHECK(c.bound == 0.0);
    CHECK(c.feasible);
    c = chernoff_oma(50.0 / 60.0, s);
    CHECK(c.bound == 1.0);
    CHECK_FALSE(c.feasible);
    c = chernoff_oma(0.9, s);
    CHECK(c.feasible);
    CHECK(std::abs(c.lambda_star - oracle::lambda_numeric({0.1, 0.9}, 50, 60)) <= 1e-6);
    CHECK(c.bound == doctest::Approx(chernoff_at(PacketCountDistribution({0.1, 0.9}), s, c.lambda_star)).epsilon(1e-12));
}

TEST_CASE("depth-2 chernoff") {
    const SessionSpec s(50, 55);
    const auto oma = chernoff_oma(0.9, s);
    const auto near = chernoff_noma2(dist2(0.1, 0.9 - 1e-9, 1e-9), s);
    CHECK(rel_close(near.lambda_star, oma.lambda_star, 1e-4));
    CHECK(rel_close(near.bound, oma.bound, 1e-4));

    const auto d = dist2(0.1, 0.5, 0.4);
    const auto c = chernoff_noma2(d, s);
    CHECK(c.feasible);
    CHECK(std::abs(c.lambda_star - oracle::lambda_numeric({0.1, 0.5, 0.4}, 50, 55)) <= 1e-6);
    CHECK(rel_close(c.bound, chernoff_generic(d, s).bound, 1e-8));

    CHECK(chernoff_noma2(dist2(0.0, 0.5, 0.5), s).bound == 0.0);
    CHECK_FALSE(chernoff_noma2(dist2(0.5, 0.4, 0.1), s).feasible);
    CHECK_THROWS_AS(chernoff_noma2(PacketCountDistribution({0.1, 0.9}), s), std::invalid_argument);
}

TEST_CASE("generic chernoff") {
    const SessionSpec s(50, 60);
    const auto oma = chernoff_oma(0.9, s);
    const auto g = chernoff_generic(PacketCountDistribution({0.1, 0.9}), s);
    CHECK(rel_close(g.bound, oma.bound, 1e-8));
    // Mean exactly at kappa: the bound collapses to 1.
    const auto edge = chernoff_generic(PacketCountDistribution({1.0 / 6.0, 5.0 / 6.0}), s);
    CHECK_FALSE(edge.feasible);
    CHECK(edge.bound == 1.0);
    // Deeper distribution against a direct minimization.
    const std::vector<double> a{0.05, 0.3, 0.35, 0.3};
    const auto d = chernoff_generic(PacketCountDistribution(a), SessionSpec(50, 52));
    CHECK(std::abs(d.lambda_star - oracle::lambda_numeric(a, 50, 52)) <= 1e-6);
}

TEST_CASE("noma factor") {
    CHECK(noma_factor(0.3, 0.0).eta == 1.0);
    CHECK(noma_factor(0.0, 1.0).eta == 0.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        double a = u(rng), b = u(rng), c = u(rng);
        const double sum = a + b + c;
        a /= sum, b /= sum, c /= sum;
        const auto nf = noma_factor(a, c);
        CHECK(std::abs(nf.eta - oracle::eta_numeric(a, b, c)) <= 1e-9);
        if (c > 0) CHECK(nf.eta < 1.0);

        // At lambda = -ln z*, the per-slot ratio of the depth-2 and OMA bounds is eta.
        const SessionSpec s(50, 55);
        const double lam = -std::log(nf.z_star);
        const double r = chernoff_at(dist2(a, b, c), s, lam) / chernoff_at(PacketCountDistribution({a, b + c}), s, lam);
        CHECK(std::abs(std::pow(r, 1.0 / s.w_s()) - nf.eta) <= 1e-12);
    }
    for (double a2 = 0.0; a2 < 0.5; a2 += 0.05) CHECK(noma_factor(0.2, a2 + 0.05).eta <= noma_factor(0.2, a2).eta);
    for (double a0 = 0.0; a0 < 0.5; a0 += 0.05) CHECK(noma_factor(a0 + 0.05, 0.3).eta >= noma_factor(a0, 0.3).eta);
}

TEST_CASE("exact session error") {
    for (double a : {0.3, 0.8, 0.9, 0.97}) {
        const PacketCountDistribution d({1 - a, a});
        CHECK(std::abs(exact_session_error(d, SessionSpec(50, 50)) - (1 - std::pow(a, 50))) <= 1e-12);
        for (int ws : {50, 55, 60, 70, 100}) {
            CAPTURE(ws);
            CHECK(std::abs(exact_session_error(d, SessionSpec(50, ws)) - oracle::binomial_tail(a, 50, ws)) <= 1e-12);
        }
    }
    const std::vector<double> a{0.1, 0.3, 0.4, 0.2};
    const PacketCountDistribution d(a);
    double prev = 1.0;
    for (int ws = 20; ws <= 60; ++ws) {
        const double p = exact_session_error(d, SessionSpec(20, ws));
        CHECK(std::abs(p - oracle::deficit_chain_error(a, 20, ws)) <= 1e-12);
        CHECK(p <= prev);
        prev = p;
    }
}

TEST_CASE("bounds dominate the exact value") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double a = 0.3 * u(rng), b = u(rng), c = u(rng);
        const double sum = a + b + c;
        const PacketCountDistribution d({a / sum, b / sum, c / sum});
        const SessionSpec s(50, 52 + i % 19);
        const double exact = exact_session_error(d, s);
        CHECK(chernoff_noma2(d, s).bound >= exact);
        CHECK(chernoff_generic(d, s).bound >= exact);
        const PacketCountDistribution o({a / sum, (b + c) / sum});
        CHECK(chernoff_oma(o[1], s).bound >= exact_session_error(o, s));
    }
}

TEST_CASE("golden section") {
    const double x = golden_section_minimize([](double t) { return (t - 0.3) * (t - 0.3); }, 0.0, 1.0);
    CHECK(std::abs(x - 0.3) <= 1e-9);
    CHECK(golden_section_minimize([](double t) { return t; }, 0.0, 1.0) == 0.0);
}
