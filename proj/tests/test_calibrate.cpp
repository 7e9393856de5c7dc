#include <doctest.h>

#include <cmath>

#include <dowkerlab/calibrate.hpp>
#include <dowkerlab/rng.hpp>

using namespace dowkerlab;

TEST_CASE("upper incomplete gamma closed forms") {
    for (double x : {0.2, 1.0, 3.5, 10.0})
        CHECK(upper_incomplete_gamma(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-12));
    CHECK(upper_incomplete_gamma(0.5, 1e-12) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-5));
    CHECK_THROWS_AS(upper_incomplete_gamma(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(upper_incomplete_gamma(0.5, -1.0), std::invalid_argument);
}

TEST_CASE("negative argument against the quadrature oracle") {
    // Gamma(-0.5, 1) by adaptive quadrature of the defining integral.
    auto integrand = [](double t) { return std::pow(t, -1.5) * std::exp(-t); };
    double oracle = dowkerlab::detail::adaptive_simpson(integrand, 1.0, 60.0, 1e-13);
    CHECK(std::fabs(upper_incomplete_gamma(-0.5, 1.0) - oracle) < 1e-9);
    CHECK(upper_incomplete_gamma(-0.5, 1.0) ==
          doctest::Approx(0.178147711781561).epsilon(1e-10));
}

TEST_CASE("nonpositive integer arguments") {
    // E1 values frozen from an arbitrary-precision evaluation.
    CHECK(upper_incomplete_gamma(0.0, 0.5) ==
          doctest::Approx(0.559773594776160).epsilon(1e-12));
    CHECK(upper_incomplete_gamma(0.0, 3.6) ==
          doctest::Approx(0.00616041433179731).epsilon(1e-12));
    CHECK(upper_incomplete_gamma(-5.0, 3.6) ==
          doctest::Approx(5.00777758813777e-06).epsilon(1e-11));
    CHECK(upper_incomplete_gamma(-2.0, 0.7) ==
          doctest::Approx(0.338900330940656).epsilon(1e-11));
}

TEST_CASE("incomplete gamma recurrence") {
    RngStream rng(61, 0);
    for (int i = 0; i < 200; ++i) {
        double a = rng.uniform(-3.0, 3.0);
        if (std::fabs(a - std::round(a)) < 0.05 && a <= 0.5) continue;  // poles of the recurrence
        double x = rng.uniform(0.05, 8.0);
        double lhs = upper_incomplete_gamma(a + 1.0, x);
        double rhs = a * upper_incomplete_gamma(a, x) + std::pow(x, a) * std::exp(-x);
        CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(lhs)));
    }
}

TEST_CASE("gamma from exponent") {
    auto g = gamma_from_exponent(2.37, 0);
    CHECK(g.in_range);
    CHECK(g.value == doctest::Approx(0.72993).epsilon(1e-4));
    auto gp = gamma_from_exponent(5.46, 0);
    CHECK(gp.in_range);
    CHECK(gp.value == doctest::Approx(0.22422).epsilon(1e-4));
    auto boundary = gamma_from_exponent(2.0, 0);
    CHECK(boundary.value == doctest::Approx(1.0));
    CHECK_FALSE(boundary.in_range);
    CHECK_THROWS_AS(gamma_from_exponent(0.9, 0), std::invalid_argument);
    // m = 1: gamma = 2 / (exponent)
    auto g1 = gamma_from_exponent(2.857142857, 1);
    CHECK(g1.value == doctest::Approx(0.7).epsilon(1e-6));
}

TEST_CASE("calibration round trip") {
    for (double g : {0.3, 0.6}) {
        for (double gp : {0.15, 0.25}) {
            ModelParams truth;
            truth.gamma = g;
            truth.gamma_prime = gp;
            truth.beta = 2e-4;
            truth.lambda = 5000.0;
            truth.lambda_prime = 3000.0;
            truth.torus_length = 1.0;
            auto [na, nd] = expected_nonisolated_counts(truth);
            DataSummary s{na, nd, expected_edge_count(truth), g, gp};
            ModelParams rec = calibrate(s);
            CHECK(std::fabs(rec.beta / truth.beta - 1.0) < 1e-6);
            CHECK(std::fabs(rec.lambda / truth.lambda - 1.0) < 1e-6);
            CHECK(std::fabs(rec.lambda_prime / truth.lambda_prime - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("solved beta increases with the incidence count") {
    DataSummary base{788, 971, 4587, 0.7, 0.2};
    double prev = 0.0;
    for (double edges : {4587.0, 5500.0, 7000.0}) {
        DataSummary s = base;
        s.n_incidences = edges;
        double beta = calibrate(s).beta;
        CHECK(beta > prev);
        prev = beta;
    }
}

TEST_CASE("summary validation") {
    CHECK_THROWS_AS(calibrate(DataSummary{0, 10, 10, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(calibrate(DataSummary{10, 10, 10, 1.2, 0.5}), std::invalid_argument);
    nlohmann::json j = DataSummary{100, 90, 300, 0.6, 0.3}.to_json();
    DataSummary s = DataSummary::from_json(j);
    CHECK(s.n_authors == 100);
    CHECK(s.gamma_prime == 0.3);
}
