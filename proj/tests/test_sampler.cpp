#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <dowkerlab/sampler.hpp>
#include <dowkerlab/special.hpp>

using namespace dowkerlab;

TEST_CASE("zero intensity gives empty process") {
    RngStream rng(1, 0);
    CHECK(sample_ppp(0.0, 1.0, rng).empty());
}

TEST_CASE("sampling is deterministic per stream") {
    RngStream a(77, 3), b(77, 3);
    auto pa = sample_ppp(200.0, 1.0, a);
    auto pb = sample_ppp(200.0, 1.0, b);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa[i].position == pb[i].position);
        CHECK(pa[i].mark == pb[i].mark);
    }
    RngStream c(77, 4);
    auto pc = sample_ppp(200.0, 1.0, c);
    CHECK((pc.size() != pa.size() || pc[0].position != pa[0].position));
}

TEST_CASE("point count concentrates around intensity") {
    int within = 0;
    const double intensity = 1e5;
    for (int r = 0; r < 100; ++r) {
        RngStream rng(5, r);
        double n = static_cast<double>(sample_ppp(intensity, 1.0, rng).size());
        if (std::fabs(n - intensity) <= 3.0 * std::sqrt(intensity)) ++within;
    }
    CHECK(within >= 97);
}

TEST_CASE("counts are Poisson (chi-square)") {
    // Bin counts at intensity 50 into ranges and compare against Poisson cell
    // probabilities with a chi-square statistic.
    const double mean = 50.0;
    const int reps = 1000;
    std::vector<int> edges = {40, 45, 48, 50, 52, 55, 60};  // bin boundaries
    std::vector<int> observed(edges.size() + 1, 0);
    for (int r = 0; r < reps; ++r) {
        RngStream rng(6, r);
        long long n = static_cast<long long>(sample_ppp(mean, 1.0, rng).size());
        std::size_t b = 0;
        while (b < edges.size() && n >= edges[b]) ++b;
        ++observed[b];
    }
    // Poisson cell probabilities by direct summation.
    std::vector<double> logp(200);
    double lp = -mean;
    std::vector<double> pmf(200);
    for (int k = 0; k < 200; ++k) {
        pmf[k] = std::exp(lp);
        lp += std::log(mean) - std::log(k + 1.0);
    }
    std::vector<double> expected(edges.size() + 1, 0.0);
    for (int k = 0; k < 200; ++k) {
        std::size_t b = 0;
        while (b < edges.size() && k >= edges[b]) ++b;
        expected[b] += pmf[k] * reps;
    }
    double chi2 = 0.0;
    for (std::size_t b = 0; b < observed.size(); ++b)
        chi2 += (observed[b] - expected[b]) * (observed[b] - expected[b]) / expected[b];
    double p = chi_square_sf(chi2, static_cast<double>(observed.size() - 1));
    CHECK(p > 1e-3);
}

TEST_CASE("marks are uniform (Kolmogorov-Smirnov)") {
    std::vector<double> marks;
    for (int r = 0; r < 20; ++r) {
        RngStream rng(7, r);
        for (const auto& pt : sample_ppp(500.0, 1.0, rng)) marks.push_back(pt.mark);
    }
    std::sort(marks.begin(), marks.end());
    double d = 0.0;
    const double n = static_cast<double>(marks.size());
    for (std::size_t i = 0; i < marks.size(); ++i) {
        d = std::max(d, std::fabs(marks[i] - (i + 1) / n));
        d = std::max(d, std::fabs(marks[i] - i / n));
    }
    CHECK(kolmogorov_sf(d * std::sqrt(n)) > 1e-3);
}

TEST_CASE("network sampling obeys parameters") {
    ModelParams p;
    p.lambda = 300.0;
    p.lambda_prime = 100.0;
    p.torus_length = 2.0;
    RngStream rng(8, 0);
    NetworkInstance inst = sample_network(p, rng);
    for (const auto& pt : inst.p_vertices) {
        CHECK(pt.position >= 0.0);
        CHECK(pt.position < 2.0);
        CHECK(pt.mark > 0.0);
        CHECK(pt.mark <= 1.0);
    }
    CHECK(inst.p_vertices.size() > 400);   // ~600 expected
    CHECK(inst.p_prime_vertices.size() > 100);  // ~200 expected

    ModelParams empty = p;
    empty.lambda_prime = 0.0;
    RngStream rng2(8, 1);
    CHECK(sample_network(empty, rng2).p_prime_vertices.empty());

    ModelParams inf_p = p;
    inf_p.torus_length = std::numeric_limits<double>::infinity();
    RngStream rng3(8, 2);
    CHECK_THROWS_AS(sample_network(inf_p, rng3), std::invalid_argument);
}
