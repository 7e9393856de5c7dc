#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <dowkerlab/palm.hpp>
#include <dowkerlab/special.hpp>

using namespace dowkerlab;

namespace {

ModelParams line_params(double g, double gp, double beta, double lam, double lamp) {
    ModelParams p;
    p.gamma = g;
    p.gamma_prime = gp;
    p.beta = beta;
    p.lambda = lam;
    p.lambda_prime = lamp;
    p.torus_length = std::numeric_limits<double>::infinity();
    return p;
}

}  // namespace

TEST_CASE("witness samples stay inside the root neighborhood") {
    ModelParams p = line_params(0.6, 0.3, 0.5, 1.0, 1.0);
    RngStream rng(41, 0);
    double u = 0.37;
    MarkedPoint root(0.0, u);
    for (int i = 0; i < 2000; ++i) {
        MarkedPoint w = sample_witness_in_root_neighborhood(u, p, rng);
        CHECK(connects(root, w, p));
    }
}

TEST_CASE("witness mark law matches the analytic CDF") {
    // mark density proportional to v^{-gamma'}, CDF v^{1-gamma'}
    ModelParams p = line_params(0.5, 0.4, 1.0, 1.0, 1.0);
    RngStream rng(42, 0);
    std::vector<double> marks;
    for (int i = 0; i < 100000; ++i)
        marks.push_back(sample_witness_in_root_neighborhood(1.0, p, rng).mark);
    std::sort(marks.begin(), marks.end());
    double d = 0.0;
    double n = static_cast<double>(marks.size());
    for (std::size_t i = 0; i < marks.size(); ++i) {
        double F = std::pow(marks[i], 1.0 - p.gamma_prime);
        d = std::max(d, std::fabs(F - (i + 1) / n));
        d = std::max(d, std::fabs(F - i / n));
    }
    CHECK(kolmogorov_sf(d * std::sqrt(n)) > 1e-3);
}

TEST_CASE("witness count is Poisson at fixed root mark") {
    ModelParams p = line_params(0.4, 0.2, 0.05, 1.0, 10.0);
    double u = 0.6;
    double mean = p.lambda_prime * singleton_neighborhood_measure(u, p);
    RngStream rng(43, 0);
    double sum = 0.0, sum2 = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        double k = static_cast<double>(rng.poisson(mean));
        sum += k;
        sum2 += k * k;
    }
    double m = sum / n;
    double var = (sum2 - n * m * m) / (n - 1.0);
    CHECK(var / m > 0.9);
    CHECK(var / m < 1.1);
    CHECK(std::fabs(m - mean) < 3.0 * std::sqrt(mean / n));
}

TEST_CASE("union sampling has intensity lambda without double counting") {
    ModelParams p = line_params(0.5, 0.3, 0.1, 8.0, 1.0);
    // disjoint neighborhoods: centers far apart
    std::vector<MarkedPoint> far = {MarkedPoint(0.0, 0.9), MarkedPoint(100.0, 0.8)};
    double area_far = 2.0 * p.beta / (1.0 - p.gamma) *
                      (std::pow(0.9, -p.gamma_prime) + std::pow(0.8, -p.gamma_prime));
    // nested neighborhoods: same center, one mark dominated by the other
    std::vector<MarkedPoint> nested = {MarkedPoint(0.0, 0.2), MarkedPoint(0.0, 0.9)};
    double area_nested = 2.0 * p.beta / (1.0 - p.gamma) * std::pow(0.2, -p.gamma_prime);

    RngStream rng(44, 0);
    const int n = 20000;
    double sum_far = 0.0, sum_nested = 0.0;
    for (int i = 0; i < n; ++i) {
        sum_far += static_cast<double>(sample_coauthors_on_union(far, p, rng).size());
        sum_nested += static_cast<double>(sample_coauthors_on_union(nested, p, rng).size());
    }
    double mean_far = p.lambda * area_far;
    double mean_nested = p.lambda * area_nested;
    CHECK(std::fabs(sum_far / n - mean_far) < 3.0 * std::sqrt(mean_far / n));
    CHECK(std::fabs(sum_nested / n - mean_nested) < 3.0 * std::sqrt(mean_nested / n));
}

TEST_CASE("environment invariants") {
    ModelParams p = line_params(0.4, 0.2, 0.1, 2.0, 2.0);
    RngStream rng(45, 0);
    int with_witnesses = 0;
    for (int i = 0; i < 300; ++i) {
        PalmSample s = sample_palm_environment(1, p, rng);
        CHECK(s.root.position == 0.0);
        for (const auto& w : s.witnesses) CHECK(connects(s.root, w, p));
        for (const auto& c : s.coauthors) {
            bool covered = false;
            for (const auto& w : s.witnesses)
                if (connects(c, w, p)) covered = true;
            CHECK(covered);
        }
        if (s.witnesses.empty()) {
            CHECK(s.coauthors.empty());
            CHECK(s.simplices_at_root.empty());
        } else {
            ++with_witnesses;
        }
        CHECK(s.simplices_at_root.size() == s.simplex_witness_counts.size());
    }
    CHECK(with_witnesses > 0);
}

TEST_CASE("typical degree mean matches the closed form") {
    ModelParams p = line_params(0.4, 0.2, 0.15, 1.0, 4.0);
    RngStream rng(46, 0);
    auto samples = typical_degree_samples(0, 10000, p, rng);
    double mean = 0.0;
    for (auto v : samples) mean += v;
    mean /= static_cast<double>(samples.size());
    CHECK(std::fabs(mean / expected_typical_degree(p) - 1.0) < 0.05);
}

TEST_CASE("degree sampling is deterministic and validates inputs") {
    ModelParams p = line_params(0.4, 0.2, 0.1, 2.0, 3.0);
    RngStream a(47, 0), b(47, 0);
    auto sa = typical_degree_samples(1, 50, p, a);
    auto sb = typical_degree_samples(1, 50, p, b);
    CHECK(sa == sb);
    for (auto v : sa) CHECK(v >= 1);
    RngStream c(47, 1);
    CHECK_THROWS_AS(typical_degree_samples(2, 5, p, c), std::invalid_argument);
    ModelParams bad = line_params(0.4, 0.6, 0.1, 1.0, 1.0);
    RngStream d(47, 2);
    CHECK_THROWS_AS(sample_palm_environment(1, bad, d), std::invalid_argument);
}
