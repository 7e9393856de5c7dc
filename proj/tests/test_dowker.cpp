#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include <dowkerlab/dowker.hpp>

using namespace dowkerlab;

namespace {

BipartiteGraph graph_from_docs(std::uint32_t n_p,
                               std::vector<std::vector<std::uint32_t>> docs) {
    BipartiteGraph g;
    g.n_p = n_p;
    g.n_p_prime = static_cast<std::uint32_t>(docs.size());
    for (auto& d : docs) std::sort(d.begin(), d.end());
    g.witnesses = std::move(docs);
    return g;
}

// Independent witness counting: intersect adjacency lists one by one.
std::uint32_t count_witnesses_reference(const BipartiteGraph& g, const Simplex& s,
                                        std::uint32_t cap) {
    std::uint32_t n = 0;
    for (const auto& nbrs : g.witnesses) {
        if (nbrs.size() > cap) continue;
        std::size_t hits = 0;
        for (std::uint32_t v : s)
            hits += std::count(nbrs.begin(), nbrs.end(), v);
        if (hits == s.size()) ++n;
    }
    return n;
}

BipartiteGraph random_graph(std::uint32_t n_p, std::uint32_t n_pp, double density,
                            std::uint64_t seed) {
    RngStream rng(seed, 0);
    std::vector<std::vector<std::uint32_t>> docs(n_pp);
    for (std::uint32_t j = 0; j < n_pp; ++j)
        for (std::uint32_t i = 0; i < n_p; ++i)
            if (rng.uniform01() < density) docs[j].push_back(i);
    return graph_from_docs(n_p, docs);
}

}  // namespace

TEST_CASE("single witness emits the full power set") {
    BipartiteGraph g = graph_from_docs(3, {{0, 1, 2}});
    DowkerComplex cx = enumerate_simplices(g, 2);
    CHECK(cx.simplex_count(0) == 3);
    CHECK(cx.simplex_count(1) == 3);
    CHECK(cx.simplex_count(2) == 1);
    for (int m = 0; m <= 2; ++m)
        for (const auto& [s, w] : cx.simplices[m]) CHECK(w == 1);
}

TEST_CASE("witness counts accumulate") {
    BipartiteGraph g = graph_from_docs(2, {{0, 1}, {0, 1}});
    DowkerComplex cx = enumerate_simplices(g, 1);
    CHECK(cx.witness_count({0, 1}) == 2);
    CHECK(cx.witness_count({0}) == 2);
}

TEST_CASE("over-large witnesses are dropped entirely") {
    std::vector<std::uint32_t> big(25);
    std::iota(big.begin(), big.end(), 0);
    BipartiteGraph g = graph_from_docs(25, {big});
    DowkerComplex cx = enumerate_simplices(g, 2, 20);
    CHECK(cx.simplex_count(0) == 0);
    CHECK(cx.documents_dropped == 1);
}

TEST_CASE("simplex degree equals reference intersection") {
    BipartiteGraph g = random_graph(10, 15, 0.3, 31);
    DowkerComplex cx = enumerate_simplices(g, 2);
    for (int m = 0; m <= 2; ++m)
        for (const auto& [s, w] : cx.simplices[m]) {
            CHECK(simplex_degree(g, s) == w);
            CHECK(count_witnesses_reference(g, s, kDefaultWitnessArityCap) == w);
        }
    CHECK(simplex_degree(g, {0}) == count_witnesses_reference(g, {0}, 20));
    // A tuple with no common witness.
    BipartiteGraph h = graph_from_docs(3, {{0}, {1}});
    CHECK(simplex_degree(h, {0, 1}) == 0);
}

TEST_CASE("enumeration equals brute-force subset search") {
    BipartiteGraph g = random_graph(8, 10, 0.35, 32);
    DowkerComplex cx = enumerate_simplices(g, 2);
    for (int m = 0; m <= 2; ++m) {
        std::size_t expected = 0;
        std::vector<std::uint32_t> tuple(m + 1);
        // iterate all (m+1)-subsets of vertices
        std::vector<std::uint32_t> pick(m + 1);
        std::iota(pick.begin(), pick.end(), 0);
        if (g.n_p >= static_cast<std::uint32_t>(m + 1)) {
            while (true) {
                Simplex s(pick.begin(), pick.end());
                if (count_witnesses_reference(g, s, 20) > 0) ++expected;
                int i = m;
                while (i >= 0 && pick[i] == g.n_p - (m + 1) + i) --i;
                if (i < 0) break;
                ++pick[i];
                for (int t = i + 1; t <= m; ++t) pick[t] = pick[t - 1] + 1;
            }
        }
        CHECK(cx.simplex_count(m) == expected);
    }
}

TEST_CASE("downward closure with monotone witness counts") {
    BipartiteGraph g = random_graph(12, 20, 0.25, 33);
    DowkerComplex cx = enumerate_simplices(g, 3);
    for (int m = 1; m <= 3; ++m) {
        for (const auto& [s, w] : cx.simplices[m]) {
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex face;
                for (std::size_t t = 0; t < s.size(); ++t)
                    if (t != drop) face.push_back(s[t]);
                std::uint32_t wf = cx.witness_count(face);
                CHECK(wf >= w);
                CHECK(wf >= 1);
            }
        }
    }
}

TEST_CASE("center picks the minimal mark, ties to the left") {
    NetworkInstance inst;
    inst.p_vertices = {MarkedPoint(0.4, 0.5), MarkedPoint(0.1, 0.2), MarkedPoint(0.7, 0.9)};
    inst.p_prime_vertices = {};
    BipartiteGraph g = graph_from_docs(3, {{0, 1, 2}});
    DowkerComplex cx = enumerate_simplices(inst, g, 2);
    CHECK(center(cx, {0, 1, 2}) == 0.1);
    CHECK(center(cx, {2}) == 0.7);
    // tied minimal marks
    inst.p_vertices = {MarkedPoint(0.6, 0.2), MarkedPoint(0.3, 0.2)};
    BipartiteGraph h = graph_from_docs(2, {{0, 1}});
    DowkerComplex cx2 = enumerate_simplices(inst, h, 1);
    CHECK(center(cx2, {0, 1}) == 0.3);
}

TEST_CASE("degree histograms") {
    // every author on exactly one single-author document
    BipartiteGraph solo = graph_from_docs(3, {{0}, {1}, {2}});
    DegreeHistogram d0 = degree_histogram(solo, DegreeKind::Delta0);
    CHECK(d0.counts.size() == 1);
    CHECK(d0.counts.at(1) == 3);

    BipartiteGraph g = random_graph(10, 30, 0.4, 34);
    DegreeHistogram d0p = degree_histogram(g, DegreeKind::Delta0Prime, 5);
    for (const auto& [v, c] : d0p.counts) CHECK(v <= 5);

    // one triangle: each edge has exactly one 2-coface
    BipartiteGraph tri = graph_from_docs(3, {{0, 1, 2}});
    DowkerComplex cx = enumerate_simplices(tri, 2);
    DegreeHistogram c1 = degree_histogram(cx, DegreeKind::Coface1);
    CHECK(c1.counts.at(1) == 3);
    DegreeHistogram d1 = degree_histogram(cx, DegreeKind::Delta1);
    CHECK(d1.counts.at(1) == 3);
}

TEST_CASE("histogram expand and serialization") {
    DegreeHistogram h{DegreeKind::Delta0, {{1, 2}, {3, 1}}};
    auto vals = h.expand();
    CHECK(vals == std::vector<std::uint32_t>({1, 1, 3}));
    std::ostringstream os;
    write_histogram(h, os);
    CHECK(os.str() == "value,count\n1,2\n3,1\n");
}

TEST_CASE("connected components of the 1-skeleton") {
    BipartiteGraph two = graph_from_docs(6, {{0, 1, 2}, {3, 4, 5}});
    auto c2 = connected_components(enumerate_simplices(two, 1));
    CHECK(c2.component_count == 2);
    CHECK(c2.largest_size == 3);

    BipartiteGraph chain = graph_from_docs(4, {{0, 1}, {1, 2}, {2, 3}});
    auto c1 = connected_components(enumerate_simplices(chain, 1));
    CHECK(c1.component_count == 1);
    CHECK(c1.largest_size == 4);
}

TEST_CASE("complex serialization is sorted and stable") {
    BipartiteGraph g = graph_from_docs(3, {{0, 1}, {1, 2}});
    DowkerComplex cx = enumerate_simplices(g, 1);
    std::ostringstream os;
    write_complex(cx, os);
    CHECK(os.str() == "0,0,1\n0,1,2\n0,2,1\n1,0,1,1\n1,1,2,1\n");
}
