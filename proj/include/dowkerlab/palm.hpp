#ifndef DOWKERLAB_PALM_HPP
#define DOWKERLAB_PALM_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "model.hpp"
#include "rng.hpp"

namespace dowkerlab {

/// The environment of a typical P-vertex rooted at the origin, simulated
/// directly on the line (no finite-window effects).
struct PalmSample {
    MarkedPoint root;                   // (0, u)
    std::vector<MarkedPoint> witnesses; // P'-points in B(root)
    std::vector<MarkedPoint> coauthors; // P-points in the union of witness neighborhoods
    std::vector<std::vector<std::size_t>> simplices_at_root;  // coauthor index tuples
                                                              // (root implicit member)
    std::vector<std::uint32_t> simplex_witness_counts;        // aligned with the above
};

/// Uniform sample w.r.t. Lebesgue measure on B((0, u)):
/// mark density proportional to v^{-gamma'}, position uniform in the slab.
inline MarkedPoint sample_witness_in_root_neighborhood(double u, const ModelParams& params,
                                                       RngStream& rng) {
    double v = std::pow(rng.uniform01(), 1.0 / (1.0 - params.gamma_prime));
    double r = params.beta * std::pow(u, -params.gamma) * std::pow(v, -params.gamma_prime);
    return MarkedPoint(rng.uniform(-r, r), v);
}

namespace detail {

// (x, w) lies in the neighborhood N(y, v) of a P'-point iff
// |x - y| <= beta w^{-gamma} v^{-gamma'}.
inline bool in_witness_neighborhood(double x, double w, double y, double v,
                                    const ModelParams& params) {
    return std::fabs(x - y) <=
           params.beta * std::pow(w, -params.gamma) * std::pow(v, -params.gamma_prime);
}

}  // namespace detail

/// Poisson process of intensity lambda on the union of the witness
/// neighborhoods N(y_i, v_i). Each neighborhood is sampled independently and a
/// point is kept with probability 1 / (number of neighborhoods covering it),
/// so overlaps are not double counted.
inline std::vector<MarkedPoint> sample_coauthors_on_union(
    const std::vector<MarkedPoint>& witnesses, const ModelParams& params, RngStream& rng) {
    std::vector<MarkedPoint> out;
    const double area_unit = 2.0 * params.beta / (1.0 - params.gamma);
    for (const auto& wit : witnesses) {
        double area_i = area_unit * std::pow(wit.mark, -params.gamma_prime);
        long long ni = rng.poisson(params.lambda * area_i);
        for (long long t = 0; t < ni; ++t) {
            double w = std::pow(rng.uniform01(), 1.0 / (1.0 - params.gamma));
            double r = params.beta * std::pow(w, -params.gamma) *
                       std::pow(wit.mark, -params.gamma_prime);
            double x = wit.position + rng.uniform(-r, r);
            int cover = 0;
            for (const auto& other : witnesses)
                if (detail::in_witness_neighborhood(x, w, other.position, other.mark, params))
                    ++cover;
            if (cover < 1) cover = 1;  // numeric guard; membership in wit holds by construction
            if (rng.uniform01() <= 1.0 / cover) out.emplace_back(x, w);
        }
    }
    return out;
}

/// Palm environment of a typical vertex: root mark uniform, witness count
/// Poisson(lambda' |B(root)|), coauthors a Poisson process of intensity lambda
/// on the union of witness neighborhoods (superposition thinned by the
/// covering multiplicity so that overlaps are not double counted), and the
/// Dowker simplices at the root restricted to tuples where the root carries
/// the minimal mark.
inline PalmSample sample_palm_environment(int max_dim, const ModelParams& params,
                                          RngStream& rng) {
    params.validate();
    if (!((max_dim + 1) * params.gamma_prime < 1.0))
        throw std::invalid_argument("sample_palm_environment: requires gamma' < 1/(m+1)");
    PalmSample s;
    double u = rng.uniform01();
    s.root = MarkedPoint(0.0, u);

    ModelParams line = params;
    line.torus_length = std::numeric_limits<double>::infinity();
    double area = singleton_neighborhood_measure(u, line);
    long long n = rng.poisson(params.lambda_prime * area);
    for (long long i = 0; i < n; ++i)
        s.witnesses.push_back(sample_witness_in_root_neighborhood(u, line, rng));

    s.coauthors = sample_coauthors_on_union(s.witnesses, line, rng);

    if (max_dim >= 1) {
        // Simplices at the root: subsets of coauthors sharing a witness with the
        // root, root strictly minimal in mark (ties by position).
        std::vector<std::size_t> eligible;
        for (std::size_t i = 0; i < s.coauthors.size(); ++i) {
            const auto& c = s.coauthors[i];
            if (c.mark < u || (c.mark == u && c.position < 0.0)) continue;
            eligible.push_back(i);
        }
        // witness sets restricted to eligible coauthors
        std::vector<std::vector<std::size_t>> adj(s.witnesses.size());
        for (std::size_t j = 0; j < s.witnesses.size(); ++j) {
            const auto& wj = s.witnesses[j];
            for (std::size_t i : eligible)
                if (detail::in_witness_neighborhood(s.coauthors[i].position,
                                                    s.coauthors[i].mark, wj.position,
                                                    wj.mark, line))
                    adj[j].push_back(i);
        }
        // enumerate subsets of each witness's eligible neighbors, sizes 1..max_dim
        std::vector<std::vector<std::size_t>> found;
        std::vector<std::uint32_t> counts;
        auto record = [&](const std::vector<std::size_t>& tuple) {
            for (std::size_t k = 0; k < found.size(); ++k)
                if (found[k] == tuple) { ++counts[k]; return; }
            found.push_back(tuple);
            counts.push_back(1);
        };
        std::vector<std::size_t> pick;
        for (const auto& nbrs : adj) {
            int nn = static_cast<int>(nbrs.size());
            for (int k = 1; k <= std::min(nn, max_dim); ++k) {
                pick.assign(k, 0);
                for (int t = 0; t < k; ++t) pick[t] = t;
                while (true) {
                    std::vector<std::size_t> tuple;
                    for (int t = 0; t < k; ++t) tuple.push_back(nbrs[pick[t]]);
                    record(tuple);
                    int i = k - 1;
                    while (i >= 0 && pick[i] == static_cast<std::size_t>(nn - k + i)) --i;
                    if (i < 0) break;
                    ++pick[i];
                    for (int t = i + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
                }
            }
        }
        s.simplices_at_root = std::move(found);
        s.simplex_witness_counts = std::move(counts);
    }
    return s;
}

/// i.i.d. samples of the typical m-simplex degree. m = 0 is the witness count
/// of the root; for m = 1 a root simplex of dimension 1 is chosen uniformly,
/// resampling environments until one exists.
inline std::vector<std::uint32_t> typical_degree_samples(int m, std::size_t n_samples,
                                                         const ModelParams& params,
                                                         RngStream& rng) {
    if (m != 0 && m != 1)
        throw std::invalid_argument("typical_degree_samples: m must be 0 or 1");
    std::vector<std::uint32_t> out;
    out.reserve(n_samples);
    if (m == 0) {
        ModelParams line = params;
        line.torus_length = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n_samples; ++i) {
            double u = rng.uniform01();
            double area = singleton_neighborhood_measure(u, line);
            out.push_back(static_cast<std::uint32_t>(rng.poisson(params.lambda_prime * area)));
        }
        return out;
    }
    while (out.size() < n_samples) {
        PalmSample s = sample_palm_environment(1, params, rng);
        std::vector<std::size_t> dim1;
        for (std::size_t k = 0; k < s.simplices_at_root.size(); ++k)
            if (s.simplices_at_root[k].size() == 1) dim1.push_back(k);
        if (dim1.empty()) continue;
        std::size_t choice = dim1[static_cast<std::size_t>(rng.uniform(0.0, 1.0) * dim1.size())];
        out.push_back(s.simplex_witness_counts[choice]);
    }
    return out;
}

}  // namespace dowkerlab

#endif
