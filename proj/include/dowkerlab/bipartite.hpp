#ifndef DOWKERLAB_BIPARTITE_HPP
#define DOWKERLAB_BIPARTITE_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "model.hpp"
#include "sampler.hpp"

namespace dowkerlab {

/// Incidence between P-vertices (authors) and P'-vertices (documents),
/// stored P'-major: witnesses[j] is the sorted list of P-vertex indices
/// adjacent to P'-vertex j.
struct BipartiteGraph {
    std::uint32_t n_p = 0;
    std::uint32_t n_p_prime = 0;
    std::vector<std::vector<std::uint32_t>> witnesses;

    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto& w : witnesses) e += w.size();
        return e;
    }

    /// Reverse adjacency: P-vertex -> sorted list of P'-vertex indices.
    std::vector<std::vector<std::uint32_t>> reverse_adjacency() const {
        std::vector<std::vector<std::uint32_t>> rev(n_p);
        for (std::uint32_t j = 0; j < witnesses.size(); ++j)
            for (std::uint32_t i : witnesses[j]) rev[i].push_back(j);
        return rev;  // sorted because j increases
    }

    bool operator==(const BipartiteGraph& other) const {
        return n_p == other.n_p && n_p_prime == other.n_p_prime &&
               witnesses == other.witnesses;
    }
};

/// Canonical edge-list serialization `p_index,p_prime_index`, lexicographic.
inline void write_edge_list(const BipartiteGraph& g, std::ostream& os) {
    os << "p_index,p_prime_index\n";
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(g.edge_count());
    for (std::uint32_t j = 0; j < g.witnesses.size(); ++j)
        for (std::uint32_t i : g.witnesses[j]) edges.emplace_back(i, j);
    std::sort(edges.begin(), edges.end());
    for (const auto& [i, j] : edges) os << i << "," << j << "\n";
}

inline void write_edge_list(const BipartiteGraph& g, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_edge_list: cannot open " + path);
    write_edge_list(g, os);
}

struct BuildStats {
    std::size_t pointwise_checks = 0;    // exact F evaluations
    std::size_t wholesale_accepts = 0;   // pairs accepted without evaluating F
};

/// O(N * N') reference construction.
inline BipartiteGraph build_naive(const NetworkInstance& inst, BuildStats* stats = nullptr) {
    BipartiteGraph g;
    g.n_p = static_cast<std::uint32_t>(inst.p_vertices.size());
    g.n_p_prime = static_cast<std::uint32_t>(inst.p_prime_vertices.size());
    g.witnesses.resize(g.n_p_prime);
    for (std::uint32_t j = 0; j < g.n_p_prime; ++j) {
        const auto& q = inst.p_prime_vertices[j];
        for (std::uint32_t i = 0; i < g.n_p; ++i) {
            if (connects(inst.p_vertices[i], q, inst.params))
                g.witnesses[j].push_back(i);
        }
        if (stats) stats->pointwise_checks += g.n_p;
    }
    return g;
}

namespace detail {

// Mark-stratified rectangle partition of one side of the process. Layer k
// holds marks in (2^{-(k+1)}, 2^{-k}]; cell width within a layer is
// proportional to bottom_mark^{-exponent}, clipped at L. Marks below the
// floor stratum go to a dedicated list checked pointwise.
struct RectanglePartition {
    struct Layer {
        double mark_low = 0.0;   // bottom mark of the stratum
        double mark_high = 1.0;  // top mark
        double cell_width = 1.0;
        std::unordered_map<long long, std::vector<std::uint32_t>> cells;
    };
    std::vector<Layer> layers;
    std::vector<std::uint32_t> floor_points;  // marks below the last stratum
    long long n_cells = 0;                    // cells per layer (L / width, rounded up)

    static constexpr int kLayers = 19;

    RectanglePartition(const std::vector<MarkedPoint>& pts, double exponent,
                       double beta, double L) {
        layers.resize(kLayers);
        for (int k = 0; k < kLayers; ++k) {
            layers[k].mark_high = std::ldexp(1.0, -k);
            layers[k].mark_low = std::ldexp(1.0, -(k + 1));
            double w = beta * std::pow(layers[k].mark_low, -exponent);
            layers[k].cell_width = std::min(w, L);
        }
        const double floor_mark = layers[kLayers - 1].mark_low;
        for (std::uint32_t i = 0; i < pts.size(); ++i) {
            double m = pts[i].mark;
            if (m <= floor_mark) {
                floor_points.push_back(i);
                continue;
            }
            int k = 0;
            while (m <= layers[k].mark_low) ++k;
            auto& layer = layers[k];
            long long idx = static_cast<long long>(pts[i].position / layer.cell_width);
            long long ncell = static_cast<long long>(std::ceil(L / layer.cell_width));
            if (idx >= ncell) idx = ncell - 1;
            layer.cells[idx].push_back(i);
        }
    }
};

// Minimal and maximal torus distance between the point sets of two arcs given
// by center and half-width.
inline double arc_dist_min(double c1, double h1, double c2, double h2, double L) {
    double d = torus_distance(c1, c2, L) - h1 - h2;
    return d > 0.0 ? d : 0.0;
}

inline double arc_dist_max(double c1, double h1, double c2, double h2, double L) {
    return std::min(0.5 * L, torus_distance(c1, c2, L) + h1 + h2);
}

}  // namespace detail

/// Stratified construction: identical edge set to build_naive, but rectangle
/// pairs are accepted or rejected wholesale where the pessimal/optimal corner
/// tests are conclusive, and only mixed pairs fall through to pointwise checks.
inline BipartiteGraph build_stratified(const NetworkInstance& inst,
                                       BuildStats* stats = nullptr) {
    const ModelParams& par = inst.params;
    par.validate();
    if (par.infinite())
        throw std::invalid_argument("build_stratified: requires a finite torus");
    const double L = par.torus_length;
    const double g = par.gamma, gp = par.gamma_prime, beta = par.beta;

    BipartiteGraph graph;
    graph.n_p = static_cast<std::uint32_t>(inst.p_vertices.size());
    graph.n_p_prime = static_cast<std::uint32_t>(inst.p_prime_vertices.size());
    graph.witnesses.resize(graph.n_p_prime);

    detail::RectanglePartition part_p(inst.p_vertices, g, beta, L);
    detail::RectanglePartition part_pp(inst.p_prime_vertices, gp, beta, L);

    auto check_pair = [&](std::uint32_t i, std::uint32_t j) {
        if (stats) ++stats->pointwise_checks;
        if (connects(inst.p_vertices[i], inst.p_prime_vertices[j], par))
            graph.witnesses[j].push_back(i);
    };

    // Regular strata: P'-cell against P-cell with corner tests.
    for (const auto& lp_prime : part_pp.layers) {
        double hw_pp = 0.5 * lp_prime.cell_width;
        for (const auto& [cell_idx_pp, js] : lp_prime.cells) {
            double center_pp = (cell_idx_pp + 0.5) * lp_prime.cell_width;
            if (center_pp > L) center_pp = std::fmod(center_pp, L);
            for (const auto& lp : part_p.layers) {
                double hw_p = 0.5 * lp.cell_width;
                // No P-pair can connect beyond this distance.
                double d_rej = beta * std::pow(lp.mark_low, -g) *
                               std::pow(lp_prime.mark_low, -gp);
                long long ncell = static_cast<long long>(std::ceil(L / lp.cell_width));
                long long span = static_cast<long long>((d_rej + hw_pp + hw_p) /
                                                        lp.cell_width) + 1;
                long long base = static_cast<long long>(center_pp / lp.cell_width);
                long long lo = base - span, hi = base + span;
                if (hi - lo + 1 >= ncell) { lo = 0; hi = ncell - 1; }
                for (long long raw = lo; raw <= hi; ++raw) {
                    long long ci = ((raw % ncell) + ncell) % ncell;
                    auto it = lp.cells.find(ci);
                    if (it == lp.cells.end()) continue;
                    double center_p = (ci + 0.5) * lp.cell_width;
                    double d_min = detail::arc_dist_min(center_p, hw_p, center_pp, hw_pp, L);
                    double d_max = detail::arc_dist_max(center_p, hw_p, center_pp, hw_pp, L);
                    double f_min = d_min * std::pow(lp.mark_low, g) *
                                   std::pow(lp_prime.mark_low, gp);
                    if (f_min > beta) continue;  // reject all
                    double f_max = d_max * std::pow(lp.mark_high, g) *
                                   std::pow(lp_prime.mark_high, gp);
                    if (f_max <= beta) {  // accept all
                        for (std::uint32_t j : js)
                            for (std::uint32_t i : it->second)
                                graph.witnesses[j].push_back(i);
                        if (stats) stats->wholesale_accepts += js.size() * it->second.size();
                        continue;
                    }
                    for (std::uint32_t j : js)
                        for (std::uint32_t i : it->second) check_pair(i, j);
                }
            }
            // Floor-stratum P points have unboundedly wide neighborhoods.
            for (std::uint32_t j : js)
                for (std::uint32_t i : part_p.floor_points) check_pair(i, j);
        }
    }
    // Floor-stratum P' points against everything.
    for (std::uint32_t j : part_pp.floor_points)
        for (std::uint32_t i = 0; i < graph.n_p; ++i) check_pair(i, j);

    for (auto& w : graph.witnesses) {
        std::sort(w.begin(), w.end());
        w.erase(std::unique(w.begin(), w.end()), w.end());
    }
    return graph;
}

}  // namespace dowkerlab

#endif
