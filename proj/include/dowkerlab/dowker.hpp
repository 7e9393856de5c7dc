#ifndef DOWKERLAB_DOWKER_HPP
#define DOWKERLAB_DOWKER_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bipartite.hpp"

namespace dowkerlab {

using Simplex = std::vector<std::uint32_t>;  // sorted P-vertex indices

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (std::uint32_t v : s) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

using SimplexMap = std::unordered_map<Simplex, std::uint32_t, SimplexHash>;

/// Simplices of the Dowker complex by dimension, each with its witness count
/// (the number of P'-vertices adjacent to every vertex of the simplex).
/// Vertex marks/positions are retained when built from a geometric instance.
struct DowkerComplex {
    int max_dim = 0;
    std::vector<SimplexMap> simplices;  // index = dimension
    std::vector<double> vertex_marks;
    std::vector<double> vertex_positions;
    std::size_t documents_dropped = 0;  // witnesses above the arity cap

    std::size_t simplex_count(int m) const {
        if (m < 0 || m > max_dim)
            throw std::invalid_argument("simplex_count: dimension out of range");
        return simplices[m].size();
    }

    std::uint32_t witness_count(const Simplex& s) const {
        int m = static_cast<int>(s.size()) - 1;
        if (m < 0 || m > max_dim) return 0;
        auto it = simplices[m].find(s);
        return it == simplices[m].end() ? 0 : it->second;
    }

    /// Deterministic iteration order: simplices of dimension m sorted by tuple.
    std::vector<std::pair<Simplex, std::uint32_t>> sorted_simplices(int m) const {
        std::vector<std::pair<Simplex, std::uint32_t>> out(simplices[m].begin(),
                                                           simplices[m].end());
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }
};

constexpr std::uint32_t kDefaultWitnessArityCap = 20;

/// Witness-major enumeration: every P'-vertex with at most max_witness_arity
/// neighbors contributes all subsets of its neighbor set of size <= max_dim+1.
/// Over-large witnesses are excluded entirely and counted in documents_dropped.
inline DowkerComplex enumerate_simplices(const BipartiteGraph& graph, int max_dim,
                                         std::uint32_t max_witness_arity = kDefaultWitnessArityCap) {
    if (max_dim < 0) throw std::invalid_argument("enumerate_simplices: max_dim must be >= 0");
    DowkerComplex cx;
    cx.max_dim = max_dim;
    cx.simplices.resize(max_dim + 1);
    Simplex key;
    std::vector<std::uint32_t> pick;
    for (const auto& nbrs : graph.witnesses) {
        if (nbrs.empty()) continue;
        if (nbrs.size() > max_witness_arity) {
            ++cx.documents_dropped;
            continue;
        }
        const int n = static_cast<int>(nbrs.size());
        const int max_k = std::min(n, max_dim + 1);
        for (int k = 1; k <= max_k; ++k) {
            // iterate k-combinations of nbrs
            pick.assign(k, 0);
            std::iota(pick.begin(), pick.end(), 0);
            while (true) {
                key.clear();
                for (int t = 0; t < k; ++t) key.push_back(nbrs[pick[t]]);
                ++cx.simplices[k - 1][key];
                int i = k - 1;
                while (i >= 0 && pick[i] == static_cast<std::uint32_t>(n - k + i)) --i;
                if (i < 0) break;
                ++pick[i];
                for (int t = i + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
            }
        }
    }
    return cx;
}

/// Same, keeping vertex geometry for centering.
inline DowkerComplex enumerate_simplices(const NetworkInstance& inst,
                                         const BipartiteGraph& graph, int max_dim,
                                         std::uint32_t max_witness_arity = kDefaultWitnessArityCap) {
    DowkerComplex cx = enumerate_simplices(graph, max_dim, max_witness_arity);
    cx.vertex_marks.reserve(inst.p_vertices.size());
    cx.vertex_positions.reserve(inst.p_vertices.size());
    for (const auto& p : inst.p_vertices) {
        cx.vertex_marks.push_back(p.mark);
        cx.vertex_positions.push_back(p.position);
    }
    return cx;
}

/// Witness count of an arbitrary sorted vertex tuple, by scanning the graph.
/// Applies the same arity cap as enumeration so it matches stored counts.
inline std::uint32_t simplex_degree(const BipartiteGraph& graph, const Simplex& tuple,
                                    std::uint32_t max_witness_arity = kDefaultWitnessArityCap) {
    if (tuple.empty()) throw std::invalid_argument("simplex_degree: empty tuple");
    std::uint32_t count = 0;
    for (const auto& nbrs : graph.witnesses) {
        if (nbrs.size() > max_witness_arity) continue;
        bool all = true;
        for (std::uint32_t v : tuple) {
            if (!std::binary_search(nbrs.begin(), nbrs.end(), v)) { all = false; break; }
        }
        if (all) ++count;
    }
    return count;
}

/// Location of the minimal-mark vertex of a stored simplex; ties broken by the
/// smallest position coordinate.
inline double center(const DowkerComplex& cx, const Simplex& s) {
    if (s.empty()) throw std::invalid_argument("center: empty simplex");
    if (cx.vertex_marks.empty())
        throw std::invalid_argument("center: complex carries no vertex geometry");
    std::uint32_t best = s[0];
    for (std::uint32_t v : s) {
        double m = cx.vertex_marks[v], bm = cx.vertex_marks[best];
        if (m < bm || (m == bm && cx.vertex_positions[v] < cx.vertex_positions[best]))
            best = v;
    }
    return cx.vertex_positions[best];
}

enum class DegreeKind { Delta0, Delta1, Delta0Prime, Coface0, Coface1 };

/// Two-column histogram value -> frequency over positive values.
struct DegreeHistogram {
    DegreeKind kind;
    std::map<std::uint32_t, std::uint64_t> counts;

    std::vector<std::uint32_t> expand() const {
        std::vector<std::uint32_t> vals;
        for (const auto& [v, c] : counts)
            for (std::uint64_t i = 0; i < c; ++i) vals.push_back(v);
        return vals;
    }
};

inline void write_histogram(const DegreeHistogram& h, std::ostream& os) {
    os << "value,count\n";
    for (const auto& [v, c] : h.counts) os << v << "," << c << "\n";
}

/// Delta0: bipartite degrees of non-isolated P-vertices.
/// Delta0Prime: neighbor counts of non-empty P'-vertices (arity cap applied).
inline DegreeHistogram degree_histogram(const BipartiteGraph& graph, DegreeKind kind,
                                        std::uint32_t max_witness_arity = kDefaultWitnessArityCap) {
    DegreeHistogram h{kind, {}};
    if (kind == DegreeKind::Delta0) {
        std::vector<std::uint32_t> deg(graph.n_p, 0);
        for (const auto& nbrs : graph.witnesses) {
            if (nbrs.size() > max_witness_arity) continue;
            for (std::uint32_t i : nbrs) ++deg[i];
        }
        for (std::uint32_t d : deg)
            if (d > 0) ++h.counts[d];
    } else if (kind == DegreeKind::Delta0Prime) {
        for (const auto& nbrs : graph.witnesses) {
            if (nbrs.empty() || nbrs.size() > max_witness_arity) continue;
            ++h.counts[static_cast<std::uint32_t>(nbrs.size())];
        }
    } else {
        throw std::invalid_argument("degree_histogram: this kind needs a complex");
    }
    return h;
}

/// Delta1: witness counts of 1-simplices. Coface0/Coface1: number of
/// (k+1)-simplices incident to each k-simplex, k = 0 resp. 1.
inline DegreeHistogram degree_histogram(const DowkerComplex& cx, DegreeKind kind) {
    DegreeHistogram h{kind, {}};
    if (kind == DegreeKind::Delta1) {
        if (cx.max_dim < 1) throw std::invalid_argument("degree_histogram: need dimension 1");
        for (const auto& [s, w] : cx.simplices[1]) ++h.counts[w];
    } else if (kind == DegreeKind::Coface0 || kind == DegreeKind::Coface1) {
        int k = (kind == DegreeKind::Coface0) ? 0 : 1;
        if (cx.max_dim < k + 1)
            throw std::invalid_argument("degree_histogram: complex misses dimension k+1");
        SimplexMap cofaces;
        Simplex face;
        for (const auto& [s, w] : cx.simplices[k + 1]) {
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                face.clear();
                for (std::size_t t = 0; t < s.size(); ++t)
                    if (t != drop) face.push_back(s[t]);
                ++cofaces[face];
            }
        }
        for (const auto& [s, w] : cx.simplices[k]) {
            auto it = cofaces.find(s);
            std::uint32_t c = (it == cofaces.end()) ? 0 : it->second;
            if (c > 0) ++h.counts[c];
        }
    } else {
        throw std::invalid_argument("degree_histogram: this kind needs the graph");
    }
    return h;
}

namespace detail {

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a); b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }
    std::uint32_t component_size(std::uint32_t x) { return size_[find(x)]; }

  private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

}  // namespace detail

struct ComponentSummary {
    std::size_t component_count = 0;
    std::size_t largest_size = 0;
};

/// Connected components of the Dowker 1-skeleton over non-isolated P-vertices.
inline ComponentSummary connected_components(const DowkerComplex& cx) {
    if (cx.max_dim < 1)
        throw std::invalid_argument("connected_components: need dimension 1");
    std::size_t n = 0;
    std::unordered_map<std::uint32_t, std::uint32_t> id;
    for (const auto& [s, w] : cx.simplices[0]) id.emplace(s[0], static_cast<std::uint32_t>(n++));
    detail::UnionFind uf(n);
    for (const auto& [s, w] : cx.simplices[1]) uf.unite(id.at(s[0]), id.at(s[1]));
    std::unordered_map<std::uint32_t, std::size_t> roots;
    for (const auto& [v, i] : id) ++roots[uf.find(i)];
    ComponentSummary out;
    out.component_count = roots.size();
    for (const auto& [r, sz] : roots) out.largest_size = std::max(out.largest_size, sz);
    return out;
}

/// `dim,v0,...,vm,witness_count` lines, sorted by (dim, tuple).
inline void write_complex(const DowkerComplex& cx, std::ostream& os) {
    for (int m = 0; m <= cx.max_dim; ++m) {
        for (const auto& [s, w] : cx.sorted_simplices(m)) {
            os << m;
            for (std::uint32_t v : s) os << "," << v;
            os << "," << w << "\n";
        }
    }
}

}  // namespace dowkerlab

#endif
