#ifndef DOWKERLAB_HOMOLOGY_HPP
#define DOWKERLAB_HOMOLOGY_HPP

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "dowker.hpp"

namespace dowkerlab {

namespace detail {

// Symmetric difference of two sorted index vectors (column addition over GF(2)).
inline void xor_columns(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    a.swap(out);
}

// Rank of a sparse GF(2) matrix given as columns of sorted row indices.
// Standard left-to-right reduction; pivots map lowest row -> column.
inline std::size_t gf2_rank(std::vector<std::vector<std::uint32_t>> cols) {
    std::unordered_map<std::uint32_t, std::size_t> pivot;  // low row -> column idx
    std::size_t rank = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto& col = cols[j];
        while (!col.empty()) {
            std::uint32_t low = col.back();
            auto it = pivot.find(low);
            if (it == pivot.end()) { pivot.emplace(low, j); ++rank; break; }
            xor_columns(col, cols[it->second]);
        }
    }
    return rank;
}

// Columns of the boundary matrix d_m: faces of each m-simplex as row indices
// into the (m-1)-dimensional index map. Column order follows `order`.
inline std::vector<std::vector<std::uint32_t>> boundary_columns(
    const std::vector<std::pair<Simplex, std::uint32_t>>& simplices_m,
    const SimplexMap& face_index) {
    std::vector<std::vector<std::uint32_t>> cols;
    cols.reserve(simplices_m.size());
    Simplex face;
    for (const auto& [s, w] : simplices_m) {
        std::vector<std::uint32_t> col;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            face.clear();
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != drop) face.push_back(s[t]);
            auto it = face_index.find(face);
            if (it == face_index.end())
                throw std::logic_error("boundary_columns: face missing (closure violated)");
            col.push_back(it->second);
        }
        std::sort(col.begin(), col.end());
        cols.push_back(std::move(col));
    }
    return cols;
}

}  // namespace detail

/// Betti numbers beta_0..beta_max_dim over GF(2):
/// beta_m = #Sigma_m - rank d_m - rank d_{m+1}.
/// Requires the complex enumerated up to dimension max_dim + 1.
/// beta_0 is cross-checked against the union-find component count.
inline std::vector<std::size_t> betti_numbers(const DowkerComplex& cx, int max_dim) {
    if (max_dim < 0) throw std::invalid_argument("betti_numbers: max_dim must be >= 0");
    if (cx.max_dim < max_dim + 1)
        throw std::invalid_argument("betti_numbers: complex must be enumerated to max_dim+1");

    // Index maps per dimension in sorted-tuple order.
    std::vector<std::vector<std::pair<Simplex, std::uint32_t>>> sorted(max_dim + 2);
    std::vector<SimplexMap> index(max_dim + 2);
    for (int m = 0; m <= max_dim + 1; ++m) {
        sorted[m] = cx.sorted_simplices(m);
        index[m].reserve(sorted[m].size());
        for (std::uint32_t i = 0; i < sorted[m].size(); ++i)
            index[m].emplace(sorted[m][i].first, i);
    }
    std::vector<std::size_t> rank(max_dim + 2, 0);  // rank[m] = rank d_m, rank[0] = 0
    for (int m = 1; m <= max_dim + 1; ++m)
        rank[m] = detail::gf2_rank(detail::boundary_columns(sorted[m], index[m - 1]));

    std::vector<std::size_t> betti(max_dim + 1);
    for (int m = 0; m <= max_dim; ++m)
        betti[m] = sorted[m].size() - rank[m] - rank[m + 1];

    if (!sorted[0].empty()) {
        std::size_t b0 = connected_components(cx).component_count;
        if (b0 != betti[0]) throw std::logic_error("betti_numbers: union-find beta_0 mismatch");
    }
    return betti;
}

/// One simplex of the witness-count filtration, in insertion order.
struct FilteredSimplex {
    Simplex vertices;
    int dim;
    std::uint32_t witness_count;  // filtration value (decreasing-from-infinity scale)
};

/// Increasing filtration realized on the key (-witness_count, dim, tuple):
/// simplices with more witnesses enter first, faces before cofaces on ties,
/// so every prefix is a subcomplex.
struct Filtration {
    std::vector<FilteredSimplex> simplices;
    int max_dim = 0;
};

inline Filtration filtered_complex(const DowkerComplex& cx, int max_dim) {
    if (cx.max_dim < max_dim)
        throw std::invalid_argument("filtered_complex: complex misses requested dimension");
    Filtration f;
    f.max_dim = max_dim;
    for (int m = 0; m <= max_dim; ++m)
        for (const auto& [s, w] : cx.simplices[m])
            f.simplices.push_back({s, m, w});
    std::sort(f.simplices.begin(), f.simplices.end(),
              [](const FilteredSimplex& a, const FilteredSimplex& b) {
                  if (a.witness_count != b.witness_count)
                      return a.witness_count > b.witness_count;
                  if (a.dim != b.dim) return a.dim < b.dim;
                  return a.vertices < b.vertices;
              });
    return f;
}

inline Filtration filtered_complex(const BipartiteGraph& graph, int max_dim,
                                   std::uint32_t max_witness_arity = kDefaultWitnessArityCap) {
    return filtered_complex(enumerate_simplices(graph, max_dim, max_witness_arity), max_dim);
}

/// (dimension, birth, death) in witness-count coordinates: classes are born at
/// high witness counts and die at lower ones (birth >= death); essential
/// classes get death 0. Zero-length pairs are retained.
struct PersistencePair {
    int dimension;
    double birth;
    double death;
};

/// Column-reduction persistence over GF(2) with the twist (clearing)
/// optimization: dimensions are reduced top-down and columns already
/// identified as pivots are cleared.
inline std::vector<PersistencePair> persistence_diagram(const Filtration& f, int max_dim) {
    const std::size_t n = f.simplices.size();
    // Global position of each simplex.
    SimplexMap pos;
    pos.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) pos.emplace(f.simplices[i].vertices, i);

    // columns[i]: boundary of simplex i as sorted global positions.
    std::vector<std::vector<std::uint32_t>> columns(n);
    Simplex face;
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto& s = f.simplices[i].vertices;
        if (s.size() == 1) continue;
        auto& col = columns[i];
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            face.clear();
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != drop) face.push_back(s[t]);
            col.push_back(pos.at(face));
        }
        std::sort(col.begin(), col.end());
    }

    std::vector<std::uint32_t> pivot_of_low(n, UINT32_MAX);  // low row -> column
    std::vector<char> cleared(n, 0);
    std::vector<PersistencePair> pairs;

    for (int d = f.max_dim; d >= 1; --d) {
        for (std::uint32_t j = 0; j < n; ++j) {
            if (f.simplices[j].dim != d || cleared[j]) continue;
            auto& col = columns[j];
            while (!col.empty()) {
                std::uint32_t low = col.back();
                std::uint32_t other = pivot_of_low[low];
                if (other == UINT32_MAX) {
                    pivot_of_low[low] = j;
                    cleared[low] = 1;  // twist: the paired simplex creates no class
                    if (f.simplices[low].dim <= max_dim)
                        pairs.push_back({f.simplices[low].dim,
                                         static_cast<double>(f.simplices[low].witness_count),
                                         static_cast<double>(f.simplices[j].witness_count)});
                    break;
                }
                detail::xor_columns(col, columns[other]);
            }
        }
    }
    // Essential classes: simplices that were neither cleared (killed at birth)
    // nor appear as a pivot column with nonzero reduced boundary.
    for (std::uint32_t j = 0; j < n; ++j) {
        if (cleared[j]) continue;                 // paired as a birth
        if (!columns[j].empty()) continue;        // pivot column, pairs someone else
        if (f.simplices[j].dim > max_dim) continue;
        pairs.push_back({f.simplices[j].dim,
                         static_cast<double>(f.simplices[j].witness_count), 0.0});
    }
    std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
        if (a.dimension != b.dimension) return a.dimension < b.dimension;
        if (a.birth != b.birth) return a.birth > b.birth;
        return a.death > b.death;
    });
    return pairs;
}

/// `birth,death,dimension` text lines.
inline void write_diagram(const std::vector<PersistencePair>& pairs, std::ostream& os) {
    os << "birth,death,dimension\n";
    for (const auto& p : pairs) os << p.birth << "," << p.death << "," << p.dimension << "\n";
}

}  // namespace dowkerlab

#endif
