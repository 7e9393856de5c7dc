#ifndef DOWKERLAB_INGEST_HPP
#define DOWKERLAB_INGEST_HPP

#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dowker.hpp"

namespace dowkerlab {

struct IngestResult {
    BipartiteGraph graph;               // capped graph, dense indices
    std::vector<std::string> author_ids;    // index -> original id
    std::vector<std::string> document_ids;
    std::size_t rows_read = 0;
    std::size_t rows_deduplicated = 0;
    std::size_t documents_dropped = 0;  // over the author cap, removed entirely
    std::size_t incidences_dropped = 0; // rows lost with the dropped documents
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

constexpr std::size_t kDefaultAuthorCap = 20;

/// Streams a two-column `author_id,document_id` incidence file. Ids are
/// interned in first-appearance order, duplicate rows collapse, and documents
/// with more than max_authors_per_document distinct authors are removed
/// entirely (all their rows).
inline IngestResult load_incidence_stream(std::istream& is,
                                          std::size_t max_authors_per_document = kDefaultAuthorCap) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("load_incidence_file: empty file");
    if (detail::trim(line) != "author_id,document_id")
        throw std::runtime_error("load_incidence_file: missing header 'author_id,document_id'");

    IngestResult out;
    std::unordered_map<std::string, std::uint32_t> author_index, document_index;
    // Raw incidence per document as sorted author sets (dedupes as it goes).
    std::vector<std::set<std::uint32_t>> doc_authors;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw std::runtime_error("load_incidence_file: malformed row at line " +
                                     std::to_string(line_no));
        std::string a = detail::trim(line.substr(0, comma));
        std::string d = detail::trim(line.substr(comma + 1));
        if (a.empty() || d.empty())
            throw std::runtime_error("load_incidence_file: empty id at line " +
                                     std::to_string(line_no));
        ++out.rows_read;
        auto [ait, ains] = author_index.emplace(a, static_cast<std::uint32_t>(out.author_ids.size()));
        if (ains) out.author_ids.push_back(a);
        auto [dit, dins] = document_index.emplace(d, static_cast<std::uint32_t>(out.document_ids.size()));
        if (dins) {
            out.document_ids.push_back(d);
            doc_authors.emplace_back();
        }
        if (!doc_authors[dit->second].insert(ait->second).second) ++out.rows_deduplicated;
    }
    if (out.rows_read == 0) throw std::runtime_error("load_incidence_file: no data rows");

    out.graph.n_p = static_cast<std::uint32_t>(out.author_ids.size());
    out.graph.n_p_prime = static_cast<std::uint32_t>(out.document_ids.size());
    out.graph.witnesses.resize(out.graph.n_p_prime);
    for (std::uint32_t j = 0; j < doc_authors.size(); ++j) {
        if (doc_authors[j].size() > max_authors_per_document) {
            ++out.documents_dropped;
            out.incidences_dropped += doc_authors[j].size();
            continue;  // index retained, adjacency left empty
        }
        out.graph.witnesses[j].assign(doc_authors[j].begin(), doc_authors[j].end());
    }
    return out;
}

inline IngestResult load_incidence_file(const std::string& path,
                                        std::size_t max_authors_per_document = kDefaultAuthorCap) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_incidence_file: cannot open " + path);
    return load_incidence_stream(is, max_authors_per_document);
}

/// Dataset summary in the shape of the reference tables: non-isolated vertex
/// counts on both sides, incidences, and component structure of the Dowker
/// 1-skeleton. Component figures are reported both with and without the
/// witness arity cap applied during enumeration.
struct DatasetSummary {
    std::size_t n_authors = 0;      // non-isolated P-vertices
    std::size_t n_documents = 0;    // non-empty P'-vertices
    std::size_t n_incidences = 0;
    std::size_t component_count = 0;
    std::size_t largest_component = 0;
    std::size_t component_count_uncapped = 0;
    std::size_t largest_component_uncapped = 0;
    bool degenerate = false;  // no edges at all

    nlohmann::json to_json() const {
        return {{"n_authors", n_authors},
                {"n_documents", n_documents},
                {"n_incidences", n_incidences},
                {"component_count", component_count},
                {"largest_component", largest_component},
                {"component_count_uncapped", component_count_uncapped},
                {"largest_component_uncapped", largest_component_uncapped},
                {"degenerate", degenerate}};
    }
};

inline DatasetSummary dataset_summary(const BipartiteGraph& graph,
                                      std::uint32_t max_witness_arity = kDefaultWitnessArityCap) {
    DatasetSummary s;
    std::vector<char> seen(graph.n_p, 0);
    for (const auto& nbrs : graph.witnesses) {
        if (nbrs.empty()) continue;
        ++s.n_documents;
        s.n_incidences += nbrs.size();
        for (std::uint32_t i : nbrs) seen[i] = 1;
    }
    for (char c : seen)
        if (c) ++s.n_authors;
    if (s.n_incidences == 0) {
        s.degenerate = true;
        return s;
    }
    auto capped = connected_components(enumerate_simplices(graph, 1, max_witness_arity));
    s.component_count = capped.component_count;
    s.largest_component = capped.largest_size;
    auto full = connected_components(enumerate_simplices(graph, 1, UINT32_MAX));
    s.component_count_uncapped = full.component_count;
    s.largest_component_uncapped = full.largest_size;
    return s;
}

}  // namespace dowkerlab

#endif
