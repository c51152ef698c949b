#ifndef SMBIC_GRAPH_HPP
#define SMBIC_GRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace smbic {

enum class Indexing { ZeroBased, OneBased };

/// Counters reported after edge-list ingestion.
struct IngestSummary {
    std::int64_t lines_read = 0;
    std::int64_t edges_kept = 0;
    std::int64_t duplicates_dropped = 0;
    std::int64_t self_loops_dropped = 0;
};

/// Per-node degrees and global density of a graph.
struct DegreeSummary {
    std::vector<std::int64_t> degrees;
    double mean_degree = 0.0;
    std::int64_t max_degree = 0;
    double density_hat = 0.0;
};

/// Immutable simple undirected graph in CSR form. Both directions of every
/// edge are stored; the diagonal is empty; neighbor lists are sorted.
class SparseGraph {
public:
    /// Builds from an undirected edge set. Self-loops and duplicates are
    /// dropped (counted in `summary` when given).
    static SparseGraph from_edges(std::int64_t num_nodes,
                                  std::vector<std::pair<int, int>> edges,
                                  IngestSummary* summary = nullptr);

    /// Adopts prebuilt CSR arrays; rejects asymmetric or self-looped input.
    static SparseGraph from_csr(std::int64_t num_nodes,
                                std::vector<std::int64_t> offsets,
                                std::vector<int> neighbors);

    std::int64_t num_nodes() const { return num_nodes_; }
    /// Undirected edge count.
    std::int64_t num_edges() const { return num_edges_; }

    std::span<const int> neighbors(int node) const {
        return {adjacency_.data() + offsets_[node],
                adjacency_.data() + offsets_[node + 1]};
    }
    std::int64_t degree(int node) const { return offsets_[node + 1] - offsets_[node]; }
    bool has_edge(int i, int j) const;

private:
    SparseGraph() = default;
    std::int64_t num_nodes_ = 0;
    std::int64_t num_edges_ = 0;
    std::vector<std::int64_t> offsets_;
    std::vector<int> adjacency_;
};

/// Reads a whitespace-separated edge list. Lines starting with '#' are
/// ignored. An optional single-integer first line declares the node count;
/// otherwise N = max index + 1.
SparseGraph load_edge_list(const std::string& path,
                           Indexing indexing = Indexing::ZeroBased,
                           IngestSummary* summary = nullptr);

/// Writes one "i j" line per undirected edge (i < j), zero-based.
void write_edge_list(const SparseGraph& g, const std::string& path);

DegreeSummary degree_stats(const SparseGraph& g);

}  // namespace smbic

#endif
