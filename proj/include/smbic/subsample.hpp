#ifndef SMBIC_SUBSAMPLE_HPP
#define SMBIC_SUBSAMPLE_HPP

#include <Eigen/SparseCore>
#include <cstdint>
#include <string>
#include <vector>

#include "smbic/graph.hpp"

namespace smbic {

/// A uniformly chosen node subset. `selected` is sorted ascending and
/// `index_of[j]` gives the column index of node j (-1 if unselected).
struct NodeSet {
    std::vector<int> selected;
    std::vector<int> index_of;

    int size() const { return static_cast<int>(selected.size()); }
    bool contains(int node) const { return index_of[node] >= 0; }
};

/// All edge variables incident to the selected nodes, as the N x n 0/1
/// matrix whose column s_j is the adjacency column of selected node j.
struct SubAdjacency {
    Eigen::SparseMatrix<double> matrix;  // N x n, entries are 1.0
    NodeSet nodes;
    std::int64_t total_nodes = 0;        // N
    std::int64_t pair_count = 0;         // M = N*n - n(n+1)/2

    int subsample_size() const { return nodes.size(); }
};

/// Draws n distinct nodes uniformly without replacement.
NodeSet sample_nodes(std::int64_t num_nodes, std::int64_t n, std::uint64_t seed);

/// Builds a NodeSet from explicit indices (validated, sorted).
NodeSet node_set_from_indices(std::int64_t num_nodes, std::vector<int> indices);

SubAdjacency extract_subadjacency(const SparseGraph& g, const NodeSet& s);

/// Number of independent pairs covered by the subsample.
std::int64_t independent_pair_count(std::int64_t num_nodes, std::int64_t n);

/// Subsample size rule: min(N, ceil(zeta * ln(N) / rho_hat)).
std::int64_t recommended_subsample_size(std::int64_t num_nodes, double rho_hat, double zeta);

/// One index per line, for reproducibility audits.
void write_node_set(const NodeSet& s, const std::string& path);
NodeSet load_node_set(const std::string& path, std::int64_t num_nodes);

}  // namespace smbic

#endif
