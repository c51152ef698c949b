#include "smbic/subsample.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "smbic/errors.hpp"
#include "smbic/rng.hpp"

namespace smbic {

NodeSet sample_nodes(std::int64_t num_nodes, std::int64_t n, std::uint64_t seed) {
    if (n < 1 || n > num_nodes)
        throw param_error("subsample size must be in [1, N], got n=" + std::to_string(n) +
                          " with N=" + std::to_string(num_nodes));
    std::vector<int> pool(num_nodes);
    std::iota(pool.begin(), pool.end(), 0);
    auto rng = make_rng(seed);
    // Partial Fisher-Yates: the first n slots become the sample.
    for (std::int64_t i = 0; i < n; ++i) {
        std::uniform_int_distribution<std::int64_t> pick(i, num_nodes - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(n);
    return node_set_from_indices(num_nodes, std::move(pool));
}

NodeSet node_set_from_indices(std::int64_t num_nodes, std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    if (indices.empty()) throw param_error("node set is empty");
    if (indices.front() < 0 || indices.back() >= num_nodes)
        throw param_error("node index out of range");
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
        throw param_error("node set has duplicate indices");
    NodeSet s;
    s.index_of.assign(num_nodes, -1);
    for (int c = 0; c < static_cast<int>(indices.size()); ++c) s.index_of[indices[c]] = c;
    s.selected = std::move(indices);
    return s;
}

SubAdjacency extract_subadjacency(const SparseGraph& g, const NodeSet& s) {
    const std::int64_t num_nodes = g.num_nodes();
    if (static_cast<std::int64_t>(s.index_of.size()) != num_nodes)
        throw param_error("node set was built for a different graph size");
    const int n = s.size();

    SubAdjacency sub;
    sub.nodes = s;
    sub.total_nodes = num_nodes;
    sub.pair_count = independent_pair_count(num_nodes, n);
    sub.matrix.resize(num_nodes, n);

    Eigen::VectorXi per_col(n);
    for (int c = 0; c < n; ++c)
        per_col[c] = static_cast<int>(g.degree(s.selected[c]));
    sub.matrix.reserve(per_col);
    for (int c = 0; c < n; ++c)
        for (int row : g.neighbors(s.selected[c]))
            sub.matrix.insert(row, c) = 1.0;
    sub.matrix.makeCompressed();
    return sub;
}

std::int64_t independent_pair_count(std::int64_t num_nodes, std::int64_t n) {
    if (n < 1 || n > num_nodes) throw param_error("need 1 <= n <= N");
    return num_nodes * n - n * (n + 1) / 2;
}

std::int64_t recommended_subsample_size(std::int64_t num_nodes, double rho_hat, double zeta) {
    if (num_nodes < 2) throw param_error("need N >= 2");
    if (rho_hat == 0.0) throw numeric_error("density estimate is zero");
    if (!(rho_hat > 0.0 && rho_hat <= 1.0)) throw param_error("rho_hat must be in (0, 1]");
    if (!(zeta > 0.0)) throw param_error("zeta must be positive");
    double raw = zeta * std::log(static_cast<double>(num_nodes)) / rho_hat;
    auto n = static_cast<std::int64_t>(std::ceil(raw));
    return std::min(num_nodes, std::max<std::int64_t>(1, n));
}

void write_node_set(const NodeSet& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    for (int idx : s.selected) out << idx << '\n';
    if (!out) throw io_error("write failed: " + path);
}

NodeSet load_node_set(const std::string& path, std::int64_t num_nodes) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open node set: " + path);
    std::vector<int> indices;
    long long v;
    while (in >> v) indices.push_back(static_cast<int>(v));
    if (!in.eof()) throw io_error("malformed node set file: " + path);
    return node_set_from_indices(num_nodes, std::move(indices));
}

}  // namespace smbic
