#include "smbic/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "smbic/errors.hpp"

namespace smbic {

SparseGraph SparseGraph::from_edges(std::int64_t num_nodes,
                                    std::vector<std::pair<int, int>> edges,
                                    IngestSummary* summary) {
    if (num_nodes < 1) throw param_error("graph needs at least one node");
    IngestSummary local;
    IngestSummary& s = summary ? *summary : local;

    // Normalize to (min,max), drop self-loops, dedup.
    std::vector<std::pair<int, int>> kept;
    kept.reserve(edges.size());
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= num_nodes || j >= num_nodes)
            throw param_error("edge endpoint out of range: (" + std::to_string(i) +
                              ", " + std::to_string(j) + ")");
        if (i == j) {
            ++s.self_loops_dropped;
            continue;
        }
        kept.emplace_back(std::min(i, j), std::max(i, j));
    }
    std::sort(kept.begin(), kept.end());
    auto last = std::unique(kept.begin(), kept.end());
    s.duplicates_dropped += static_cast<std::int64_t>(kept.end() - last);
    kept.erase(last, kept.end());
    s.edges_kept = static_cast<std::int64_t>(kept.size());

    SparseGraph g;
    g.num_nodes_ = num_nodes;
    g.num_edges_ = static_cast<std::int64_t>(kept.size());
    std::vector<std::int64_t> counts(num_nodes + 1, 0);
    for (auto [i, j] : kept) {
        ++counts[i + 1];
        ++counts[j + 1];
    }
    for (std::int64_t v = 0; v < num_nodes; ++v) counts[v + 1] += counts[v];
    g.offsets_ = counts;
    g.adjacency_.resize(2 * kept.size());
    std::vector<std::int64_t> cursor(counts.begin(), counts.end() - 1);
    for (auto [i, j] : kept) {
        g.adjacency_[cursor[i]++] = j;
        g.adjacency_[cursor[j]++] = i;
    }
    // kept was sorted lexicographically, so each neighbor list is already
    // sorted for the first endpoint; sort every list to cover the second.
    for (std::int64_t v = 0; v < num_nodes; ++v)
        std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1]);
    return g;
}

SparseGraph SparseGraph::from_csr(std::int64_t num_nodes,
                                  std::vector<std::int64_t> offsets,
                                  std::vector<int> neighbors) {
    if (num_nodes < 1) throw param_error("graph needs at least one node");
    if (static_cast<std::int64_t>(offsets.size()) != num_nodes + 1 ||
        offsets.front() != 0 ||
        offsets.back() != static_cast<std::int64_t>(neighbors.size()))
        throw param_error("malformed CSR offsets");

    SparseGraph g;
    g.num_nodes_ = num_nodes;
    g.offsets_ = std::move(offsets);
    g.adjacency_ = std::move(neighbors);
    for (std::int64_t v = 0; v < num_nodes; ++v) {
        auto row = g.neighbors(static_cast<int>(v));
        if (!std::is_sorted(row.begin(), row.end()) ||
            std::adjacent_find(row.begin(), row.end()) != row.end())
            throw param_error("neighbor list of node " + std::to_string(v) +
                              " is not sorted/unique");
        for (int u : row) {
            if (u < 0 || u >= num_nodes)
                throw param_error("neighbor index out of range");
            if (u == v)
                throw param_error("self-loop at node " + std::to_string(v));
            if (!g.has_edge(u, static_cast<int>(v)))
                throw param_error("asymmetric entry (" + std::to_string(v) + ", " +
                                  std::to_string(u) + ")");
        }
    }
    if (g.adjacency_.size() % 2 != 0) throw param_error("odd number of stored entries");
    g.num_edges_ = static_cast<std::int64_t>(g.adjacency_.size()) / 2;
    return g;
}

bool SparseGraph::has_edge(int i, int j) const {
    auto row = neighbors(i);
    return std::binary_search(row.begin(), row.end(), j);
}

namespace {

bool parse_int_token(std::string_view tok, long long& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

SparseGraph load_edge_list(const std::string& path, Indexing indexing,
                           IngestSummary* summary) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open edge list: " + path);

    const long long base = indexing == Indexing::OneBased ? 1 : 0;
    std::vector<std::pair<int, int>> edges;
    long long declared_n = -1;
    long long max_index = -1;
    std::int64_t line_no = 0;
    bool seen_payload = false;
    std::string line;
    IngestSummary local;
    IngestSummary& s = summary ? *summary : local;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv(line);
        auto first = sv.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        if (sv[first] == '#') continue;
        ++s.lines_read;

        std::istringstream ss(line);
        std::string t1, t2, extra;
        ss >> t1 >> t2;
        bool has_two = !t2.empty();
        ss >> extra;
        if (!extra.empty())
            throw io_error(path + ":" + std::to_string(line_no) + ": expected two tokens");

        long long a = 0, b = 0;
        if (!parse_int_token(t1, a) || (has_two && !parse_int_token(t2, b)))
            throw io_error(path + ":" + std::to_string(line_no) + ": malformed integer token");

        if (!has_two) {
            // Single-token header: declared node count, only before any edge.
            if (seen_payload || declared_n >= 0)
                throw io_error(path + ":" + std::to_string(line_no) +
                               ": unexpected single-token line");
            if (a < 1)
                throw io_error(path + ":" + std::to_string(line_no) +
                               ": declared node count must be >= 1");
            declared_n = a;
            continue;
        }
        seen_payload = true;
        a -= base;
        b -= base;
        if (a < 0 || b < 0)
            throw io_error(path + ":" + std::to_string(line_no) + ": negative node index");
        if (declared_n >= 0 && (a >= declared_n || b >= declared_n))
            throw io_error(path + ":" + std::to_string(line_no) +
                           ": node index exceeds declared count " + std::to_string(declared_n));
        max_index = std::max({max_index, a, b});
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    long long n = declared_n >= 0 ? declared_n : max_index + 1;
    if (n < 1) throw io_error(path + ": no nodes found");
    return SparseGraph::from_edges(n, std::move(edges), &s);
}

void write_edge_list(const SparseGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    for (int i = 0; i < g.num_nodes(); ++i)
        for (int j : g.neighbors(i))
            if (i < j) out << i << ' ' << j << '\n';
    if (!out) throw io_error("write failed: " + path);
}

DegreeSummary degree_stats(const SparseGraph& g) {
    DegreeSummary d;
    const std::int64_t n = g.num_nodes();
    d.degrees.resize(n);
    for (std::int64_t i = 0; i < n; ++i) {
        d.degrees[i] = g.degree(static_cast<int>(i));
        d.max_degree = std::max(d.max_degree, d.degrees[i]);
    }
    d.mean_degree = n > 0 ? 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(n) : 0.0;
    d.density_hat = n > 1 ? 2.0 * static_cast<double>(g.num_edges()) /
                                (static_cast<double>(n) * static_cast<double>(n - 1))
                          : 0.0;
    return d;
}

}  // namespace smbic
