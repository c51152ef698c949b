#include "smbic/criterion.hpp"

#include <algorithm>
#include <cmath>

#include "smbic/errors.hpp"

namespace smbic {

namespace {

// Sums after sorting so the result depends only on the multiset of terms,
// making the likelihood bit-identical under cluster-index permutations.
double canonical_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double total = 0.0;
    for (double t : terms) total += t;
    return total;
}

void check_labels(const SubAdjacency& a, const Labeling& labels) {
    if (static_cast<std::int64_t>(labels.labels.size()) != a.total_nodes)
        throw param_error("labeling length differs from node count");
    if (labels.k < 1) throw param_error("need K >= 1");
    for (int l : labels.labels)
        if (l < 0 || l >= labels.k) throw param_error("label out of range");
}

}  // namespace

std::uint64_t hash_subadjacency(const SubAdjacency& a) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(a.total_nodes));
    mix(static_cast<std::uint64_t>(a.subsample_size()));
    for (int col = 0; col < a.subsample_size(); ++col) {
        mix(static_cast<std::uint64_t>(a.nodes.selected[col]));
        for (Eigen::SparseMatrix<double>::InnerIterator it(a.matrix, col); it; ++it)
            mix(static_cast<std::uint64_t>(it.row()));
    }
    return h;
}

PairCounts count_statistics(const SubAdjacency& a, const Labeling& labels) {
    check_labels(a, labels);
    const int k = labels.k;
    const auto& g = labels.labels;
    const NodeSet& s = a.nodes;

    PairCounts c;
    c.k = k;
    c.pair_count = a.pair_count;
    c.o = CountMatrix::Zero(k, k);
    c.n_pairs = CountMatrix::Zero(k, k);

    // Observed edges: walk the stored entries once. A selected-selected pair
    // appears in both endpoint columns; keep it only from the lower id.
    for (int col = 0; col < s.size(); ++col) {
        const int j = s.selected[col];
        for (Eigen::SparseMatrix<double>::InnerIterator it(a.matrix, col); it; ++it) {
            const int i = static_cast<int>(it.row());
            if (s.contains(i) && i > j) continue;
            const int lo = std::min(g[i], g[j]);
            const int hi = std::max(g[i], g[j]);
            c.o(lo, hi) += 1;
        }
    }

    // Possible pairs from label histograms: a pair is in E iff at least one
    // endpoint is selected.
    std::vector<std::int64_t> all(k, 0), unsel(k, 0);
    for (std::int64_t i = 0; i < a.total_nodes; ++i) {
        ++all[g[i]];
        if (!s.contains(static_cast<int>(i))) ++unsel[g[i]];
    }
    auto choose2 = [](std::int64_t x) { return x * (x - 1) / 2; };
    for (int p = 0; p < k; ++p) {
        c.n_pairs(p, p) = choose2(all[p]) - choose2(unsel[p]);
        for (int q = p + 1; q < k; ++q)
            c.n_pairs(p, q) = all[p] * all[q] - unsel[p] * unsel[q];
    }

    // Mirror the upper triangles.
    for (int p = 0; p < k; ++p)
        for (int q = p + 1; q < k; ++q) {
            c.o(q, p) = c.o(p, q);
            c.n_pairs(q, p) = c.n_pairs(p, q);
        }
    return c;
}

WeightedPairCounts weighted_pair_counts(const SubAdjacency& a, const Labeling& labels,
                                        const Eigen::VectorXd& psi) {
    check_labels(a, labels);
    if (psi.size() != a.total_nodes) throw param_error("psi length differs from node count");
    for (std::int64_t i = 0; i < psi.size(); ++i)
        if (!(psi[i] >= 0.0)) throw param_error("psi entries must be >= 0");

    const int k = labels.k;
    const auto& g = labels.labels;
    const NodeSet& s = a.nodes;

    WeightedPairCounts w;
    w.n_psi = Eigen::MatrixXd::Zero(k, k);

    // Same histogram trick as the unweighted counts, on psi moments.
    Eigen::VectorXd sum_all = Eigen::VectorXd::Zero(k), sum_unsel = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd sq_all = Eigen::VectorXd::Zero(k), sq_unsel = Eigen::VectorXd::Zero(k);
    for (std::int64_t i = 0; i < a.total_nodes; ++i) {
        const int c = g[i];
        sum_all[c] += psi[i];
        sq_all[c] += psi[i] * psi[i];
        if (!s.contains(static_cast<int>(i))) {
            sum_unsel[c] += psi[i];
            sq_unsel[c] += psi[i] * psi[i];
        }
    }
    for (int p = 0; p < k; ++p) {
        w.n_psi(p, p) = 0.5 * ((sum_all[p] * sum_all[p] - sq_all[p]) -
                               (sum_unsel[p] * sum_unsel[p] - sq_unsel[p]));
        for (int q = p + 1; q < k; ++q) {
            w.n_psi(p, q) = sum_all[p] * sum_all[q] - sum_unsel[p] * sum_unsel[q];
            w.n_psi(q, p) = w.n_psi(p, q);
        }
    }

    for (int col = 0; col < s.size(); ++col) {
        const int j = s.selected[col];
        for (Eigen::SparseMatrix<double>::InnerIterator it(a.matrix, col); it; ++it) {
            const int i = static_cast<int>(it.row());
            if (s.contains(i) && i > j) continue;
            const double prod = psi[i] * psi[j];
            if (prod > 0.0) {
                w.log_psi_edge_sum += std::log(prod);
            } else {
                w.log_psi_edge_sum += std::log(kProbEps);
                ++w.zero_weight_edges;
            }
        }
    }
    return w;
}

Eigen::MatrixXd estimate_b_sbm(const PairCounts& c, std::vector<std::string>* flags) {
    const int k = c.k;
    Eigen::MatrixXd b(k, k);
    std::int64_t clamped = 0, empty_cells = 0;
    for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) {
            if (c.n_pairs(p, q) == 0) {
                b(p, q) = kProbEps;
                ++empty_cells;
                continue;
            }
            double ratio = static_cast<double>(c.o(p, q)) / static_cast<double>(c.n_pairs(p, q));
            double clamp = std::min(1.0 - kProbEps, std::max(kProbEps, ratio));
            if (clamp != ratio) ++clamped;
            b(p, q) = clamp;
        }
    if (flags) {
        if (clamped > 0) flags->push_back("b_clamped=" + std::to_string(clamped));
        if (empty_cells > 0) flags->push_back("empty_pair_cells=" + std::to_string(empty_cells));
    }
    return b;
}

Eigen::MatrixXd estimate_b_dcsbm(const PairCounts& c, const WeightedPairCounts& w,
                                 std::vector<std::string>* flags) {
    const int k = c.k;
    Eigen::MatrixXd b(k, k);
    std::int64_t floored = 0, empty_cells = 0;
    for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) {
            if (w.n_psi(p, q) <= 0.0) {
                b(p, q) = kProbEps;
                ++empty_cells;
                continue;
            }
            double rate = static_cast<double>(c.o(p, q)) / w.n_psi(p, q);
            if (rate < kProbEps) {
                rate = kProbEps;
                ++floored;
            }
            b(p, q) = rate;
        }
    if (flags) {
        if (floored > 0) flags->push_back("b_floored=" + std::to_string(floored));
        if (empty_cells > 0) flags->push_back("empty_weight_cells=" + std::to_string(empty_cells));
    }
    return b;
}

double loglik_bernoulli(const PairCounts& c, const Eigen::MatrixXd& b) {
    if (b.rows() != c.k || b.cols() != c.k) throw param_error("B has wrong shape");
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(c.k) * (c.k + 1) / 2);
    for (int p = 0; p < c.k; ++p)
        for (int q = p; q < c.k; ++q) {
            const auto o = c.o(p, q);
            const auto n = c.n_pairs(p, q);
            if (n == 0) continue;
            const double theta = b(p, q);
            if (!(theta > 0.0 && theta < 1.0))
                throw param_error("Bernoulli B entries must lie in (0, 1)");
            terms.push_back(static_cast<double>(o) * std::log(theta) +
                            static_cast<double>(n - o) * std::log1p(-theta));
        }
    return canonical_sum(terms);
}

double loglik_poisson(const PairCounts& c, const WeightedPairCounts& w,
                      const Eigen::MatrixXd& b, bool include_psi_log_term) {
    if (b.rows() != c.k || b.cols() != c.k) throw param_error("B has wrong shape");
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(c.k) * (c.k + 1) / 2);
    for (int p = 0; p < c.k; ++p)
        for (int q = p; q < c.k; ++q) {
            const auto o = c.o(p, q);
            const double rate = b(p, q);
            if (!(rate > 0.0)) throw param_error("Poisson B entries must be positive");
            terms.push_back(static_cast<double>(o) * std::log(rate) - w.n_psi(p, q) * rate);
        }
    double total = canonical_sum(terms);
    return include_psi_log_term ? total + w.log_psi_edge_sum : total;
}

double penalty(std::int64_t n, int k, std::int64_t m) {
    if (n < 1 || k < 1 || m < 1) throw param_error("penalty needs n, K, M >= 1");
    return static_cast<double>(n) * std::log(static_cast<double>(k)) +
           static_cast<double>(k) * (k + 1) / 4.0 * std::log(static_cast<double>(m));
}

double smbic_score(double loglik, double pen) {
    if (!std::isfinite(loglik) || !std::isfinite(pen))
        throw numeric_error("SM-BIC inputs must be finite");
    return loglik - pen;
}

}  // namespace smbic
