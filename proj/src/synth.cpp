#include "smbic/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "smbic/errors.hpp"
#include "smbic/rng.hpp"

namespace smbic {

namespace {

std::vector<double> resolve_pi(const SbmParams& p) {
    if (p.pi.empty())
        return std::vector<double>(p.k0, 1.0 / static_cast<double>(p.k0));
    if (static_cast<int>(p.pi.size()) != p.k0)
        throw param_error("pi must have K0 entries");
    double sum = std::accumulate(p.pi.begin(), p.pi.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-12) throw param_error("pi must sum to 1");
    for (double v : p.pi)
        if (!(v > 0.0)) throw param_error("pi entries must be positive");
    return p.pi;
}

void validate(const SbmParams& p) {
    if (p.k0 < 1) throw param_error("K0 must be >= 1");
    if (p.n_nodes < 1) throw param_error("N must be >= 1");
    if (!(p.rho > 0.0 && p.rho <= 1.0)) throw param_error("rho must be in (0, 1]");
    if (!(p.beta > 0.0 && p.beta < 1.0)) throw param_error("beta must be in (0, 1)");
    Eigen::MatrixXd b = p.rho * (p.beta * Eigen::MatrixXd::Ones(p.k0, p.k0) +
                                 (1.0 - p.beta) * Eigen::MatrixXd::Identity(p.k0, p.k0));
    if ((b.array() > 1.0).any())
        throw param_error("planted connectivity entry exceeds 1");
}

// Multinomial(pi) labels; retries with a bumped sub-seed until every block
// is nonempty (up to 100 attempts).
std::vector<int> planted_labels(std::int64_t n, const std::vector<double>& pi,
                                std::uint64_t seed) {
    const int k = static_cast<int>(pi.size());
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto rng = make_rng(derive_seed(seed, 0x1ab5, attempt));
        std::discrete_distribution<int> block(pi.begin(), pi.end());
        std::vector<int> labels(n);
        std::vector<std::int64_t> sizes(k, 0);
        for (std::int64_t i = 0; i < n; ++i) {
            labels[i] = block(rng);
            ++sizes[labels[i]];
        }
        if (k == 1 || *std::min_element(sizes.begin(), sizes.end()) > 0) return labels;
    }
    throw numeric_error("could not draw labels with every block nonempty after 100 retries");
}

// Unranks t into the (a, b) pair of the strict upper triangle of a c x c
// grid, enumerated row by row: (0,1), (0,2), ..., (1,2), ...
std::pair<std::int64_t, std::int64_t> triangle_unrank(std::int64_t t, std::int64_t c) {
    double cf = static_cast<double>(c);
    std::int64_t a = static_cast<std::int64_t>(
        std::floor(cf - 0.5 - std::sqrt((cf - 0.5) * (cf - 0.5) - 2.0 * static_cast<double>(t))));
    auto row_start = [c](std::int64_t r) { return r * c - r * (r + 1) / 2; };
    while (a > 0 && row_start(a) > t) --a;
    while (row_start(a + 1) <= t) ++a;
    std::int64_t b = a + 1 + (t - row_start(a));
    return {a, b};
}

// Appends Bernoulli(p) successes over `count` linearly indexed trials using
// geometric jumps, so the cost is proportional to the number of successes.
template <typename Emit>
void skip_sample(std::int64_t count, double p, std::mt19937_64& rng, Emit emit) {
    if (count <= 0 || p <= 0.0) return;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (p >= 1.0) {
        for (std::int64_t t = 0; t < count; ++t) emit(t);
        return;
    }
    const double log_q = std::log1p(-p);
    std::int64_t t = -1;
    for (;;) {
        double u = unit(rng);
        double jump = std::floor(std::log1p(-u) / log_q);
        if (jump > static_cast<double>(count)) break;
        t += 1 + static_cast<std::int64_t>(jump);
        if (t >= count) break;
        emit(t);
    }
}

}  // namespace

Eigen::MatrixXd planted_connectivity(const SbmParams& p) {
    validate(p);
    return p.rho * (p.beta * Eigen::MatrixXd::Ones(p.k0, p.k0) +
                    (1.0 - p.beta) * Eigen::MatrixXd::Identity(p.k0, p.k0));
}

std::pair<SparseGraph, GroundTruth> sample_sbm(const SbmParams& p, std::uint64_t seed) {
    validate(p);
    const auto pi = resolve_pi(p);
    const std::int64_t n = p.n_nodes;

    GroundTruth truth;
    truth.b_star = planted_connectivity(p);
    truth.labels = planted_labels(n, pi, seed);

    // Group node ids by block so each block pair is a contiguous grid.
    std::vector<std::vector<int>> members(p.k0);
    for (std::int64_t i = 0; i < n; ++i) members[truth.labels[i]].push_back(static_cast<int>(i));

    auto rng = make_rng(derive_seed(seed, 0xed6e));
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(p.rho * 0.6 * static_cast<double>(n) *
                                           static_cast<double>(n) / 2.0) +
                  64);
    for (int k = 0; k < p.k0; ++k) {
        const auto& mk = members[k];
        const auto ck = static_cast<std::int64_t>(mk.size());
        skip_sample(ck * (ck - 1) / 2, truth.b_star(k, k), rng, [&](std::int64_t t) {
            auto [a, b] = triangle_unrank(t, ck);
            edges.emplace_back(mk[a], mk[b]);
        });
        for (int l = k + 1; l < p.k0; ++l) {
            const auto& ml = members[l];
            const auto cl = static_cast<std::int64_t>(ml.size());
            skip_sample(ck * cl, truth.b_star(k, l), rng, [&](std::int64_t t) {
                edges.emplace_back(mk[t / cl], ml[t % cl]);
            });
        }
    }
    return {SparseGraph::from_edges(n, std::move(edges)), std::move(truth)};
}

std::pair<SparseGraph, GroundTruth> sample_dcsbm(const DcsbmParams& p, std::uint64_t seed) {
    validate(p.base);
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) throw param_error("alpha must be in [0, 1]");
    const auto pi = resolve_pi(p.base);
    const std::int64_t n = p.base.n_nodes;

    GroundTruth truth;
    truth.b_star = planted_connectivity(p.base);
    truth.labels = planted_labels(n, pi, seed);

    // Activeness mixture, then per-block rescaling to the identifiability
    // normalization sum_{i in block k} psi_i = N_k.
    auto rng = make_rng(derive_seed(seed, 0xd5c));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> eta(0.6, 1.4);
    truth.psi_star.resize(n);
    for (std::int64_t i = 0; i < n; ++i) {
        double u = unit(rng);
        if (u < p.alpha)
            truth.psi_star[i] = eta(rng);
        else if (u < p.alpha + (1.0 - p.alpha) / 2.0)
            truth.psi_star[i] = 1.0 / 3.0;
        else
            truth.psi_star[i] = 5.0 / 3.0;
    }
    std::vector<double> block_sum(p.base.k0, 0.0);
    std::vector<std::int64_t> block_size(p.base.k0, 0);
    for (std::int64_t i = 0; i < n; ++i) {
        block_sum[truth.labels[i]] += truth.psi_star[i];
        ++block_size[truth.labels[i]];
    }
    for (std::int64_t i = 0; i < n; ++i) {
        const int k = truth.labels[i];
        truth.psi_star[i] *= static_cast<double>(block_size[k]) / block_sum[k];
    }

    std::vector<std::pair<int, int>> edges;
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = i + 1; j < n; ++j) {
            double prob = truth.psi_star[i] * truth.b_star(truth.labels[i], truth.labels[j]) *
                          truth.psi_star[j];
            if (prob > 1.0) {
                prob = 1.0;
                ++truth.clamped_pairs;
            }
            if (unit(rng) < prob) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    if (static_cast<double>(truth.clamped_pairs) > 0.01 * static_cast<double>(n) *
                                                       static_cast<double>(n - 1) / 2.0)
        throw param_error("more than 1% of pair probabilities exceeded 1; "
                          "lower rho or the psi spread");
    return {SparseGraph::from_edges(n, std::move(edges)), std::move(truth)};
}

std::pair<SparseGraph, GroundTruth> sample_gsbm_with_outliers(const OutlierParams& p,
                                                              std::uint64_t seed) {
    validate(p.base);
    if (p.m < 0) throw param_error("outlier count must be >= 0");
    if (!(p.outlier_p >= 0.0 && p.outlier_p <= 1.0))
        throw param_error("outlier connection probability must be in [0, 1]");

    auto [normal_graph, truth] = sample_sbm(p.base, seed);
    truth.num_outliers = p.m;
    const std::int64_t n = p.base.n_nodes;
    const std::int64_t total = n + p.m;

    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j : normal_graph.neighbors(i))
            if (i < j) edges.emplace_back(i, j);

    auto rng = make_rng(derive_seed(seed, 0x0771));
    // Outlier-outlier block.
    skip_sample(static_cast<std::int64_t>(p.m) * (p.m - 1) / 2, p.outlier_p, rng,
                [&](std::int64_t t) {
                    auto [a, b] = triangle_unrank(t, p.m);
                    edges.emplace_back(static_cast<int>(n + a), static_cast<int>(n + b));
                });
    // Normal-outlier block: column-wise Bernoulli(v_i) with v_i = u_i^2 / 10.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> v(n);
    for (std::int64_t i = 0; i < n; ++i) {
        double u = unit(rng);
        v[i] = u * u / 10.0;
    }
    for (int jo = 0; jo < p.m; ++jo)
        for (std::int64_t i = 0; i < n; ++i)
            if (unit(rng) < v[i]) edges.emplace_back(static_cast<int>(i), static_cast<int>(n + jo));

    return {SparseGraph::from_edges(total, std::move(edges)), std::move(truth)};
}

void write_labels_csv(const GroundTruth& truth, std::int64_t num_nodes,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << "node_id,label\n";
    for (std::int64_t i = 0; i < num_nodes; ++i) {
        if (i < static_cast<std::int64_t>(truth.labels.size()))
            out << i << ',' << truth.labels[i] << '\n';
        else
            out << i << ",-1\n";
    }
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace smbic
