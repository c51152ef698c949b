#include "smbic/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "smbic/errors.hpp"
#include "smbic/rng.hpp"

namespace smbic {

namespace {

Eigen::MatrixXd gaussian_matrix(std::int64_t rows, std::int64_t cols, std::uint64_t seed) {
    Eigen::MatrixXd m(rows, cols);
    auto rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::int64_t c = 0; c < cols; ++c)
        for (std::int64_t r = 0; r < rows; ++r) m(r, c) = normal(rng);
    return m;
}

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& y) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

}  // namespace

Embedding truncated_svd(const Eigen::SparseMatrix<double>& a, int k, const SvdConfig& cfg) {
    const std::int64_t rows = a.rows();
    const std::int64_t cols = a.cols();
    if (k < 1 || k > cols)
        throw param_error("SVD rank must satisfy 1 <= K <= n, got K=" + std::to_string(k));

    const int sketch = static_cast<int>(std::min<std::int64_t>(
        cols, static_cast<std::int64_t>(k) + std::max(0, cfg.oversampling)));

    // Randomized range finder with power iterations; re-orthonormalize
    // between passes to keep the sketch well conditioned.
    Eigen::MatrixXd q = thin_q(a * gaussian_matrix(cols, sketch, cfg.seed));
    for (int it = 0; it < cfg.power_iters; ++it) {
        q = thin_q(a.transpose() * q);
        q = thin_q(a * q);
    }

    Eigen::MatrixXd b = q.transpose() * a;  // sketch x cols
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);

    Embedding e;
    e.k = k;
    e.v = q * svd.matrixU().leftCols(k);
    e.sigma = svd.singularValues().head(k);

    const double tiny = std::max(rows, cols) * std::numeric_limits<double>::epsilon() *
                        std::max(e.sigma[0], 1.0);
    for (int j = 0; j < k; ++j) {
        if (e.sigma[j] <= tiny) {
            e.sigma[j] = 0.0;
            e.rank_deficient = true;
        }
    }
    return e;
}

Embedding truncated_svd(const SubAdjacency& a, int k, const SvdConfig& cfg) {
    return truncated_svd(a.matrix, k, cfg);
}

namespace {

// Seeds `centers` (k x d) with k-means++ from the rows of `points`.
void kmeanspp_init(const Eigen::MatrixXd& points, Eigen::MatrixXd& centers,
                   std::mt19937_64& rng) {
    const std::int64_t n = points.rows();
    const int k = static_cast<int>(centers.rows());
    std::uniform_int_distribution<std::int64_t> uniform_node(0, n - 1);
    centers.row(0) = points.row(uniform_node(rng));

    Eigen::VectorXd dist2 =
        (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int c = 1; c < k; ++c) {
        double total = dist2.sum();
        std::int64_t pick;
        if (total <= 0.0) {
            pick = uniform_node(rng);
        } else {
            double target = unit(rng) * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::int64_t i = 0; i < n; ++i) {
                acc += dist2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        }
        centers.row(c) = points.row(pick);
        dist2 = dist2.cwiseMin(
            (points.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }
}

struct LloydResult {
    std::vector<int> labels;
    double wcss = std::numeric_limits<double>::infinity();
};

LloydResult lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centers,
                  const KmeansConfig& cfg) {
    const std::int64_t n = points.rows();
    const int k = static_cast<int>(centers.rows());
    const Eigen::VectorXd row_norm2 = points.rowwise().squaredNorm();

    LloydResult res;
    res.labels.assign(n, 0);
    Eigen::MatrixXd next(k, points.cols());
    Eigen::VectorXd counts(k);

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        // argmin_k ||x - c_k||^2 = argmin_k (||c_k||^2 - 2 x.c_k)
        Eigen::MatrixXd cross = points * centers.transpose();  // n x k
        Eigen::VectorXd cnorm2 = centers.rowwise().squaredNorm();
        for (std::int64_t i = 0; i < n; ++i) {
            int best = 0;
            double best_val = cnorm2[0] - 2.0 * cross(i, 0);
            for (int c = 1; c < k; ++c) {
                double val = cnorm2[c] - 2.0 * cross(i, c);
                if (val < best_val) {
                    best_val = val;
                    best = c;
                }
            }
            res.labels[i] = best;
        }

        next.setZero();
        counts.setZero();
        for (std::int64_t i = 0; i < n; ++i) {
            next.row(res.labels[i]) += points.row(i);
            counts[res.labels[i]] += 1.0;
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0.0) {
                next.row(c) /= counts[c];
            } else {
                // Re-seed an emptied cluster at the point farthest from its
                // stale center.
                Eigen::VectorXd d2 =
                    (points.rowwise() - centers.row(c)).rowwise().squaredNorm();
                Eigen::Index far;
                d2.maxCoeff(&far);
                next.row(c) = points.row(far);
            }
        }
        double shift = (next - centers).rowwise().norm().maxCoeff();
        centers = next;
        if (shift < cfg.tol) break;
    }

    // Final assignment against the converged centers.
    Eigen::MatrixXd cross = points * centers.transpose();
    Eigen::VectorXd cnorm2 = centers.rowwise().squaredNorm();
    res.wcss = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        int best = 0;
        double best_val = cnorm2[0] - 2.0 * cross(i, 0);
        for (int c = 1; c < k; ++c) {
            double val = cnorm2[c] - 2.0 * cross(i, c);
            if (val < best_val) {
                best_val = val;
                best = c;
            }
        }
        res.labels[i] = best;
        res.wcss += row_norm2[i] + best_val;
    }
    return res;
}

}  // namespace

Labeling kmeans(const Eigen::MatrixXd& points, int k, const KmeansConfig& cfg) {
    const std::int64_t n = points.rows();
    if (k < 1) throw param_error("kmeans needs K >= 1");
    if (n < k) throw param_error("kmeans needs at least K points");

    LloydResult best;
    auto rng = make_rng(cfg.seed);
    for (int r = 0; r < std::max(1, cfg.restarts); ++r) {
        Eigen::MatrixXd centers(k, points.cols());
        kmeanspp_init(points, centers, rng);
        LloydResult run = lloyd(points, std::move(centers), cfg);
        if (run.wcss < best.wcss) best = std::move(run);
    }

    Labeling out;
    out.k = k;
    out.labels = std::move(best.labels);
    std::vector<char> seen(k, 0);
    for (int l : out.labels) seen[l] = 1;
    out.nonempty_clusters = static_cast<int>(std::count(seen.begin(), seen.end(), 1));
    return out;
}

Labeling spectral_cluster_sbm(const SubAdjacency& a, int k, const SpectralConfig& cfg,
                              std::uint64_t seed) {
    SvdConfig svd_cfg{cfg.oversampling, cfg.power_iters, derive_seed(seed, 0x5fd)};
    Embedding e = truncated_svd(a, k, svd_cfg);
    KmeansConfig km{cfg.restarts, cfg.max_iters, cfg.tol, derive_seed(seed, 0x6a3)};
    return kmeans(e.v, k, km);
}

std::pair<Labeling, DegreeEstimates> spectral_cluster_dcsbm(const SubAdjacency& a, int k,
                                                            const SpectralConfig& cfg,
                                                            std::uint64_t seed) {
    SvdConfig svd_cfg{cfg.oversampling, cfg.power_iters, derive_seed(seed, 0x5fd)};
    Embedding e = truncated_svd(a, k, svd_cfg);

    DegreeEstimates deg;
    deg.psi_hat = e.v.rowwise().norm();
    const std::int64_t n = e.v.rows();

    std::vector<std::int64_t> nonzero;
    nonzero.reserve(n);
    for (std::int64_t i = 0; i < n; ++i)
        if (deg.psi_hat[i] > 0.0) nonzero.push_back(i);
    deg.zero_rows = static_cast<int>(n - static_cast<std::int64_t>(nonzero.size()));

    Labeling out;
    out.k = k;
    out.labels.assign(n, 0);
    if (static_cast<std::int64_t>(nonzero.size()) < k) {
        // Too few usable rows to form K clusters; everything stays at 0.
        out.nonempty_clusters = n > 0 ? 1 : 0;
        return {out, deg};
    }

    Eigen::MatrixXd tilde(nonzero.size(), k);
    for (std::size_t r = 0; r < nonzero.size(); ++r)
        tilde.row(r) = e.v.row(nonzero[r]) / deg.psi_hat[nonzero[r]];

    KmeansConfig km{cfg.restarts, cfg.max_iters, cfg.tol, derive_seed(seed, 0x6a3)};
    Labeling dense = kmeans(tilde, k, km);

    std::vector<std::int64_t> sizes(k, 0);
    for (int l : dense.labels) ++sizes[l];
    int largest = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

    out.labels.assign(n, largest);
    for (std::size_t r = 0; r < nonzero.size(); ++r)
        out.labels[nonzero[r]] = dense.labels[r];
    out.nonempty_clusters = dense.nonempty_clusters;
    return {out, deg};
}

Labeling assign_by_majority_link(const SubAdjacency& a, const std::vector<int>& g_n, int k) {
    const std::int64_t n_total = a.total_nodes;
    const int n_sel = a.subsample_size();
    if (static_cast<int>(g_n.size()) != n_sel)
        throw param_error("selected-node labeling has wrong length");
    for (int l : g_n)
        if (l < 0 || l >= k) throw param_error("selected-node label out of range");

    // counts(i, c): links from node i into cluster c over selected nodes.
    Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic> counts =
        Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(n_total, k);
    for (int col = 0; col < n_sel; ++col) {
        const int cluster = g_n[col];
        for (Eigen::SparseMatrix<double>::InnerIterator it(a.matrix, col); it; ++it)
            counts(it.row(), cluster) += 1;
    }

    Labeling out;
    out.k = k;
    out.labels.assign(n_total, 0);
    for (int col = 0; col < n_sel; ++col) out.labels[a.nodes.selected[col]] = g_n[col];
    for (std::int64_t i = 0; i < n_total; ++i) {
        if (a.nodes.contains(static_cast<int>(i))) continue;
        int best = 0;
        std::int32_t best_links = counts(i, 0);
        for (int c = 1; c < k; ++c) {
            if (counts(i, c) > best_links) {
                best_links = counts(i, c);
                best = c;
            }
        }
        out.labels[i] = best;  // zero-link rows fall through to label 0
    }
    std::vector<char> seen(k, 0);
    for (int l : out.labels) seen[l] = 1;
    out.nonempty_clusters = static_cast<int>(std::count(seen.begin(), seen.end(), 1));
    return out;
}

}  // namespace smbic
