#ifndef SMBIC_SPECTRAL_HPP
#define SMBIC_SPECTRAL_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <utility>
#include <vector>

#include "smbic/subsample.hpp"

namespace smbic {

struct SvdConfig {
    int oversampling = 10;
    int power_iters = 2;
    std::uint64_t seed = 0;
};

struct KmeansConfig {
    int restarts = 10;
    int max_iters = 100;
    double tol = 1e-6;
    std::uint64_t seed = 0;
};

/// Spectral pipeline knobs used by the clustering front-ends; per-stage
/// seeds are derived from the seed passed to the operation.
struct SpectralConfig {
    int oversampling = 10;
    int power_iters = 2;
    int restarts = 10;
    int max_iters = 100;
    double tol = 1e-6;
};

/// Top-K left singular subspace. Columns of `v` are orthonormal; `sigma`
/// is non-increasing. `rank_deficient` marks zero-padded directions.
struct Embedding {
    Eigen::MatrixXd v;       // N x K
    Eigen::VectorXd sigma;   // K
    int k = 0;
    bool rank_deficient = false;
};

struct Labeling {
    std::vector<int> labels;
    int k = 0;
    int nonempty_clusters = 0;
};

/// Row norms of the embedding; the DCSBM activeness plug-in.
struct DegreeEstimates {
    Eigen::VectorXd psi_hat;
    int zero_rows = 0;
};

Embedding truncated_svd(const Eigen::SparseMatrix<double>& a, int k, const SvdConfig& cfg);
Embedding truncated_svd(const SubAdjacency& a, int k, const SvdConfig& cfg);

/// Lloyd iterations from the best of `restarts` k-means++ seedings.
Labeling kmeans(const Eigen::MatrixXd& points, int k, const KmeansConfig& cfg);

Labeling spectral_cluster_sbm(const SubAdjacency& a, int k, const SpectralConfig& cfg,
                              std::uint64_t seed);

/// Spherical variant: k-means on unit-normalized embedding rows. Zero rows
/// get psi_hat 0 and are attached to the largest cluster.
std::pair<Labeling, DegreeEstimates> spectral_cluster_dcsbm(const SubAdjacency& a, int k,
                                                            const SpectralConfig& cfg,
                                                            std::uint64_t seed);

/// Extends selected-node labels to all nodes: each unselected node joins the
/// cluster holding most of its selected neighbors (ties toward the smaller
/// index; nodes with no selected neighbor get label 0).
Labeling assign_by_majority_link(const SubAdjacency& a, const std::vector<int>& g_n, int k);

}  // namespace smbic

#endif
