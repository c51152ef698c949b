#ifndef SMBIC_SYNTH_HPP
#define SMBIC_SYNTH_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "smbic/graph.hpp"

namespace smbic {

/// Planted-partition parameters. B* = rho * (beta 11^T + (1-beta) I);
/// an empty `pi` means uniform block proportions.
struct SbmParams {
    int k0 = 2;
    std::int64_t n_nodes = 0;
    double rho = 0.0;
    double beta = 0.15;
    std::vector<double> pi;
};

/// SBM plus the three-component activeness mixture: eta ~ U[3/5, 7/5] with
/// probability alpha, else 1/3 or 5/3 with equal probability.
struct DcsbmParams {
    SbmParams base;
    double alpha = 0.5;
};

/// SBM block of N normal nodes plus m outliers: outlier-outlier edges are
/// Bernoulli(outlier_p) and normal-outlier columns share Bernoulli(u_i^2/10).
struct OutlierParams {
    SbmParams base;
    int m = 0;
    double outlier_p = 0.1;
};

/// Planted structure attached to a synthetic graph. For outlier graphs the
/// labels cover only the first `labels.size()` normal nodes.
struct GroundTruth {
    std::vector<int> labels;
    Eigen::MatrixXd b_star;
    std::vector<double> psi_star;  // empty for plain SBM
    int num_outliers = 0;
    std::int64_t clamped_pairs = 0;  // DCSBM probabilities clipped at 1
};

/// The planted connectivity matrix of `p` (validated).
Eigen::MatrixXd planted_connectivity(const SbmParams& p);

std::pair<SparseGraph, GroundTruth> sample_sbm(const SbmParams& p, std::uint64_t seed);
std::pair<SparseGraph, GroundTruth> sample_dcsbm(const DcsbmParams& p, std::uint64_t seed);
std::pair<SparseGraph, GroundTruth> sample_gsbm_with_outliers(const OutlierParams& p,
                                                              std::uint64_t seed);

/// node_id,label per line with a header; outliers (if any) get label -1.
void write_labels_csv(const GroundTruth& truth, std::int64_t num_nodes,
                      const std::string& path);

}  // namespace smbic

#endif
