#ifndef SMBIC_CRITERION_HPP
#define SMBIC_CRITERION_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smbic/spectral.hpp"
#include "smbic/subsample.hpp"

namespace smbic {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Probability clamp keeping plug-in estimates away from {0, 1}.
inline constexpr double kProbEps = 1e-9;

/// Observed edges o_kl and maximum possible pairs n_kl over the independent
/// pair set E, both stored symmetrically.
struct PairCounts {
    CountMatrix o;
    CountMatrix n_pairs;
    int k = 0;
    std::int64_t pair_count = 0;  // M
};

/// psi-weighted pair sums and the edge log-weight total of the Poisson
/// likelihood.
struct WeightedPairCounts {
    Eigen::MatrixXd n_psi;
    double log_psi_edge_sum = 0.0;
    std::int64_t zero_weight_edges = 0;  // edges whose psi_i*psi_j is zero
};

/// One candidate K fitted and scored. `subadjacency_hash` records which
/// sub-adjacency the fit saw; every fit of one report must agree.
struct FitResult {
    int k = 0;
    Labeling labels;
    Eigen::MatrixXd b_hat;
    std::optional<Eigen::VectorXd> psi_hat;
    double loglik = 0.0;
    double pen = 0.0;
    double score = 0.0;
    std::uint64_t subadjacency_hash = 0;
    std::vector<std::string> flags;
};

/// FNV-1a over the dimensions and stored pattern of A^S.
std::uint64_t hash_subadjacency(const SubAdjacency& a);

PairCounts count_statistics(const SubAdjacency& a, const Labeling& labels);

WeightedPairCounts weighted_pair_counts(const SubAdjacency& a, const Labeling& labels,
                                        const Eigen::VectorXd& psi);

/// Bernoulli plug-in B_kl = o_kl / n_kl, clamped into [eps, 1-eps].
Eigen::MatrixXd estimate_b_sbm(const PairCounts& c, std::vector<std::string>* flags = nullptr);

/// Poisson-rate plug-in B_kl = o_kl / n_psi_kl, floored at eps.
Eigen::MatrixXd estimate_b_dcsbm(const PairCounts& c, const WeightedPairCounts& w,
                                 std::vector<std::string>* flags = nullptr);

double loglik_bernoulli(const PairCounts& c, const Eigen::MatrixXd& b);

/// Poisson log-likelihood; set include_psi_log_term=false to drop the
/// sum of A_ij log(psi_i psi_j) from the result.
double loglik_poisson(const PairCounts& c, const WeightedPairCounts& w,
                      const Eigen::MatrixXd& b, bool include_psi_log_term = true);

/// Model complexity term: n ln K + K(K+1)/4 ln M.
double penalty(std::int64_t n, int k, std::int64_t m);

double smbic_score(double loglik, double pen);

}  // namespace smbic

#endif
