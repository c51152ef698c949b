#ifndef SMBIC_TESTS_ORACLE_HPP
#define SMBIC_TESTS_ORACLE_HPP

// Brute-force reference implementations for tests. Everything here
// recomputes quantities pair by pair from dense storage and must stay
// independent of the count-based code paths it checks.

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "smbic/spectral.hpp"

namespace smbic::oracle {

struct TinyInstance {
    Eigen::MatrixXd adjacency;  // N x N symmetric 0/1, zero diagonal
    std::vector<int> selected;  // sorted node subset
    std::vector<int> labels;    // length N, values in [0, k)
    Eigen::MatrixXd b;          // k x k symmetric
    Eigen::VectorXd psi;        // length N, unused by the Bernoulli model
    int k = 1;

    std::int64_t pair_count() const;
};

enum class PairModel { Bernoulli, Poisson };

/// Sum of per-pair log terms over the independent pair set.
double brute_force_loglik(const TinyInstance& t, PairModel model);

/// Enumerates all K^n selected-node labelings, extends each by majority
/// link, and returns the best profile Bernoulli log-likelihood.
std::pair<std::vector<int>, double> exhaustive_best_selected_labeling(const TinyInstance& t,
                                                                      int k);

/// Exact top-K singular triplets by full dense decomposition.
smbic::Embedding dense_svd_reference(const Eigen::MatrixXd& m, int k);

/// Largest principal angle (radians) between the column spans of two
/// orthonormal matrices.
double max_principal_angle(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v);

/// Random TinyInstance generator for the equivalence suites.
TinyInstance random_instance(std::uint64_t seed, int max_nodes = 20, int max_k = 4,
                             bool poisson_psi = false);

}  // namespace smbic::oracle

#endif
