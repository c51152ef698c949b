#ifndef SMBIC_SELECTION_HPP
#define SMBIC_SELECTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smbic/criterion.hpp"
#include "smbic/graph.hpp"
#include "smbic/spectral.hpp"
#include "smbic/subsample.hpp"

namespace smbic {

enum class Model { Sbm, Dcsbm };

std::string model_name(Model m);
Model model_from_name(const std::string& name);

/// How the subsample size is chosen: an explicit n wins; otherwise the
/// size rule with zeta and either a known density or the graph estimate.
struct SubsampleRule {
    std::optional<std::int64_t> explicit_n;
    double zeta = 1.5;
    std::optional<double> rho;
};

struct SelectionConfig {
    int k_max = 10;
    Model model = Model::Sbm;
    SpectralConfig spectral;
    std::uint64_t seed = 0;
    SubsampleRule subsample;
    int threads = 0;  // 0 = hardware concurrency
    bool include_psi_log_term = true;
};

struct StageTimings {
    double subsample_seconds = 0.0;
    double assignment_seconds = 0.0;
    double scoring_seconds = 0.0;
    double total_seconds = 0.0;
};

struct SelectionReport {
    std::vector<FitResult> per_k;
    int k_hat = 0;
    StageTimings timings;
    SelectionConfig config;
    std::int64_t total_nodes = 0;
    std::int64_t subsample_size = 0;
    std::int64_t pair_count = 0;
    std::vector<int> subsample_indices;
    std::vector<std::string> flags;
};

/// Subsamples once, then scores every candidate K in [1, k_max] on the
/// same sub-adjacency and returns the argmax.
SelectionReport select_k(const SparseGraph& g, const SelectionConfig& cfg);

/// Same loop over a prebuilt sub-adjacency.
SelectionReport select_k_from_subsample(const SubAdjacency& a, const SelectionConfig& cfg);

}  // namespace smbic

#endif
