#include "smbic/selection.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "smbic/errors.hpp"
#include "smbic/parallel.hpp"
#include "smbic/rng.hpp"

namespace smbic {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

FitResult fit_candidate(const SubAdjacency& a, int k, const SelectionConfig& cfg,
                        double* assignment_seconds) {
    const std::uint64_t seed_k = derive_seed(cfg.seed, static_cast<std::uint64_t>(k));
    FitResult fit;
    fit.k = k;

    auto t0 = Clock::now();
    DegreeEstimates deg;
    if (cfg.model == Model::Sbm) {
        fit.labels = spectral_cluster_sbm(a, k, cfg.spectral, seed_k);
    } else {
        auto [labels, estimates] = spectral_cluster_dcsbm(a, k, cfg.spectral, seed_k);
        fit.labels = std::move(labels);
        deg = std::move(estimates);
        fit.psi_hat = deg.psi_hat;
        if (deg.zero_rows > 0)
            fit.flags.push_back("zero_embedding_rows=" + std::to_string(deg.zero_rows));
    }
    if (assignment_seconds) *assignment_seconds = seconds_since(t0);

    if (fit.labels.nonempty_clusters < k)
        fit.flags.push_back("empty_clusters=" + std::to_string(k - fit.labels.nonempty_clusters));

    PairCounts counts = count_statistics(a, fit.labels);
    if (cfg.model == Model::Sbm) {
        fit.b_hat = estimate_b_sbm(counts, &fit.flags);
        fit.loglik = loglik_bernoulli(counts, fit.b_hat);
    } else {
        WeightedPairCounts weighted = weighted_pair_counts(a, fit.labels, deg.psi_hat);
        if (weighted.zero_weight_edges > 0)
            fit.flags.push_back("zero_weight_edges=" + std::to_string(weighted.zero_weight_edges));
        fit.b_hat = estimate_b_dcsbm(counts, weighted, &fit.flags);
        fit.loglik = loglik_poisson(counts, weighted, fit.b_hat, cfg.include_psi_log_term);
    }
    fit.pen = penalty(a.subsample_size(), k, a.pair_count);
    fit.score = smbic_score(fit.loglik, fit.pen);
    fit.subadjacency_hash = hash_subadjacency(a);
    return fit;
}

}  // namespace

std::string model_name(Model m) { return m == Model::Sbm ? "sbm" : "dcsbm"; }

Model model_from_name(const std::string& name) {
    if (name == "sbm") return Model::Sbm;
    if (name == "dcsbm") return Model::Dcsbm;
    throw param_error("unknown model '" + name + "' (expected sbm or dcsbm)");
}

SelectionReport select_k_from_subsample(const SubAdjacency& a, const SelectionConfig& cfg) {
    const int k_max = cfg.k_max;
    const std::int64_t n = a.subsample_size();
    if (k_max < 1) throw param_error("K_max must be >= 1");
    if (n < k_max)
        throw param_error("subsample size n=" + std::to_string(n) +
                          " is smaller than K_max=" + std::to_string(k_max));

    auto t_total = Clock::now();
    SelectionReport report;
    report.config = cfg;
    report.total_nodes = a.total_nodes;
    report.subsample_size = n;
    report.pair_count = a.pair_count;
    report.subsample_indices = a.nodes.selected;
    report.per_k.resize(k_max);

    std::vector<double> assign_seconds(k_max, 0.0);
    parallel_for_index(k_max, cfg.threads, [&](std::int64_t idx) {
        const int k = static_cast<int>(idx) + 1;
        try {
            report.per_k[idx] = fit_candidate(a, k, cfg, &assign_seconds[idx]);
        } catch (const std::exception& e) {
            FitResult failed;
            failed.k = k;
            failed.score = -std::numeric_limits<double>::infinity();
            failed.loglik = -std::numeric_limits<double>::infinity();
            failed.flags.push_back(std::string("fit_error: ") + e.what());
            report.per_k[idx] = std::move(failed);
        }
    });

    double best = -std::numeric_limits<double>::infinity();
    int k_hat = 0;
    for (const FitResult& fit : report.per_k) {
        for (const std::string& f : fit.flags)
            report.flags.push_back("K=" + std::to_string(fit.k) + ": " + f);
        if (std::isfinite(fit.score) && fit.score > best) {
            best = fit.score;
            k_hat = fit.k;
        }
    }
    if (k_hat == 0) throw numeric_error("every candidate K failed to fit");
    report.k_hat = k_hat;

    for (double s : assign_seconds) report.timings.assignment_seconds += s;
    report.timings.total_seconds = seconds_since(t_total);
    report.timings.scoring_seconds =
        std::max(0.0, report.timings.total_seconds - report.timings.assignment_seconds);
    return report;
}

SelectionReport select_k(const SparseGraph& g, const SelectionConfig& cfg) {
    auto t0 = Clock::now();
    std::int64_t n;
    if (cfg.subsample.explicit_n) {
        n = *cfg.subsample.explicit_n;
    } else {
        double rho = cfg.subsample.rho ? *cfg.subsample.rho : degree_stats(g).density_hat;
        if (rho == 0.0) throw numeric_error("density estimate is zero");
        n = recommended_subsample_size(g.num_nodes(), rho, cfg.subsample.zeta);
    }
    NodeSet nodes = sample_nodes(g.num_nodes(), n, derive_seed(cfg.seed, 0x5ab5u));
    SubAdjacency sub = extract_subadjacency(g, nodes);
    double subsample_seconds = seconds_since(t0);

    SelectionReport report = select_k_from_subsample(sub, cfg);
    report.timings.subsample_seconds = subsample_seconds;
    report.timings.total_seconds += subsample_seconds;
    return report;
}

}  // namespace smbic
