#include "smbic/json_io.hpp"

#include <fstream>

#include "smbic/errors.hpp"

namespace smbic {

namespace {

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

nlohmann::json to_json(const FitResult& fit) {
    nlohmann::json j;
    j["k"] = fit.k;
    j["labels"] = fit.labels.labels;
    j["nonempty_clusters"] = fit.labels.nonempty_clusters;
    j["b_hat"] = matrix_json(fit.b_hat);
    if (fit.psi_hat) {
        nlohmann::json psi = nlohmann::json::array();
        for (Eigen::Index i = 0; i < fit.psi_hat->size(); ++i) psi.push_back((*fit.psi_hat)[i]);
        j["psi_hat"] = std::move(psi);
    }
    j["loglik"] = fit.loglik;
    j["penalty"] = fit.pen;
    j["score"] = fit.score;
    j["subadjacency_hash"] = fit.subadjacency_hash;
    j["flags"] = fit.flags;
    return j;
}

nlohmann::json to_json(const SelectionConfig& cfg) {
    nlohmann::json j;
    j["k_max"] = cfg.k_max;
    j["model"] = model_name(cfg.model);
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["include_psi_log_term"] = cfg.include_psi_log_term;
    j["spectral"] = {{"oversampling", cfg.spectral.oversampling},
                     {"power_iters", cfg.spectral.power_iters},
                     {"restarts", cfg.spectral.restarts},
                     {"max_iters", cfg.spectral.max_iters},
                     {"tol", cfg.spectral.tol}};
    nlohmann::json sub;
    if (cfg.subsample.explicit_n) sub["n"] = *cfg.subsample.explicit_n;
    sub["zeta"] = cfg.subsample.zeta;
    if (cfg.subsample.rho) sub["rho"] = *cfg.subsample.rho;
    j["subsample"] = std::move(sub);
    return j;
}

nlohmann::json to_json(const SelectionReport& report) {
    nlohmann::json j;
    j["k_hat"] = report.k_hat;
    j["total_nodes"] = report.total_nodes;
    j["subsample_size"] = report.subsample_size;
    j["pair_count"] = report.pair_count;
    j["subsample_indices"] = report.subsample_indices;
    j["config"] = to_json(report.config);
    nlohmann::json per_k = nlohmann::json::array();
    for (const FitResult& fit : report.per_k) per_k.push_back(to_json(fit));
    j["per_k"] = std::move(per_k);
    j["timings"] = {{"subsample_seconds", report.timings.subsample_seconds},
                    {"assignment_seconds", report.timings.assignment_seconds},
                    {"scoring_seconds", report.timings.scoring_seconds},
                    {"total_seconds", report.timings.total_seconds}};
    j["flags"] = report.flags;
    return j;
}

nlohmann::json to_json(const BenchRow& row) {
    nlohmann::json j;
    j["generator"] = row.generator;
    j["k0"] = row.k0;
    j["n_nodes"] = row.n_nodes;
    j["rho_rule"] = row.rho_rule;
    j["zeta"] = row.zeta;
    if (row.alpha) j["alpha"] = *row.alpha;
    if (row.m) j["m"] = *row.m;
    j["replicates"] = row.replicates;
    if (row.failed) {
        j["failed"] = true;
        j["error"] = row.error;
    } else {
        j["prob"] = row.prob;
        j["mean_k"] = row.mean_k;
        j["cpu_seconds"] = row.cpu_seconds;
    }
    return j;
}

nlohmann::json to_json(const std::vector<BenchRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BenchRow& r : rows) arr.push_back(to_json(r));
    return arr;
}

nlohmann::json params_json(const SbmParams& p) {
    nlohmann::json j;
    j["k0"] = p.k0;
    j["n_nodes"] = p.n_nodes;
    j["rho"] = p.rho;
    j["beta"] = p.beta;
    if (!p.pi.empty()) j["pi"] = p.pi;
    return j;
}

void write_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace smbic
