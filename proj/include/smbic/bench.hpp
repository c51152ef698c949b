#ifndef SMBIC_BENCH_HPP
#define SMBIC_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smbic/selection.hpp"

namespace smbic {

/// A density (or size) rule of the form coeff * N^exponent, written as
/// "0.02", "n^-0.5", or "0.5*n^-0.5".
struct ScaleRule {
    double coeff = 1.0;
    double exponent = 0.0;

    double value(std::int64_t n_nodes) const;
    std::string str() const;
    static ScaleRule parse(const std::string& text);
};

/// A Monte-Carlo experiment over the cartesian grid of the list-valued
/// fields. Empty alpha/outliers lists mean "not applicable".
struct ExperimentSpec {
    std::string generator = "sbm";  // sbm | dcsbm | gsbm
    Model model = Model::Sbm;
    std::vector<int> k0;
    std::vector<std::int64_t> n_nodes;
    std::vector<ScaleRule> rho;
    double beta = 0.15;
    std::vector<double> zeta;
    std::optional<ScaleRule> subsample_rho;  // density used in the n rule; default rho
    std::vector<double> alpha;
    std::vector<int> outliers;
    double outlier_p = 0.1;
    int replicates = 100;
    std::uint64_t seed = 1;
    int k_max = 10;
    int threads = 0;

    void validate() const;
};

struct BenchRow {
    std::string generator;
    int k0 = 0;
    std::int64_t n_nodes = 0;
    std::string rho_rule;
    double zeta = 0.0;
    std::optional<double> alpha;
    std::optional<int> m;
    int replicates = 0;
    double prob = 0.0;
    double mean_k = 0.0;
    double cpu_seconds = 0.0;
    bool failed = false;
    std::string error;
};

/// Correct-identification probability and mean selected K.
std::pair<double, double> metrics(const std::vector<int>& k_hats, int k0);

std::vector<BenchRow> run_experiment(const ExperimentSpec& spec);

/// Parses the flat key=value spec format ('#' comments, [section] headers).
ExperimentSpec load_experiment_spec(const std::string& path);

void write_bench_csv(const std::vector<BenchRow>& rows, const std::string& path);
std::string bench_rows_to_csv(const std::vector<BenchRow>& rows);

struct ScalingRow {
    std::int64_t n_nodes = 0;
    double mean_seconds = 0.0;
};

struct ScalingResult {
    std::vector<ScalingRow> rows;
    std::optional<double> loglog_slope;  // absent with fewer than two sizes
};

/// Times the selection stage at fixed subsample size across network sizes
/// and fits a log-log slope.
ScalingResult scaling_probe(const std::vector<std::int64_t>& n_grid, std::int64_t subsample_n,
                            int reps, Model model = Model::Sbm, std::uint64_t seed = 1,
                            int k_max = 10);

}  // namespace smbic

#endif
