#include "smbic/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "smbic/errors.hpp"
#include "smbic/parallel.hpp"
#include "smbic/rng.hpp"
#include "smbic/synth.hpp"

namespace smbic {

double ScaleRule::value(std::int64_t n_nodes) const {
    return coeff * std::pow(static_cast<double>(n_nodes), exponent);
}

std::string ScaleRule::str() const {
    std::ostringstream out;
    if (exponent == 0.0) {
        out << coeff;
    } else if (coeff == 1.0) {
        out << "n^" << exponent;
    } else {
        out << coeff << "*n^" << exponent;
    }
    return out.str();
}

namespace {

double parse_double(const std::string& text) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw param_error("trailing characters in number: " + text);
        return v;
    } catch (const std::invalid_argument&) {
        throw param_error("not a number: '" + text + "'");
    } catch (const std::out_of_range&) {
        throw param_error("number out of range: '" + text + "'");
    }
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ScaleRule ScaleRule::parse(const std::string& text) {
    std::string t = strip(text);
    std::string compact;
    for (char c : t)
        if (c != ' ') compact += c;
    if (compact.empty()) throw param_error("empty density rule");

    ScaleRule rule;
    std::string power_part = compact;
    auto star = compact.find('*');
    if (star != std::string::npos) {
        rule.coeff = parse_double(compact.substr(0, star));
        power_part = compact.substr(star + 1);
    }
    if (power_part.starts_with("n")) {
        if (power_part == "n") {
            rule.exponent = 1.0;
        } else if (power_part.size() > 2 && power_part[1] == '^') {
            rule.exponent = parse_double(power_part.substr(2));
        } else {
            throw param_error("cannot parse density rule: '" + text + "'");
        }
    } else {
        if (star != std::string::npos)
            throw param_error("cannot parse density rule: '" + text + "'");
        rule.coeff = parse_double(power_part);
        rule.exponent = 0.0;
    }
    return rule;
}

void ExperimentSpec::validate() const {
    if (generator != "sbm" && generator != "dcsbm" && generator != "gsbm")
        throw param_error("generator must be sbm, dcsbm, or gsbm");
    if (k0.empty() || n_nodes.empty() || rho.empty() || zeta.empty())
        throw param_error("k0, n_nodes, rho, and zeta grids must be nonempty");
    if (generator == "dcsbm" && alpha.empty())
        throw param_error("dcsbm experiments need an alpha grid");
    if (generator == "gsbm" && outliers.empty())
        throw param_error("gsbm experiments need an outliers grid");
    if (replicates < 1) throw param_error("replicates must be >= 1");
    if (k_max < 1) throw param_error("k_max must be >= 1");
}

std::pair<double, double> metrics(const std::vector<int>& k_hats, int k0) {
    if (k_hats.empty()) throw param_error("metrics over an empty replicate set");
    double hits = 0.0, sum = 0.0;
    for (int k : k_hats) {
        if (k == k0) hits += 1.0;
        sum += k;
    }
    const double t = static_cast<double>(k_hats.size());
    return {hits / t, sum / t};
}

namespace {

struct GridPoint {
    int k0;
    std::int64_t n_nodes;
    ScaleRule rho;
    double zeta;
    std::optional<double> alpha;
    std::optional<int> m;
};

std::vector<GridPoint> expand_grid(const ExperimentSpec& spec) {
    std::vector<std::optional<double>> alphas;
    if (spec.generator == "dcsbm")
        for (double a : spec.alpha) alphas.emplace_back(a);
    else
        alphas.emplace_back(std::nullopt);
    std::vector<std::optional<int>> ms;
    if (spec.generator == "gsbm")
        for (int m : spec.outliers) ms.emplace_back(m);
    else
        ms.emplace_back(std::nullopt);

    std::vector<GridPoint> grid;
    for (int k0 : spec.k0)
        for (std::int64_t n : spec.n_nodes)
            for (const ScaleRule& r : spec.rho)
                for (double z : spec.zeta)
                    for (const auto& a : alphas)
                        for (const auto& m : ms)
                            grid.push_back({k0, n, r, z, a, m});
    return grid;
}

using Clock = std::chrono::steady_clock;

}  // namespace

std::vector<BenchRow> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const auto grid = expand_grid(spec);
    std::vector<BenchRow> rows;
    rows.reserve(grid.size());

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const GridPoint& pt = grid[gi];
        BenchRow row;
        row.generator = spec.generator;
        row.k0 = pt.k0;
        row.n_nodes = pt.n_nodes;
        row.rho_rule = pt.rho.str();
        row.zeta = pt.zeta;
        row.alpha = pt.alpha;
        row.m = pt.m;
        row.replicates = spec.replicates;

        const double rho_gen = pt.rho.value(pt.n_nodes);
        const double rho_size =
            spec.subsample_rho ? spec.subsample_rho->value(pt.n_nodes) : rho_gen;

        std::vector<int> k_hats(spec.replicates, 0);
        std::vector<double> cpu(spec.replicates, 0.0);
        std::vector<std::string> errors(spec.replicates);

        parallel_for_index(spec.replicates, spec.threads, [&](std::int64_t t) {
            try {
                const std::uint64_t rep_seed = derive_seed(spec.seed, gi, t);
                SbmParams base{pt.k0, pt.n_nodes, rho_gen, spec.beta, {}};
                SparseGraph graph = [&] {
                    if (spec.generator == "dcsbm")
                        return sample_dcsbm({base, *pt.alpha}, rep_seed).first;
                    if (spec.generator == "gsbm")
                        return sample_gsbm_with_outliers({base, *pt.m, spec.outlier_p}, rep_seed)
                            .first;
                    return sample_sbm(base, rep_seed).first;
                }();

                SelectionConfig cfg;
                cfg.k_max = spec.k_max;
                cfg.model = spec.model;
                cfg.seed = derive_seed(rep_seed, 0xf17);
                cfg.threads = 1;  // replicates already run in parallel
                cfg.subsample.explicit_n = std::min(
                    graph.num_nodes(),
                    recommended_subsample_size(pt.n_nodes, rho_size, pt.zeta));

                auto t0 = Clock::now();
                SelectionReport report = select_k(graph, cfg);
                cpu[t] = std::chrono::duration<double>(Clock::now() - t0).count();
                k_hats[t] = report.k_hat;
            } catch (const std::exception& e) {
                errors[t] = e.what();
            }
        });

        for (const std::string& e : errors) {
            if (!e.empty()) {
                row.failed = true;
                row.error = e;
                break;
            }
        }
        if (!row.failed) {
            auto [prob, mean_k] = metrics(k_hats, pt.k0);
            row.prob = prob;
            row.mean_k = mean_k;
            double total = 0.0;
            for (double c : cpu) total += c;
            row.cpu_seconds = total / static_cast<double>(spec.replicates);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open spec: " + path);

    ExperimentSpec spec;
    std::string line;
    std::int64_t line_no = 0;
    // Spec-file content problems are configuration mistakes, not I/O.
    auto fail = [&](const std::string& msg) {
        throw param_error(path + ":" + std::to_string(line_no) + ": " + msg);
    };
    auto split_list = [](const std::string& v) {
        std::vector<std::string> items;
        std::string cur;
        std::istringstream ss(v);
        while (std::getline(ss, cur, ',')) items.push_back(strip(cur));
        return items;
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') continue;  // section headers are cosmetic
        auto eq = t.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        std::string key = strip(t.substr(0, eq));
        std::string value = strip(t.substr(eq + 1));
        if (value.empty()) fail("empty value for key '" + key + "'");

        try {
            if (key == "generator") {
                spec.generator = value;
            } else if (key == "model") {
                spec.model = model_from_name(value);
            } else if (key == "k0") {
                spec.k0.clear();
                for (const auto& s : split_list(value)) spec.k0.push_back(std::stoi(s));
            } else if (key == "n_nodes") {
                spec.n_nodes.clear();
                for (const auto& s : split_list(value)) spec.n_nodes.push_back(std::stoll(s));
            } else if (key == "rho") {
                spec.rho.clear();
                for (const auto& s : split_list(value)) spec.rho.push_back(ScaleRule::parse(s));
            } else if (key == "subsample_rho") {
                spec.subsample_rho = ScaleRule::parse(value);
            } else if (key == "beta") {
                spec.beta = parse_double(value);
            } else if (key == "zeta") {
                spec.zeta.clear();
                for (const auto& s : split_list(value)) spec.zeta.push_back(parse_double(s));
            } else if (key == "alpha") {
                spec.alpha.clear();
                for (const auto& s : split_list(value)) spec.alpha.push_back(parse_double(s));
            } else if (key == "outliers") {
                spec.outliers.clear();
                for (const auto& s : split_list(value)) spec.outliers.push_back(std::stoi(s));
            } else if (key == "outlier_p") {
                spec.outlier_p = parse_double(value);
            } else if (key == "replicates") {
                spec.replicates = std::stoi(value);
            } else if (key == "seed") {
                spec.seed = static_cast<std::uint64_t>(std::stoull(value));
            } else if (key == "k_max") {
                spec.k_max = std::stoi(value);
            } else if (key == "threads") {
                spec.threads = std::stoi(value);
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const param_error&) {
            throw;
        } catch (const std::exception& e) {
            fail(std::string("bad value for '") + key + "': " + e.what());
        }
    }
    try {
        spec.validate();
    } catch (const std::exception& e) {
        throw param_error(path + ": " + e.what());
    }
    return spec;
}

std::string bench_rows_to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "generator,k0,n_nodes,rho_rule,zeta,alpha,m,replicates,prob,mean_k,cpu_seconds\n";
    for (const BenchRow& r : rows) {
        out << r.generator << ',' << r.k0 << ',' << r.n_nodes << ',' << r.rho_rule << ','
            << r.zeta << ',';
        if (r.alpha) out << *r.alpha;
        out << ',';
        if (r.m) out << *r.m;
        out << ',' << r.replicates << ',';
        if (r.failed)
            out << ",,";
        else
            out << r.prob << ',' << r.mean_k << ',' << r.cpu_seconds;
        out << '\n';
    }
    return out.str();
}

void write_bench_csv(const std::vector<BenchRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << bench_rows_to_csv(rows);
    if (!out) throw io_error("write failed: " + path);
}

ScalingResult scaling_probe(const std::vector<std::int64_t>& n_grid, std::int64_t subsample_n,
                            int reps, Model model, std::uint64_t seed, int k_max) {
    if (n_grid.empty()) throw param_error("empty size grid");
    if (reps < 1) throw param_error("reps must be >= 1");
    for (std::int64_t n : n_grid)
        if (subsample_n > n)
            throw param_error("fixed subsample size exceeds the smallest network size");

    ScalingResult result;
    for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
        const std::int64_t n_nodes = n_grid[gi];
        SbmParams params{3, n_nodes, std::pow(static_cast<double>(n_nodes), -0.5), 0.15, {}};
        double total = 0.0;
        for (int r = 0; r < reps; ++r) {
            const std::uint64_t rep_seed = derive_seed(seed, gi, r);
            auto [graph, truth] = sample_sbm(params, rep_seed);
            NodeSet nodes = sample_nodes(n_nodes, subsample_n, derive_seed(rep_seed, 0x5e1));
            SubAdjacency sub = extract_subadjacency(graph, nodes);

            SelectionConfig cfg;
            cfg.k_max = k_max;
            cfg.model = model;
            cfg.seed = derive_seed(rep_seed, 0xf17);
            cfg.threads = 1;

            auto t0 = Clock::now();
            (void)select_k_from_subsample(sub, cfg);
            total += std::chrono::duration<double>(Clock::now() - t0).count();
        }
        result.rows.push_back({n_nodes, total / reps});
    }

    if (result.rows.size() >= 2) {
        // Least-squares slope of ln(time) on ln(N).
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double cnt = static_cast<double>(result.rows.size());
        for (const ScalingRow& r : result.rows) {
            double x = std::log(static_cast<double>(r.n_nodes));
            double y = std::log(std::max(r.mean_seconds, 1e-12));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        result.loglog_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    }
    return result;
}

}  // namespace smbic
