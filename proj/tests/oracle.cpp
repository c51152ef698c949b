#include "oracle.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "smbic/rng.hpp"

namespace smbic::oracle {

namespace {

// Visits every pair of the independent set E exactly once.
template <typename Visit>
void for_each_pair(const TinyInstance& t, Visit visit) {
    const int n_total = static_cast<int>(t.adjacency.rows());
    std::vector<char> in_s(n_total, 0);
    for (int j : t.selected) in_s[j] = 1;
    for (int j : t.selected) {
        for (int i = 0; i < n_total; ++i) {
            if (i == j) continue;
            if (in_s[i] && i > j) continue;  // selected-selected pair counted once
            visit(i, j);
        }
    }
}

}  // namespace

std::int64_t TinyInstance::pair_count() const {
    std::int64_t count = 0;
    for_each_pair(*this, [&](int, int) { ++count; });
    return count;
}

double brute_force_loglik(const TinyInstance& t, PairModel model) {
    double total = 0.0;
    for_each_pair(t, [&](int i, int j) {
        const double a = t.adjacency(i, j);
        const double theta = t.b(t.labels[i], t.labels[j]);
        if (model == PairModel::Bernoulli) {
            total += a * std::log(theta) + (1.0 - a) * std::log(1.0 - theta);
        } else {
            const double weight = t.psi[i] * t.psi[j];
            total += a * std::log(weight) + a * std::log(theta) - weight * theta;
        }
    });
    return total;
}

namespace {

// Majority-link extension of a selected-node labeling, dense arithmetic.
std::vector<int> extend_labeling(const TinyInstance& t, const std::vector<int>& g_sel, int k) {
    const int n_total = static_cast<int>(t.adjacency.rows());
    std::vector<char> in_s(n_total, 0);
    std::vector<int> col_of(n_total, -1);
    for (std::size_t c = 0; c < t.selected.size(); ++c) {
        in_s[t.selected[c]] = 1;
        col_of[t.selected[c]] = static_cast<int>(c);
    }
    std::vector<int> full(n_total, 0);
    for (int i = 0; i < n_total; ++i) {
        if (in_s[i]) {
            full[i] = g_sel[col_of[i]];
            continue;
        }
        std::vector<double> links(k, 0.0);
        for (std::size_t c = 0; c < t.selected.size(); ++c)
            links[g_sel[c]] += t.adjacency(i, t.selected[c]);
        int best = 0;
        for (int cl = 1; cl < k; ++cl)
            if (links[cl] > links[best]) best = cl;
        full[i] = best;
    }
    return full;
}

// Profile Bernoulli log-likelihood of a full labeling: counts per block
// pair, then n * gamma(o/n) with gamma(0) = gamma(1) = 0.
double profile_loglik(const TinyInstance& t, const std::vector<int>& full, int k) {
    std::vector<double> o(k * k, 0.0), n(k * k, 0.0);
    TinyInstance labeled = t;
    labeled.labels = full;
    for_each_pair(labeled, [&](int i, int j) {
        const int lo = std::min(full[i], full[j]);
        const int hi = std::max(full[i], full[j]);
        n[lo * k + hi] += 1.0;
        o[lo * k + hi] += t.adjacency(i, j);
    });
    double total = 0.0;
    for (int p = 0; p < k; ++p)
        for (int q = p; q < k; ++q) {
            const double nn = n[p * k + q];
            const double oo = o[p * k + q];
            if (nn == 0.0 || oo == 0.0 || oo == nn) continue;
            const double x = oo / nn;
            total += nn * (x * std::log(x) + (1.0 - x) * std::log(1.0 - x));
        }
    return total;
}

}  // namespace

std::pair<std::vector<int>, double> exhaustive_best_selected_labeling(const TinyInstance& t,
                                                                      int k) {
    const int n_sel = static_cast<int>(t.selected.size());
    double combinations = std::pow(static_cast<double>(k), n_sel);
    if (combinations > 1e6)
        throw std::invalid_argument("K^n exceeds the enumeration budget");

    std::vector<int> g_sel(n_sel, 0);
    std::vector<int> best_labels;
    double best = -std::numeric_limits<double>::infinity();
    for (;;) {
        std::vector<int> full = extend_labeling(t, g_sel, k);
        double ll = profile_loglik(t, full, k);
        if (ll > best) {
            best = ll;
            best_labels = full;
        }
        int pos = n_sel - 1;
        while (pos >= 0 && g_sel[pos] == k - 1) g_sel[pos--] = 0;
        if (pos < 0) break;
        ++g_sel[pos];
    }
    return {best_labels, best};
}

smbic::Embedding dense_svd_reference(const Eigen::MatrixXd& m, int k) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    smbic::Embedding e;
    e.k = k;
    e.v = svd.matrixU().leftCols(k);
    e.sigma = svd.singularValues().head(k);
    return e;
}

double max_principal_angle(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(u.transpose() * v);
    double c = svd.singularValues().minCoeff();
    return std::acos(std::min(1.0, std::max(-1.0, c)));
}

TinyInstance random_instance(std::uint64_t seed, int max_nodes, int max_k, bool poisson_psi) {
    auto rng = smbic::make_rng(seed);
    std::uniform_int_distribution<int> size_dist(4, max_nodes);
    const int n_total = size_dist(rng);
    std::uniform_int_distribution<int> k_dist(1, max_k);
    const int k = k_dist(rng);
    std::uniform_int_distribution<int> sel_dist(1, n_total);
    const int n_sel = sel_dist(rng);

    TinyInstance t;
    t.k = k;
    std::uniform_real_distribution<double> edge_p(0.0, 1.0);
    t.adjacency = Eigen::MatrixXd::Zero(n_total, n_total);
    for (int i = 0; i < n_total; ++i)
        for (int j = i + 1; j < n_total; ++j)
            if (edge_p(rng) < 0.4) t.adjacency(i, j) = t.adjacency(j, i) = 1.0;

    std::vector<int> pool(n_total);
    for (int i = 0; i < n_total; ++i) pool[i] = i;
    for (int i = 0; i < n_sel; ++i) {
        std::uniform_int_distribution<int> pick(i, n_total - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    t.selected.assign(pool.begin(), pool.begin() + n_sel);
    std::sort(t.selected.begin(), t.selected.end());

    std::uniform_int_distribution<int> label_dist(0, k - 1);
    t.labels.resize(n_total);
    for (int i = 0; i < n_total; ++i) t.labels[i] = label_dist(rng);

    std::uniform_real_distribution<double> b_dist(0.05, 0.95);
    t.b = Eigen::MatrixXd::Zero(k, k);
    for (int p = 0; p < k; ++p)
        for (int q = p; q < k; ++q) t.b(p, q) = t.b(q, p) = b_dist(rng);

    t.psi = Eigen::VectorXd::Ones(n_total);
    if (poisson_psi) {
        std::uniform_real_distribution<double> psi_dist(0.25, 2.5);
        for (int i = 0; i < n_total; ++i) t.psi[i] = psi_dist(rng);
    }
    return t;
}

}  // namespace smbic::oracle
