#ifndef SMBIC_TESTS_TEST_UTIL_HPP
#define SMBIC_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace smbic::testutil {

/// Fraction of mismatched labels under the best cluster-index permutation
/// (brute force over permutations, K <= 8).
inline double misclassification_rate(const std::vector<int>& predicted,
                                     const std::vector<int>& truth, int k) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("label vectors differ in length");
    if (k > 8) throw std::invalid_argument("permutation search limited to K <= 8");
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = predicted.size();
    do {
        std::size_t errors = 0;
        for (std::size_t i = 0; i < predicted.size(); ++i)
            if (perm[predicted[i]] != truth[i]) ++errors;
        best = std::min(best, errors);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(predicted.size());
}

}  // namespace smbic::testutil

#endif
