#include "ida/subsets.hpp"

namespace ida {

std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    return idx;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    if (k == 0 || k > n) return false;
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (idx[i] != i + n - k) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool next_lex_subset(std::vector<std::size_t>& idx, std::size_t n, std::size_t max_len) {
    if (idx.size() < max_len && idx.back() + 1 < n) {
        idx.push_back(idx.back() + 1);
        return true;
    }
    while (!idx.empty() && idx.back() + 1 >= n) idx.pop_back();
    if (idx.empty()) return false;
    ++idx.back();
    return true;
}

std::uint64_t binomial_capped(std::size_t n, std::size_t k, std::uint64_t cap) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // result * (n - k + i) may overflow; saturate early.
        const std::uint64_t factor = n - k + i;
        if (result > cap / factor + 1) return cap;
        result = result * factor / i;
        if (result >= cap) return cap;
    }
    return result;
}

}  // namespace ida
