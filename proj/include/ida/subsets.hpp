#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ida {

// Lexicographic k-combination enumeration over {0, ..., n-1}.
// first_combination(k) = {0, 1, ..., k-1}; next_combination advances in
// place and returns false once the last combination has been consumed.
std::vector<std::size_t> first_combination(std::size_t k);
bool next_combination(std::vector<std::size_t>& idx, std::size_t n);

// Enumerates every nonempty strictly increasing sequence over {0,...,n-1}
// of length <= max_len, in lexicographic sequence order:
//   {0} < {0,1} < {0,1,2} < ... < {0,2} < ... < {1} < ...
// Seed with {0}; returns false when exhausted.
bool next_lex_subset(std::vector<std::size_t>& idx, std::size_t n, std::size_t max_len);

// C(n, k), saturating at cap.
std::uint64_t binomial_capped(std::size_t n, std::size_t k, std::uint64_t cap);

}  // namespace ida
