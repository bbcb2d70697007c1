#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ida/codegen.hpp"
#include "ida/matrix.hpp"

namespace ida {

// Everything an eavesdropper needs to run the explicit attack: the
// rank-deficient submatrix location, the column relation over it, and the
// segments that fall out.
//
// Constraint realized by the witness: with m' = |rows| and n' = |cols|,
//   m' < m,  n' < m,  k = n' - rank_r = m - m' > 0.
struct WeakWitness {
    std::vector<std::size_t> rows;  // i_1..i_m', ascending
    std::vector<std::size_t> cols;  // j_1..j_n', ascending, into the n pieces
    std::size_t rank_r = 0;
    std::size_t k = 0;
    std::vector<std::size_t> dependent_cols;  // global piece indices, k of them
    std::vector<std::size_t> basis_cols;      // global piece indices, rank_r of them
    GfMatrix coeffs_b;                        // rank_r x k: dependent = basis * B
    std::vector<std::size_t> recoverable_segments;  // the m - m' segments outside rows
};

enum class Verdict { weak, strong_certified, strong_by_exhaustion, indeterminate };

const char* verdict_name(Verdict v);

// verdict == weak  <=>  witness present.
// strong_certified only ever comes out of an exhaustive square-submatrix
// certificate; strong_by_exhaustion only out of an exhaustive weak search.
struct ConfidentialityReport {
    Verdict verdict = Verdict::indeterminate;
    std::optional<WeakWitness> witness;
    std::string certificate_scope;
};

inline constexpr std::uint64_t kWeakSearchBudget = 1000000;
inline constexpr std::uint64_t kCertifyBudget = 1000000;
inline constexpr std::uint64_t kCertifySampleCount = 10000;

// Exhaustive search for the weak-confidentiality characterization: a
// submatrix at (rows, cols) with m', n' < m whose column rank r satisfies
// n' - r = m - m' > 0. First hit in lexicographic order (m', then row set,
// then column set) becomes the witness. g must pass both validity
// conditions (throws ValidityError otherwise). Searches beyond `budget`
// rank computations return indeterminate, never a guess.
ConfidentialityReport detect_weak(const GfMatrix& g, std::uint64_t budget = kWeakSearchBudget);

// Sufficient-condition certificate: every square submatrix of every size
// 1..min(m, n) is nonsingular. On success the verdict is strong_certified.
// On a singular square submatrix the certificate fails (its location is
// recorded in certificate_scope) and the verdict falls back to the
// detect_weak result; the condition is sufficient, not necessary.
ConfidentialityReport certify_strong(const GfMatrix& g, std::uint64_t budget = kCertifyBudget);

// Brute-force ground truth: segment i is recoverable from piece subset J
// exactly when unit vector e_i lies in the column span of g restricted to J.
std::vector<std::size_t> recoverable_oracle(const GfMatrix& g,
                                            std::span<const std::size_t> piece_subset);

// (piece index, symbol payload) on input; (segment index, symbol payload)
// on output.
using IndexedPayload = std::pair<std::size_t, std::vector<Symbol>>;

// Reconstructs every segment recoverable from exactly this piece subset,
// byte-exactly. Fewer than m pieces required; with m or more the caller
// should reconstruct instead (error "use full reconstruction").
std::vector<IndexedPayload> attack(const GfMatrix& g,
                                   const std::vector<IndexedPayload>& eavesdropped);

// JSON document with stable key order: verdict, witness (when present),
// certificate_scope. B entries rendered as hex.
std::string report_to_json(const ConfidentialityReport& report);

// Human-oriented rendering; marks witness rows/columns on the matrix.
std::string report_to_text(const ConfidentialityReport& report, const GfMatrix& g);

}  // namespace ida
