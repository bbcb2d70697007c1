#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ida/matrix.hpp"

namespace ida {

enum class Family { cauchy, vandermonde, rs_strong, explicit_matrix };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// Constructible description of a generator matrix.
//
// Point semantics per family:
//   cauchy       m + n points: x_1..x_m then y_1..y_n; entry (i,j) = 1/(x_i ^ y_j)
//   vandermonde  m + n points a_1..a_{m+n}; builds the wide m x (m+n) matrix
//                with entry (i,j) = a_j^i
//   rs_strong    m + n points; builds the vandermonde matrix, then strongify
//                produces the final m x n generator
//   explicit     the m x n matrix itself, row-major (explicit_matrix holds it;
//                in the canonical text the entries travel as the point list)
struct GeneratorSpec {
    Family family = Family::cauchy;
    unsigned field_width = 8;
    std::size_t m = 0;  // segment count
    std::size_t n = 0;  // piece count (for vandermonde: the built matrix has m+n columns)
    std::vector<Symbol> points;
    std::optional<GfMatrix> explicit_matrix;
};

// Factories. An empty point list selects the deterministic defaults:
// cauchy x_i = i-1, y_j = m+j-1; vandermonde/rs_strong a_i = i-1.
GeneratorSpec make_cauchy_spec(unsigned width, std::size_t m, std::size_t n,
                               std::vector<Symbol> points = {});
GeneratorSpec make_vandermonde_spec(unsigned width, std::size_t m, std::size_t n,
                                    std::vector<Symbol> points = {});
GeneratorSpec make_rs_strong_spec(unsigned width, std::size_t m, std::size_t n,
                                  std::vector<Symbol> points = {});
GeneratorSpec make_explicit_spec(GfMatrix g);

// Throws SpecError naming the violated clause.
void validate_spec(const GeneratorSpec& spec);

// Canonical text form, embedded in piece headers and CLI flags:
//   family:w:m:n:p1,p2,...   with lowercase hex points padded to w/4 digits.
std::string canonical_text(const GeneratorSpec& spec);
GeneratorSpec parse_spec_text(const std::string& text);

// Builds the generator matrix described by spec (validates first).
GfMatrix build(const GeneratorSpec& spec);

// Report of the two generator-matrix validity conditions:
//   1. no column equals a column of the m x m identity matrix;
//   2. every m columns form a nonsingular m x m matrix.
struct ValidityReport {
    bool cond1_ok = false;
    std::optional<std::size_t> identity_column;  // first offender
    bool cond2_ok = false;
    std::optional<std::vector<std::size_t>> singular_subset;  // first singular m-subset
    bool exhaustive = true;    // condition 2: false when the subset count exceeded the budget
    std::uint64_t checked_subsets = 0;

    bool ok() const { return cond1_ok && cond2_ok; }
};

inline constexpr std::uint64_t kValiditySubsetBudget = 1000000;
inline constexpr std::uint64_t kValiditySampleCount = 10000;

// Requires g.rows < g.cols (throws MatrixError otherwise). Condition 2 is
// checked over all C(n, m) column subsets up to subset_budget, then falls
// back to a deterministic random sample flagged exhaustive = false.
ValidityReport check_validity(const GfMatrix& g,
                              std::uint64_t subset_budget = kValiditySubsetBudget);

// Throws ValidityError naming the violated condition when !ok().
void require_validity(const GfMatrix& g);

// Two-step strong-confidentiality construction: split the MDS m x (m+n)
// matrix g_wide = (C | D) at column m and return C^-1 * D. The MDS
// precondition (every m columns independent) is checked; violations throw
// SpecError naming a singular column subset.
GfMatrix strongify(const GfMatrix& g_wide, std::size_t m);

}  // namespace ida
