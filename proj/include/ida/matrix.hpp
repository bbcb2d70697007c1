#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ida/gf.hpp"

namespace ida {

// Dense row-major matrix over GF(2^w). Matrices are plain values; all the
// algebra below is pure, so concurrent callers need no synchronization.
// Equality checks anywhere in this module are exact, there are no tolerances.
class GfMatrix {
public:
    GfMatrix(const FieldContext& field, std::size_t rows, std::size_t cols);
    GfMatrix(const FieldContext& field, std::size_t rows, std::size_t cols,
             std::vector<Symbol> data);

    static GfMatrix identity(const FieldContext& field, std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const FieldContext& field() const noexcept { return *field_; }

    Symbol at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Symbol& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Symbol> data() const noexcept { return data_; }

    GfMatrix transpose() const;

    bool operator==(const GfMatrix& other) const noexcept;

private:
    const FieldContext* field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Symbol> data_;
};

// Standard product. Throws MatrixError on dimension or field mismatch.
GfMatrix matmul(const GfMatrix& a, const GfMatrix& b);

// Column rank by Gaussian elimination. Pivoting picks the first nonzero
// entry (there is no magnitude over a finite field), columns scanned left
// to right, so results and witnesses are deterministic.
std::size_t rank(const GfMatrix& a);

// Gauss-Jordan inverse. Throws SingularMatrixError (carrying the rank
// found) on singular input, MatrixError on non-square input.
GfMatrix invert(const GfMatrix& a);

// Solves a * x = rhs for a with full column rank. Throws
// RankDeficientError or InconsistentSystemError, keeping the two apart.
GfMatrix solve(const GfMatrix& a, const GfMatrix& rhs);

// Selected rows/columns, order preserved. Indices must be strictly
// increasing and in range.
GfMatrix submatrix(const GfMatrix& a, std::span<const std::size_t> row_idx,
                   std::span<const std::size_t> col_idx);

// Output of column_relation: dependent columns expressed over the
// lexicographically first independent column set, exactly
//   dependent columns = basis columns * coeffs.
struct ColumnRelation {
    std::vector<std::size_t> basis_cols;      // r indices, ascending
    std::vector<std::size_t> dependent_cols;  // k = cols - r indices, ascending
    GfMatrix coeffs;                          // r x k
};

// Requires column rank r < cols; throws MatrixError("no dependent columns")
// on full-column-rank input.
ColumnRelation column_relation(const GfMatrix& a);

// True when v (a rows x 1 column vector) lies in the column span of a.
// When it does and x is non-null, *x receives one solution of a * x = v
// (free variables set to zero).
bool in_column_span(const GfMatrix& a, const GfMatrix& v, std::vector<Symbol>* x);

// Matrix text format used by the CLI:
//   first line "w rows cols", then rows*cols hex entries whitespace-separated.
std::string format_matrix_text(const GfMatrix& a);
GfMatrix parse_matrix_text(const std::string& text);

// Hex rendering of one field element, zero-padded to w/4 digits.
std::string symbol_to_hex(Symbol s, unsigned width);

}  // namespace ida
