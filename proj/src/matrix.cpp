#include "ida/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

namespace ida {

GfMatrix::GfMatrix(const FieldContext& field, std::size_t rows, std::size_t cols)
    : field_(&field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

GfMatrix::GfMatrix(const FieldContext& field, std::size_t rows, std::size_t cols,
                   std::vector<Symbol> data)
    : field_(&field), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw MatrixError("matrix data length " + std::to_string(data_.size()) +
                          " does not match " + std::to_string(rows_) + "x" +
                          std::to_string(cols_));
    for (Symbol s : data_)
        if (!field_->in_range(s))
            throw MatrixError("matrix entry " + std::to_string(s) +
                              " out of range for GF(2^" + std::to_string(field_->width()) + ")");
}

GfMatrix GfMatrix::identity(const FieldContext& field, std::size_t n) {
    GfMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

GfMatrix GfMatrix::transpose() const {
    GfMatrix t(*field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

bool GfMatrix::operator==(const GfMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_ && *field_ == *other.field_ &&
           data_ == other.data_;
}

namespace {

void require_same_field(const GfMatrix& a, const GfMatrix& b) {
    if (!(a.field() == b.field())) throw MatrixError("field mismatch between operands");
}

// Row echelon reduction (in place, full RREF). Returns pivot columns in
// ascending order. Pivot row selection: first row with a nonzero entry in
// the current column.
std::vector<std::size_t> rref_in_place(GfMatrix& m) {
    const FieldContext& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;  // next pivot row
    for (std::size_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
        std::size_t sel = pr;
        while (sel < m.rows() && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pr)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(pr, j));
        const Symbol piv_inv = f.inv(m.at(pr, c));
        for (std::size_t j = c; j < m.cols(); ++j) m.at(pr, j) = f.mul(m.at(pr, j), piv_inv);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pr) continue;
            const Symbol factor = m.at(r, c);
            if (factor == 0) continue;
            for (std::size_t j = c; j < m.cols(); ++j)
                m.at(r, j) = FieldContext::sub(m.at(r, j), f.mul(factor, m.at(pr, j)));
        }
        pivots.push_back(c);
        ++pr;
    }
    return pivots;
}

}  // namespace

GfMatrix matmul(const GfMatrix& a, const GfMatrix& b) {
    require_same_field(a, b);
    if (a.cols() != b.rows())
        throw MatrixError("matmul dimension mismatch: " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
    const FieldContext& f = a.field();
    GfMatrix out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Symbol aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out.at(i, j) = FieldContext::add(out.at(i, j), f.mul(aik, b.at(k, j)));
        }
    }
    return out;
}

std::size_t rank(const GfMatrix& a) {
    GfMatrix work = a;
    return rref_in_place(work).size();
}

GfMatrix invert(const GfMatrix& a) {
    if (a.rows() != a.cols())
        throw MatrixError("invert requires a square matrix, got " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()));
    const std::size_t n = a.rows();
    const FieldContext& f = a.field();

    // Augment [a | I] and reduce.
    GfMatrix aug(f, n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, n + r) = 1;
    }
    const std::vector<std::size_t> pivots = rref_in_place(aug);

    std::size_t rank_found = 0;
    for (std::size_t p : pivots)
        if (p < n) ++rank_found;
    if (rank_found < n)
        throw SingularMatrixError("singular matrix (rank " + std::to_string(rank_found) +
                                      " of " + std::to_string(n) + ")",
                                  rank_found);

    GfMatrix out(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out.at(r, c) = aug.at(r, n + c);
    return out;
}

GfMatrix solve(const GfMatrix& a, const GfMatrix& rhs) {
    require_same_field(a, rhs);
    if (a.rows() != rhs.rows())
        throw MatrixError("solve: rhs has " + std::to_string(rhs.rows()) + " rows, expected " +
                          std::to_string(a.rows()));
    const FieldContext& f = a.field();
    const std::size_t n = a.cols();

    GfMatrix aug(f, a.rows(), n + rhs.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
        for (std::size_t c = 0; c < rhs.cols(); ++c) aug.at(r, n + c) = rhs.at(r, c);
    }
    const std::vector<std::size_t> pivots = rref_in_place(aug);

    std::size_t rank_a = 0;
    for (std::size_t p : pivots)
        if (p < n) ++rank_a;
    if (rank_a < n)
        throw RankDeficientError("solve: coefficient matrix has column rank " +
                                 std::to_string(rank_a) + " < " + std::to_string(n));
    // Full column rank: pivot row i corresponds to column i. Any pivot in
    // the rhs block, or any leftover nonzero rhs row, marks inconsistency.
    for (std::size_t r = rank_a; r < aug.rows(); ++r)
        for (std::size_t c = n; c < aug.cols(); ++c)
            if (aug.at(r, c) != 0)
                throw InconsistentSystemError("solve: system is inconsistent (no solution)");

    GfMatrix x(f, n, rhs.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < rhs.cols(); ++c) x.at(i, c) = aug.at(i, n + c);
    return x;
}

namespace {

void check_index_list(std::span<const std::size_t> idx, std::size_t bound, const char* what) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= bound)
            throw MatrixError(std::string(what) + " index " + std::to_string(idx[i]) +
                              " out of range (bound " + std::to_string(bound) + ")");
        if (i > 0 && idx[i] <= idx[i - 1])
            throw MatrixError(std::string(what) + " indices must be strictly increasing");
    }
}

}  // namespace

GfMatrix submatrix(const GfMatrix& a, std::span<const std::size_t> row_idx,
                   std::span<const std::size_t> col_idx) {
    check_index_list(row_idx, a.rows(), "row");
    check_index_list(col_idx, a.cols(), "column");
    GfMatrix out(a.field(), row_idx.size(), col_idx.size());
    for (std::size_t r = 0; r < row_idx.size(); ++r)
        for (std::size_t c = 0; c < col_idx.size(); ++c)
            out.at(r, c) = a.at(row_idx[r], col_idx[c]);
    return out;
}

ColumnRelation column_relation(const GfMatrix& a) {
    GfMatrix red = a;
    const std::vector<std::size_t> pivots = rref_in_place(red);
    if (pivots.size() == a.cols()) throw MatrixError("no dependent columns");

    ColumnRelation rel{pivots, {}, GfMatrix(a.field(), pivots.size(), a.cols() - pivots.size())};
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!std::binary_search(pivots.begin(), pivots.end(), c)) rel.dependent_cols.push_back(c);

    // In RREF, a non-pivot column holds its own coefficients over the pivot
    // columns: A[:,d] = sum_t R[t][d] * A[:,pivot_t].
    for (std::size_t t = 0; t < pivots.size(); ++t)
        for (std::size_t k = 0; k < rel.dependent_cols.size(); ++k)
            rel.coeffs.at(t, k) = red.at(t, rel.dependent_cols[k]);
    return rel;
}

bool in_column_span(const GfMatrix& a, const GfMatrix& v, std::vector<Symbol>* x) {
    require_same_field(a, v);
    if (v.rows() != a.rows() || v.cols() != 1)
        throw MatrixError("in_column_span expects a column vector matching a's row count");
    const FieldContext& f = a.field();
    const std::size_t n = a.cols();

    GfMatrix aug(f, a.rows(), n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, n) = v.at(r, 0);
    }
    const std::vector<std::size_t> pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == n) return false;  // pivot in the rhs column

    if (x != nullptr) {
        x->assign(n, 0);
        for (std::size_t i = 0; i < pivots.size(); ++i) (*x)[pivots[i]] = aug.at(i, n);
    }
    return true;
}

std::string symbol_to_hex(Symbol s, unsigned width) {
    static const char digits[] = "0123456789abcdef";
    const unsigned nibbles = width / 4;
    std::string out(nibbles, '0');
    for (unsigned i = 0; i < nibbles; ++i)
        out[nibbles - 1 - i] = digits[(s >> (4 * i)) & 0xF];
    return out;
}

std::string format_matrix_text(const GfMatrix& a) {
    std::ostringstream os;
    os << a.field().width() << ' ' << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (c != 0) os << ' ';
            os << symbol_to_hex(a.at(r, c), a.field().width());
        }
        os << '\n';
    }
    return os.str();
}

GfMatrix parse_matrix_text(const std::string& text) {
    std::istringstream is(text);
    unsigned w = 0;
    std::size_t rows = 0, cols = 0;
    if (!(is >> w >> rows >> cols))
        throw MatrixError("matrix text: expected header line \"w rows cols\"");
    const FieldContext& f = FieldContext::get(w);
    if (rows == 0 || cols == 0) throw MatrixError("matrix text: empty dimensions");

    std::vector<Symbol> data;
    data.reserve(rows * cols);
    std::string tok;
    while (data.size() < rows * cols && (is >> tok)) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &pos, 16);
        } catch (const std::exception&) {
            throw MatrixError("matrix text: bad hex entry \"" + tok + "\"");
        }
        if (pos != tok.size()) throw MatrixError("matrix text: bad hex entry \"" + tok + "\"");
        if (!f.in_range(static_cast<std::uint32_t>(v)))
            throw MatrixError("matrix text: entry " + tok + " out of range for GF(2^" +
                              std::to_string(w) + ")");
        data.push_back(static_cast<Symbol>(v));
    }
    if (data.size() != rows * cols)
        throw MatrixError("matrix text: expected " + std::to_string(rows * cols) +
                          " entries, got " + std::to_string(data.size()));
    if (is >> tok) throw MatrixError("matrix text: trailing data after entries");
    return GfMatrix(f, rows, cols, std::move(data));
}

}  // namespace ida
