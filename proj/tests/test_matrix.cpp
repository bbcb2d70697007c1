#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ida/matrix.hpp"
#include "ida/subsets.hpp"

using ida::FieldContext;
using ida::GfMatrix;
using ida::Symbol;

namespace {

GfMatrix random_matrix(const FieldContext& f, std::size_t rows, std::size_t cols,
                       std::mt19937& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, f.order() - 1);
    GfMatrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = static_cast<Symbol>(dist(rng));
    return m;
}

GfMatrix random_nonsingular(const FieldContext& f, std::size_t n, std::mt19937& rng) {
    for (;;) {
        GfMatrix m = random_matrix(f, n, n, rng);
        if (ida::rank(m) == n) return m;
    }
}

}  // namespace

TEST_CASE("matmul identities and the 1x2 by 2x1 example") {
    const FieldContext& f = FieldContext::get(8);
    std::mt19937 rng(1);
    const GfMatrix g = random_matrix(f, 3, 5, rng);

    CHECK(matmul(GfMatrix::identity(f, 3), g) == g);
    CHECK(matmul(GfMatrix(f, 2, 3), g) == GfMatrix(f, 2, 5));

    const GfMatrix a(f, 1, 2, {1, 2});
    const GfMatrix b(f, 2, 1, {3, 4});
    const GfMatrix p = matmul(a, b);
    CHECK(p.rows() == 1);
    CHECK(p.cols() == 1);
    CHECK(f.mul(2, 4) == 8);
    CHECK(p.at(0, 0) == 0x0B);  // 3 ^ mul(2,4)

    CHECK_THROWS_AS(matmul(a, g), ida::MatrixError);
}

TEST_CASE("rank basics") {
    const FieldContext& f = FieldContext::get(8);
    CHECK(ida::rank(GfMatrix(f, 3, 4)) == 0);
    CHECK(ida::rank(GfMatrix::identity(f, 5)) == 5);
    CHECK(ida::rank(GfMatrix(f, 2, 2, {1, 1, 1, 1})) == 1);
}

TEST_CASE("rank equals rank of transpose on random matrices") {
    std::mt19937 rng(7);
    for (unsigned w : {4u, 8u}) {
        const FieldContext& f = FieldContext::get(w);
        for (int i = 0; i < 200; ++i) {
            std::uniform_int_distribution<std::size_t> dim(1, 6);
            const GfMatrix m = random_matrix(f, dim(rng), dim(rng), rng);
            CHECK(ida::rank(m) == ida::rank(m.transpose()));
        }
    }
}

TEST_CASE("invert: identity, diagonal, involution, exact residual") {
    const FieldContext& f = FieldContext::get(8);
    CHECK(invert(GfMatrix::identity(f, 4)) == GfMatrix::identity(f, 4));

    GfMatrix diag(f, 3, 3);
    diag.at(0, 0) = 2;
    diag.at(1, 1) = 7;
    diag.at(2, 2) = 0xB3;
    const GfMatrix dinv = invert(diag);
    for (std::size_t i = 0; i < 3; ++i) CHECK(dinv.at(i, i) == f.inv(diag.at(i, i)));

    std::mt19937 rng(42);
    for (int i = 0; i < 100; ++i) {
        const GfMatrix a = random_nonsingular(f, 4, rng);
        const GfMatrix ainv = invert(a);
        CHECK(matmul(a, ainv) == GfMatrix::identity(f, 4));
        CHECK(invert(ainv) == a);
    }
}

TEST_CASE("invert reports the rank of singular input") {
    const FieldContext& f = FieldContext::get(8);
    const GfMatrix s(f, 2, 2, {1, 1, 1, 1});
    CHECK_THROWS_AS(invert(s), ida::SingularMatrixError);
    try {
        invert(s);
    } catch (const ida::SingularMatrixError& e) {
        CHECK(e.rank_found() == 1);
    }
    CHECK_THROWS_AS(invert(GfMatrix(f, 2, 3)), ida::MatrixError);
}

TEST_CASE("solve: identity, random round trip, failure modes kept apart") {
    const FieldContext& f = FieldContext::get(8);
    std::mt19937 rng(3);

    const GfMatrix rhs = random_matrix(f, 4, 2, rng);
    CHECK(solve(GfMatrix::identity(f, 4), rhs) == rhs);

    for (int i = 0; i < 50; ++i) {
        // Full-column-rank 5x3: random nonsingular 3x3 stacked over random rows.
        GfMatrix a(f, 5, 3);
        const GfMatrix top = random_nonsingular(f, 3, rng);
        const GfMatrix rest = random_matrix(f, 2, 3, rng);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) a.at(r, c) = top.at(r, c);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 3; ++c) a.at(3 + r, c) = rest.at(r, c);
        const GfMatrix x = random_matrix(f, 3, 2, rng);
        CHECK(solve(a, matmul(a, x)) == x);
    }

    // Rank-deficient coefficient matrix.
    const GfMatrix dep(f, 2, 2, {1, 1, 1, 1});
    CHECK_THROWS_AS(solve(dep, GfMatrix(f, 2, 1, {1, 1})), ida::RankDeficientError);

    // Full column rank but inconsistent.
    const GfMatrix tall(f, 3, 1, {1, 1, 0});
    CHECK_THROWS_AS(solve(tall, GfMatrix(f, 3, 1, {1, 0, 1})), ida::InconsistentSystemError);
}

TEST_CASE("submatrix selection and index validation") {
    const FieldContext& f = FieldContext::get(8);
    const GfMatrix g(f, 2, 3, {1, 1, 2, 1, 2, 0});

    const std::vector<std::size_t> all_rows{0, 1}, all_cols{0, 1, 2};
    CHECK(submatrix(g, all_rows, all_cols) == g);

    const std::vector<std::size_t> r0{0}, c2{2};
    const GfMatrix single = submatrix(g, r0, c2);
    CHECK(single.rows() == 1);
    CHECK(single.cols() == 1);
    CHECK(single.at(0, 0) == 2);

    const std::vector<std::size_t> bad_order{1, 0}, out_of_range{5};
    CHECK_THROWS_AS(submatrix(g, bad_order, c2), ida::MatrixError);
    CHECK_THROWS_AS(submatrix(g, r0, out_of_range), ida::MatrixError);
}

TEST_CASE("column_relation: equal columns, zero column, planted relations") {
    const FieldContext& f = FieldContext::get(8);

    const GfMatrix equal_cols(f, 1, 2, {1, 1});
    const ida::ColumnRelation rel = column_relation(equal_cols);
    CHECK(rel.basis_cols == std::vector<std::size_t>{0});
    CHECK(rel.dependent_cols == std::vector<std::size_t>{1});
    CHECK(rel.coeffs.rows() == 1);
    CHECK(rel.coeffs.cols() == 1);
    CHECK(rel.coeffs.at(0, 0) == 1);

    const GfMatrix zero_col(f, 2, 1, {0, 0});
    const ida::ColumnRelation zrel = column_relation(zero_col);
    CHECK(zrel.basis_cols.empty());
    CHECK(zrel.dependent_cols == std::vector<std::size_t>{0});
    CHECK(zrel.coeffs.rows() == 0);
    CHECK(zrel.coeffs.cols() == 1);

    CHECK_THROWS_WITH_AS(column_relation(GfMatrix::identity(f, 3)), "no dependent columns",
                         ida::MatrixError);

    // Random rank-r matrices: the relation must reproduce the dependent
    // columns exactly.
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        std::uniform_int_distribution<std::size_t> rows_dist(2, 6);
        const std::size_t rows = rows_dist(rng);
        std::uniform_int_distribution<std::size_t> r_dist(0, rows - 1);
        const std::size_t r = r_dist(rng);
        const std::size_t cols = r + 1 + (rng() % 3);

        GfMatrix basis = random_matrix(f, rows, r, rng);
        GfMatrix mix = random_matrix(f, r, cols, rng);
        GfMatrix a = r == 0 ? GfMatrix(f, rows, cols) : matmul(basis, mix);
        if (ida::rank(a) == a.cols()) continue;

        const ida::ColumnRelation cr = column_relation(a);
        const std::vector<std::size_t> all_rows_idx = [&] {
            std::vector<std::size_t> v(rows);
            for (std::size_t k = 0; k < rows; ++k) v[k] = k;
            return v;
        }();
        const GfMatrix basis_part = submatrix(a, all_rows_idx, cr.basis_cols);
        const GfMatrix dep_part = submatrix(a, all_rows_idx, cr.dependent_cols);
        if (cr.basis_cols.empty()) {
            CHECK(dep_part == GfMatrix(f, rows, cr.dependent_cols.size()));
        } else {
            CHECK(matmul(basis_part, cr.coeffs) == dep_part);
        }
        CHECK(cr.basis_cols.size() + cr.dependent_cols.size() == a.cols());
    }
}

TEST_CASE("in_column_span finds coefficients when they exist") {
    const FieldContext& f = FieldContext::get(8);
    const GfMatrix g(f, 2, 3, {1, 1, 2, 1, 2, 0});

    GfMatrix e0(f, 2, 1);
    e0.at(0, 0) = 1;
    const std::vector<std::size_t> rows{0, 1}, col2{2};
    std::vector<Symbol> x;
    CHECK(in_column_span(submatrix(g, rows, col2), e0, &x));
    CHECK(x.size() == 1);
    CHECK(x[0] == f.inv(2));

    GfMatrix e1(f, 2, 1);
    e1.at(1, 0) = 1;
    CHECK_FALSE(in_column_span(submatrix(g, rows, col2), e1, nullptr));
}

TEST_CASE("subset enumeration orders are lexicographic") {
    // Fixed-size combinations over {0,1,2,3}.
    std::vector<std::vector<std::size_t>> combos;
    std::vector<std::size_t> c = ida::first_combination(2);
    do {
        combos.push_back(c);
    } while (ida::next_combination(c, 4));
    CHECK(combos == std::vector<std::vector<std::size_t>>{
                        {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(ida::binomial_capped(4, 2, 1000) == combos.size());

    // All nonempty subsets of {0,1,2} up to length 2, lexicographic
    // sequence order; this order fixes the weak-witness tie-break.
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> s{0};
    do {
        subsets.push_back(s);
    } while (ida::next_lex_subset(s, 3, 2));
    CHECK(subsets == std::vector<std::vector<std::size_t>>{
                         {0}, {0, 1}, {0, 2}, {1}, {1, 2}, {2}});

    CHECK(ida::binomial_capped(30, 15, 1000) == 1000);  // saturates at the cap
    CHECK(ida::binomial_capped(5, 9, 1000) == 0);
}

TEST_CASE("matrix text format round trip and errors") {
    const FieldContext& f = FieldContext::get(8);
    const GfMatrix g(f, 2, 3, {1, 1, 2, 1, 2, 0});
    const std::string text = format_matrix_text(g);
    CHECK(text == "8 2 3\n01 01 02\n01 02 00\n");
    CHECK(ida::parse_matrix_text(text) == g);

    const FieldContext& f16 = FieldContext::get(16);
    std::mt19937 rng(5);
    const GfMatrix big = random_matrix(f16, 3, 4, rng);
    CHECK(ida::parse_matrix_text(format_matrix_text(big)) == big);

    CHECK_THROWS_AS(ida::parse_matrix_text("8 2 2\n01 02 03"), ida::MatrixError);   // short
    CHECK_THROWS_AS(ida::parse_matrix_text("8 1 2\n01 02 03"), ida::MatrixError);   // trailing
    CHECK_THROWS_AS(ida::parse_matrix_text("8 1 2\n01 zz"), ida::MatrixError);      // bad hex
    CHECK_THROWS_AS(ida::parse_matrix_text("4 1 2\n01 ff"), ida::MatrixError);      // out of range
    CHECK_THROWS_AS(ida::parse_matrix_text(""), ida::MatrixError);
}
