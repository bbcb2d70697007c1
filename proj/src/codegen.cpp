#include "ida/codegen.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>
#include <sstream>

#include "ida/subsets.hpp"

namespace ida {

const char* family_name(Family f) {
    switch (f) {
        case Family::cauchy: return "cauchy";
        case Family::vandermonde: return "vandermonde";
        case Family::rs_strong: return "rs_strong";
        case Family::explicit_matrix: return "explicit";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "cauchy") return Family::cauchy;
    if (name == "vandermonde") return Family::vandermonde;
    if (name == "rs_strong") return Family::rs_strong;
    if (name == "explicit") return Family::explicit_matrix;
    throw SpecError("unknown code family \"" + name + "\"");
}

namespace {

std::vector<Symbol> default_points(Family family, std::size_t m, std::size_t n) {
    std::vector<Symbol> pts;
    if (family == Family::explicit_matrix) return pts;
    pts.reserve(m + n);
    // cauchy: x_i = i-1 (i = 1..m), y_j = m+j-1 (j = 1..n); the two ranges
    // are disjoint so x_i ^ y_j != 0, which validate_spec still verifies.
    // vandermonde / rs_strong: a_i = i-1.
    for (std::size_t i = 0; i < m + n; ++i) pts.push_back(static_cast<Symbol>(i));
    return pts;
}

GeneratorSpec make_spec(Family family, unsigned width, std::size_t m, std::size_t n,
                        std::vector<Symbol> points) {
    GeneratorSpec spec;
    spec.family = family;
    spec.field_width = width;
    spec.m = m;
    spec.n = n;
    spec.points = points.empty() ? default_points(family, m, n) : std::move(points);
    validate_spec(spec);
    return spec;
}

}  // namespace

GeneratorSpec make_cauchy_spec(unsigned width, std::size_t m, std::size_t n,
                               std::vector<Symbol> points) {
    return make_spec(Family::cauchy, width, m, n, std::move(points));
}

GeneratorSpec make_vandermonde_spec(unsigned width, std::size_t m, std::size_t n,
                                    std::vector<Symbol> points) {
    return make_spec(Family::vandermonde, width, m, n, std::move(points));
}

GeneratorSpec make_rs_strong_spec(unsigned width, std::size_t m, std::size_t n,
                                  std::vector<Symbol> points) {
    return make_spec(Family::rs_strong, width, m, n, std::move(points));
}

GeneratorSpec make_explicit_spec(GfMatrix g) {
    GeneratorSpec spec;
    spec.family = Family::explicit_matrix;
    spec.field_width = g.field().width();
    spec.m = g.rows();
    spec.n = g.cols();
    spec.points.assign(g.data().begin(), g.data().end());
    spec.explicit_matrix = std::move(g);
    validate_spec(spec);
    return spec;
}

void validate_spec(const GeneratorSpec& spec) {
    const FieldContext& f = FieldContext::get(spec.field_width);
    if (spec.m < 1 || spec.n < 1)
        throw SpecError("generator spec requires m >= 1 and n >= 1");
    // vandermonde describes the wide m x (m+n) code, where m < m+n always;
    // the IDA families need m < n outright.
    if (spec.family != Family::vandermonde && spec.m >= spec.n)
        throw SpecError("generator spec requires 1 <= m < n, got m=" + std::to_string(spec.m) +
                        " n=" + std::to_string(spec.n));
    for (Symbol p : spec.points)
        if (!f.in_range(p))
            throw SpecError("point " + std::to_string(p) + " out of range for GF(2^" +
                            std::to_string(spec.field_width) + ")");

    switch (spec.family) {
        case Family::cauchy: {
            if (spec.m + spec.n > f.order())
                throw SpecError("cauchy requires m + n <= 2^w (" +
                                std::to_string(spec.m + spec.n) + " > " +
                                std::to_string(f.order()) + ")");
            if (spec.points.size() != spec.m + spec.n)
                throw SpecError("cauchy expects m + n = " + std::to_string(spec.m + spec.n) +
                                " points, got " + std::to_string(spec.points.size()));
            std::set<Symbol> xs(spec.points.begin(), spec.points.begin() + spec.m);
            std::set<Symbol> ys(spec.points.begin() + spec.m, spec.points.end());
            if (xs.size() != spec.m) throw SpecError("cauchy x points must be distinct");
            if (ys.size() != spec.n) throw SpecError("cauchy y points must be distinct");
            for (std::size_t i = 0; i < spec.m; ++i)
                for (std::size_t j = 0; j < spec.n; ++j)
                    if ((spec.points[i] ^ spec.points[spec.m + j]) == 0)
                        throw SpecError("cauchy requires x_i ^ y_j != 0 for all i, j (x[" +
                                        std::to_string(i) + "] equals y[" + std::to_string(j) +
                                        "])");
            break;
        }
        case Family::vandermonde:
        case Family::rs_strong: {
            if (spec.m + spec.n > f.order())
                throw SpecError(std::string(family_name(spec.family)) +
                                " requires m + n <= 2^w (" + std::to_string(spec.m + spec.n) +
                                " > " + std::to_string(f.order()) + ")");
            if (spec.points.size() != spec.m + spec.n)
                throw SpecError(std::string(family_name(spec.family)) + " expects m + n = " +
                                std::to_string(spec.m + spec.n) + " points, got " +
                                std::to_string(spec.points.size()));
            std::set<Symbol> pts(spec.points.begin(), spec.points.end());
            if (pts.size() != spec.points.size())
                throw SpecError(std::string(family_name(spec.family)) +
                                " evaluation points must be distinct");
            break;
        }
        case Family::explicit_matrix: {
            if (spec.points.size() != spec.m * spec.n)
                throw SpecError("explicit expects m * n = " + std::to_string(spec.m * spec.n) +
                                " entries, got " + std::to_string(spec.points.size()));
            if (spec.explicit_matrix) {
                const GfMatrix& g = *spec.explicit_matrix;
                if (g.rows() != spec.m || g.cols() != spec.n || g.field().width() != spec.field_width)
                    throw SpecError("explicit matrix does not match spec dimensions");
            }
            break;
        }
    }
}

std::string canonical_text(const GeneratorSpec& spec) {
    std::ostringstream os;
    os << family_name(spec.family) << ':' << spec.field_width << ':' << spec.m << ':' << spec.n
       << ':';
    for (std::size_t i = 0; i < spec.points.size(); ++i) {
        if (i != 0) os << ',';
        os << symbol_to_hex(spec.points[i], spec.field_width);
    }
    return os.str();
}

namespace {

std::size_t parse_count(const std::string& part, const char* what) {
    try {
        std::size_t pos = 0;
        const unsigned long v = std::stoul(part, &pos, 10);
        if (pos != part.size()) throw std::invalid_argument(part);
        return v;
    } catch (const std::exception&) {
        throw SpecError(std::string("spec text: bad ") + what + " \"" + part + "\"");
    }
}

}  // namespace

GeneratorSpec parse_spec_text(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ':') {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    if (parts.size() != 4 && parts.size() != 5)
        throw SpecError("spec text: expected family:w:m:n:points, got \"" + text + "\"");

    GeneratorSpec spec;
    spec.family = family_from_name(parts[0]);
    spec.field_width = static_cast<unsigned>(parse_count(parts[1], "width"));
    spec.m = parse_count(parts[2], "m");
    spec.n = parse_count(parts[3], "n");
    const FieldContext& f = FieldContext::get(spec.field_width);

    if (parts.size() == 5 && !parts[4].empty()) {
        std::size_t p = 0;
        const std::string& pts = parts[4];
        while (p <= pts.size()) {
            std::size_t comma = pts.find(',', p);
            if (comma == std::string::npos) comma = pts.size();
            const std::string tok = pts.substr(p, comma - p);
            try {
                std::size_t pos = 0;
                const unsigned long v = std::stoul(tok, &pos, 16);
                if (pos != tok.size() || !f.in_range(static_cast<std::uint32_t>(v)))
                    throw std::invalid_argument(tok);
                spec.points.push_back(static_cast<Symbol>(v));
            } catch (const std::exception&) {
                throw SpecError("spec text: bad hex point \"" + tok + "\"");
            }
            p = comma + 1;
            if (comma == pts.size()) break;
        }
    }
    if (spec.points.empty()) spec.points = default_points(spec.family, spec.m, spec.n);
    if (spec.family == Family::explicit_matrix)
        spec.explicit_matrix = GfMatrix(f, spec.m, spec.n, spec.points);
    validate_spec(spec);
    return spec;
}

GfMatrix build(const GeneratorSpec& spec) {
    validate_spec(spec);
    const FieldContext& f = FieldContext::get(spec.field_width);
    switch (spec.family) {
        case Family::cauchy: {
            GfMatrix g(f, spec.m, spec.n);
            for (std::size_t i = 0; i < spec.m; ++i)
                for (std::size_t j = 0; j < spec.n; ++j)
                    g.at(i, j) = f.inv(FieldContext::add(spec.points[i], spec.points[spec.m + j]));
            return g;
        }
        case Family::vandermonde: {
            GfMatrix g(f, spec.m, spec.m + spec.n);
            for (std::size_t i = 0; i < spec.m; ++i)
                for (std::size_t j = 0; j < spec.m + spec.n; ++j)
                    g.at(i, j) = f.pow(spec.points[j], i);
            return g;
        }
        case Family::rs_strong: {
            GeneratorSpec wide = spec;
            wide.family = Family::vandermonde;
            return strongify(build(wide), spec.m);
        }
        case Family::explicit_matrix: {
            if (!spec.explicit_matrix) throw SpecError("explicit spec carries no matrix");
            return *spec.explicit_matrix;
        }
    }
    throw SpecError("unreachable family");
}

ValidityReport check_validity(const GfMatrix& g, std::uint64_t subset_budget) {
    if (g.rows() >= g.cols())
        throw MatrixError("validity check requires rows < cols, got " +
                          std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
    const std::size_t m = g.rows(), n = g.cols();
    ValidityReport report;

    // Condition 1: no column equals a column of the identity matrix.
    report.cond1_ok = true;
    for (std::size_t j = 0; j < n && report.cond1_ok; ++j) {
        std::size_t nonzero = 0;
        Symbol value = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (g.at(i, j) != 0) {
                ++nonzero;
                value = g.at(i, j);
            }
        if (nonzero == 1 && value == 1) {
            report.cond1_ok = false;
            report.identity_column = j;
        }
    }

    // Condition 2: every m columns form a nonsingular m x m matrix.
    report.cond2_ok = true;
    const std::vector<std::size_t> all_rows = first_combination(m);
    const std::uint64_t total = binomial_capped(n, m, subset_budget + 1);
    auto subset_singular = [&](const std::vector<std::size_t>& cols) {
        return rank(submatrix(g, all_rows, cols)) < m;
    };
    if (total <= subset_budget) {
        std::vector<std::size_t> cols = first_combination(m);
        do {
            ++report.checked_subsets;
            if (subset_singular(cols)) {
                report.cond2_ok = false;
                report.singular_subset = cols;
                break;
            }
        } while (next_combination(cols, n));
        report.exhaustive = true;
    } else {
        // Deterministic sample.
        report.exhaustive = false;
        std::mt19937 rng(0x1DA5EED);
        for (std::uint64_t s = 0; s < kValiditySampleCount; ++s) {
            std::vector<std::size_t> pool(n);
            for (std::size_t i = 0; i < n; ++i) pool[i] = i;
            for (std::size_t i = 0; i < m; ++i) {
                std::uniform_int_distribution<std::size_t> dist(i, n - 1);
                std::swap(pool[i], pool[dist(rng)]);
            }
            std::vector<std::size_t> cols(pool.begin(), pool.begin() + m);
            std::sort(cols.begin(), cols.end());
            ++report.checked_subsets;
            if (subset_singular(cols)) {
                report.cond2_ok = false;
                report.singular_subset = cols;
                break;
            }
        }
    }
    return report;
}

void require_validity(const GfMatrix& g) {
    const ValidityReport report = check_validity(g);
    if (!report.cond1_ok) {
        throw ValidityError("generator matrix violates validity condition 1: column " +
                            std::to_string(*report.identity_column) +
                            " equals an identity column");
    }
    if (!report.cond2_ok) {
        std::ostringstream os;
        os << "generator matrix violates validity condition 2: columns {";
        const auto& subset = *report.singular_subset;
        for (std::size_t i = 0; i < subset.size(); ++i) {
            if (i != 0) os << ',';
            os << subset[i];
        }
        os << "} form a singular matrix";
        throw ValidityError(os.str());
    }
}

GfMatrix strongify(const GfMatrix& g_wide, std::size_t m) {
    if (g_wide.rows() != m)
        throw SpecError("strongify: matrix has " + std::to_string(g_wide.rows()) +
                        " rows, expected m = " + std::to_string(m));
    if (g_wide.cols() <= m)
        throw SpecError("strongify: need an m x (m+n) matrix with n >= 1 extra columns");

    // MDS precondition: every m columns of g_wide are independent.
    const std::vector<std::size_t> all_rows = first_combination(m);
    std::vector<std::size_t> cols = first_combination(m);
    do {
        if (rank(submatrix(g_wide, all_rows, cols)) < m) {
            std::ostringstream os;
            os << "strongify: input is not MDS, columns {";
            for (std::size_t i = 0; i < cols.size(); ++i) {
                if (i != 0) os << ',';
                os << cols[i];
            }
            os << "} are dependent";
            throw SpecError(os.str());
        }
    } while (next_combination(cols, g_wide.cols()));

    std::vector<std::size_t> c_cols = first_combination(m);
    std::vector<std::size_t> d_cols(g_wide.cols() - m);
    for (std::size_t i = 0; i < d_cols.size(); ++i) d_cols[i] = m + i;
    const GfMatrix c = submatrix(g_wide, all_rows, c_cols);
    const GfMatrix d = submatrix(g_wide, all_rows, d_cols);
    // MDS guarantees C is invertible.
    return matmul(invert(c), d);
}

}  // namespace ida
