#pragma once

#include "codegraph/field.hpp"

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace codegraph {

// Dense row-major matrix over a shared GF(q). Entry values are element
// indices of the field. Equality is entrywise over the same field order,
// so two subspaces are identical iff their RREF matrices compare equal.
class MatGF {
public:
    MatGF() = default;
    MatGF(int rows, int cols, FieldPtr field);
    static MatGF from_rows(FieldPtr field,
                           const std::vector<std::vector<int>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    GfElem at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    void set(int r, int c, GfElem v) { a_[static_cast<std::size_t>(r) * cols_ + c] = v; }
    const GfElem* row_ptr(int r) const { return a_.data() + static_cast<std::size_t>(r) * cols_; }
    GfElem* row_ptr(int r) { return a_.data() + static_cast<std::size_t>(r) * cols_; }
    const std::vector<GfElem>& data() const { return a_; }

    std::vector<GfElem> column(int c) const;

    bool operator==(const MatGF& o) const;
    bool operator!=(const MatGF& o) const { return !(*this == o); }

    // Entry bytes prefixed with the shape; usable as a hash key.
    std::string bytes() const;

    std::string to_text() const; // rows as digit strings, '/'-separated

private:
    int rows_ = 0, cols_ = 0;
    FieldPtr field_;
    std::vector<GfElem> a_;
};

struct RrefResult {
    MatGF mat;
    int rank = 0;
    std::vector<int> pivots; // pivot column per pivot row, strictly increasing
};

// Reduced row echelon form; the unique canonical representative of the
// row space. Deterministic pivot choice (first nonzero in column order).
RrefResult rref(const MatGF& m);

int rank_of(const MatGF& m);

// Stacks a on top of b; both must share field and column count.
MatGF stack(const MatGF& a, const MatGF& b);

// Canonical (RREF) basis of the right kernel {v : m v^T = 0}, one basis
// vector per row; 0 x cols when the kernel is trivial.
MatGF kernel_basis(const MatGF& m);

// Canonical basis of rowspace(a) ∩ rowspace(b) via the kernels of the two
// orthogonal complements; 0 x cols when the intersection is trivial.
MatGF intersect_rowspaces(const MatGF& a, const MatGF& b);

// Determinant of a square matrix by elimination.
GfElem det(const MatGF& m);

// All maximal k x k minors (k = rows) over column subsets in lexicographic
// subset order; size C(cols, rows).
std::vector<GfElem> k_minors(const MatGF& m);

std::string matrix_to_json(const MatGF& m); // [[row], [row], ...]

} // namespace codegraph
