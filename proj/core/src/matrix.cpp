#include "codegraph/matrix.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace codegraph {

MatGF::MatGF(int rows, int cols, FieldPtr field)
    : rows_(rows), cols_(cols), field_(std::move(field)),
      a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix shape must be nonnegative");
    if (!field_) throw std::invalid_argument("matrix requires a field");
}

MatGF MatGF::from_rows(FieldPtr field, const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
    MatGF m(r, c, std::move(field));
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("ragged row list");
        for (int j = 0; j < c; ++j) {
            const int v = rows[i][j];
            if (v < 0 || v >= m.field()->q())
                throw std::invalid_argument("entry out of field range");
            m.set(i, j, static_cast<GfElem>(v));
        }
    }
    return m;
}

std::vector<GfElem> MatGF::column(int c) const {
    std::vector<GfElem> out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) out[static_cast<std::size_t>(r)] = at(r, c);
    return out;
}

bool MatGF::operator==(const MatGF& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (field_ && o.field_ && field_->q() != o.field_->q()) return false;
    return a_ == o.a_;
}

std::string MatGF::bytes() const {
    std::string s;
    s.reserve(8 + a_.size());
    const auto push32 = [&s](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    push32(static_cast<std::uint32_t>(rows_));
    push32(static_cast<std::uint32_t>(cols_));
    s.append(reinterpret_cast<const char*>(a_.data()), a_.size());
    return s;
}

std::string MatGF::to_text() const {
    std::string s;
    for (int r = 0; r < rows_; ++r) {
        if (r) s.push_back('/');
        for (int c = 0; c < cols_; ++c) {
            const int v = at(r, c);
            if (v < 10) s.push_back(static_cast<char>('0' + v));
            else s.append(std::to_string(v)); // multi-digit entries for q > 10
        }
    }
    return s;
}

RrefResult rref(const MatGF& m) {
    RrefResult res;
    res.mat = m;
    MatGF& a = res.mat;
    const Field& f = *m.field();
    const int rows = m.rows(), cols = m.cols();
    int lead = 0;
    for (int col = 0; col < cols && lead < rows; ++col) {
        int pivot = -1;
        for (int r = lead; r < rows; ++r) {
            if (a.at(r, col) != 0) { pivot = r; break; }
        }
        if (pivot < 0) continue;
        if (pivot != lead) {
            for (int c = 0; c < cols; ++c) {
                GfElem tmp = a.at(lead, c);
                a.set(lead, c, a.at(pivot, c));
                a.set(pivot, c, tmp);
            }
        }
        const GfElem inv = f.inv(a.at(lead, col));
        if (inv != 1) {
            for (int c = col; c < cols; ++c) a.set(lead, c, f.mul(a.at(lead, c), inv));
        }
        for (int r = 0; r < rows; ++r) {
            if (r == lead) continue;
            const GfElem factor = a.at(r, col);
            if (factor == 0) continue;
            for (int c = col; c < cols; ++c)
                a.set(r, c, f.sub(a.at(r, c), f.mul(factor, a.at(lead, c))));
        }
        res.pivots.push_back(col);
        ++lead;
    }
    res.rank = lead;
    return res;
}

int rank_of(const MatGF& m) { return rref(m).rank; }

MatGF stack(const MatGF& a, const MatGF& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("stack: column mismatch");
    if (a.field()->q() != b.field()->q()) throw std::invalid_argument("stack: field mismatch");
    MatGF out(a.rows() + b.rows(), a.cols(), a.field());
    for (int r = 0; r < a.rows(); ++r)
        std::memcpy(out.row_ptr(r), a.row_ptr(r), static_cast<std::size_t>(a.cols()));
    for (int r = 0; r < b.rows(); ++r)
        std::memcpy(out.row_ptr(a.rows() + r), b.row_ptr(r), static_cast<std::size_t>(b.cols()));
    return out;
}

MatGF kernel_basis(const MatGF& m) {
    const Field& f = *m.field();
    const RrefResult rr = rref(m);
    const int cols = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int p : rr.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<int> free_cols;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

    MatGF basis(static_cast<int>(free_cols.size()), cols, m.field());
    for (int bi = 0; bi < static_cast<int>(free_cols.size()); ++bi) {
        const int fc = free_cols[static_cast<std::size_t>(bi)];
        basis.set(bi, fc, 1);
        // Pivot row i reads x[pivot_i] + sum(coeff * x[free]) = 0.
        for (int i = 0; i < rr.rank; ++i)
            basis.set(bi, rr.pivots[static_cast<std::size_t>(i)], f.neg(rr.mat.at(i, fc)));
    }
    return rref(basis).mat; // canonical form, and rows are already independent
}

MatGF intersect_rowspaces(const MatGF& a, const MatGF& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("intersect: column mismatch");
    if (a.field()->q() != b.field()->q()) throw std::invalid_argument("intersect: field mismatch");
    // rowspace(a) = ker(Ka), rowspace(b) = ker(Kb); the intersection is the
    // kernel of the stacked constraint matrix.
    const MatGF ka = kernel_basis(a);
    const MatGF kb = kernel_basis(b);
    if (ka.rows() == 0) {
        // a is the full space, so the intersection is rowspace(b).
        RrefResult rb = rref(b);
        MatGF out(rb.rank, b.cols(), b.field());
        for (int r = 0; r < rb.rank; ++r)
            std::memcpy(out.row_ptr(r), rb.mat.row_ptr(r), static_cast<std::size_t>(b.cols()));
        return out;
    }
    if (kb.rows() == 0) {
        RrefResult ra = rref(a);
        MatGF out(ra.rank, a.cols(), a.field());
        for (int r = 0; r < ra.rank; ++r)
            std::memcpy(out.row_ptr(r), ra.mat.row_ptr(r), static_cast<std::size_t>(a.cols()));
        return out;
    }
    return kernel_basis(stack(ka, kb));
}

GfElem det(const MatGF& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    const Field& f = *m.field();
    const int n = m.rows();
    MatGF a = m;
    GfElem result = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r) {
            if (a.at(r, col) != 0) { pivot = r; break; }
        }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) {
                GfElem tmp = a.at(col, c);
                a.set(col, c, a.at(pivot, c));
                a.set(pivot, c, tmp);
            }
            result = f.neg(result); // row swap flips the sign
        }
        result = f.mul(result, a.at(col, col));
        const GfElem inv = f.inv(a.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            const GfElem factor = f.mul(a.at(r, col), inv);
            if (factor == 0) continue;
            for (int c = col; c < n; ++c)
                a.set(r, c, f.sub(a.at(r, c), f.mul(factor, a.at(col, c))));
        }
    }
    return result;
}

std::vector<GfElem> k_minors(const MatGF& m) {
    const int k = m.rows(), n = m.cols();
    if (k > n) throw std::invalid_argument("k_minors: more rows than columns");
    std::vector<GfElem> out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    MatGF sub(k, k, m.field());
    while (true) {
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                sub.set(r, c, m.at(r, idx[static_cast<std::size_t>(c)]));
        out.push_back(det(sub));
        // next k-subset of {0..n-1} in lexicographic order
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

std::string matrix_to_json(const MatGF& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(static_cast<int>(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows.dump();
}

} // namespace codegraph
