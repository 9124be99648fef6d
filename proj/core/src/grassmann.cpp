#include "codegraph/grassmann.hpp"

#include "codegraph/errors.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace codegraph {
namespace {

constexpr unsigned __int128 kMax128 = ~static_cast<unsigned __int128>(0);
constexpr std::uint64_t kMax64 = std::numeric_limits<std::uint64_t>::max();

[[noreturn]] void overflow(const char* what) { throw std::overflow_error(what); }

// Advances a strictly increasing k-subset of {0,...,n-1} to its lexicographic
// successor; returns false after the last subset.
bool next_subset(std::vector<int>& s, int n) {
    const int k = static_cast<int>(s.size());
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) return false;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    return true;
}

// All reduced-echelon r x n matrices of rank r, pivot sets lexicographically
// ascending, free entries in base-q odometer order with the last free cell
// (row-major) fastest. This is the member order of enumerate_subspaces.
std::vector<MatGF> enumerate_rref(int r, int n, const FieldPtr& field) {
    std::vector<MatGF> out;
    const int q = field->q();
    std::vector<int> piv(r);
    for (int i = 0; i < r; ++i) piv[i] = i;
    do {
        std::vector<char> is_piv(n, 0);
        for (int p : piv) is_piv[p] = 1;
        std::vector<std::pair<int, int>> free_cells;
        for (int i = 0; i < r; ++i)
            for (int j = piv[i] + 1; j < n; ++j)
                if (!is_piv[j]) free_cells.emplace_back(i, j);
        std::vector<GfElem> vals(free_cells.size(), 0);
        while (true) {
            MatGF g(r, n, field);
            for (int i = 0; i < r; ++i) g.set(i, piv[i], 1);
            for (std::size_t c = 0; c < free_cells.size(); ++c)
                g.set(free_cells[c].first, free_cells[c].second, vals[c]);
            out.push_back(std::move(g));
            int pos = static_cast<int>(vals.size()) - 1;
            while (pos >= 0) {
                if (vals[pos] + 1 < q) {
                    vals[pos] = static_cast<GfElem>(vals[pos] + 1);
                    break;
                }
                vals[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    } while (next_subset(piv, n));
    return out;
}

MatGF row_matrix(const std::vector<GfElem>& row, const FieldPtr& field) {
    MatGF m(1, static_cast<int>(row.size()), field);
    for (std::size_t j = 0; j < row.size(); ++j)
        m.set(0, static_cast<int>(j), row[j]);
    return m;
}

std::vector<GfElem> matrix_row(const MatGF& m, int r) {
    std::vector<GfElem> v(static_cast<std::size_t>(m.cols()));
    for (int j = 0; j < m.cols(); ++j) v[static_cast<std::size_t>(j)] = m.at(r, j);
    return v;
}

// Appends one extra row to a matrix (used to extend partial bases).
MatGF with_row(const MatGF& base, const std::vector<GfElem>& row, const FieldPtr& field) {
    MatGF m(base.rows() + 1, base.cols(), field);
    for (int i = 0; i < base.rows(); ++i)
        for (int j = 0; j < base.cols(); ++j) m.set(i, j, base.at(i, j));
    for (int j = 0; j < base.cols(); ++j) m.set(base.rows(), j, row[static_cast<std::size_t>(j)]);
    return m;
}

// The q+1 k-spaces between bottom (k-1 independent rows) and the space
// spanned by bottom + u + w, ordered u + lambda w for lambda = 0..q-1, then w.
std::vector<LinearCode> pencil_points(const MatGF& bottom, const std::vector<GfElem>& u,
                                      const std::vector<GfElem>& w, const FieldPtr& field) {
    const Field& f = *field;
    std::vector<LinearCode> points;
    points.reserve(static_cast<std::size_t>(f.q()) + 1);
    for (int lam = 0; lam < f.q(); ++lam) {
        std::vector<GfElem> row(u.size());
        for (std::size_t j = 0; j < u.size(); ++j)
            row[j] = f.add(u[j], f.mul(static_cast<GfElem>(lam), w[j]));
        points.push_back(LinearCode::from_matrix(with_row(bottom, row, field)));
    }
    points.push_back(LinearCode::from_matrix(with_row(bottom, w, field)));
    return points;
}

std::vector<GfElem> normalize_projective(std::vector<GfElem> v, const Field& f) {
    for (GfElem x : v) {
        if (x != 0) {
            if (x != 1) {
                const GfElem s = f.inv(x);
                for (GfElem& y : v) y = f.mul(s, y);
            }
            return v;
        }
    }
    throw std::invalid_argument("projective normalization of the zero vector");
}

} // namespace

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > kMax64) overflow("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t gaussian_binomial(int n, int k, int q) {
    if (q < 2) throw std::invalid_argument("gaussian_binomial needs q >= 2");
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    if (k == 0) return 1;
    if (k == 1) {
        unsigned __int128 sum = 0, pw = 1;
        for (int i = 0; i < n; ++i) {
            sum += pw;
            if (sum > kMax64) overflow("subspace count overflows 64 bits");
            if (i + 1 < n) {
                if (pw > kMax128 / static_cast<unsigned>(q))
                    overflow("subspace count overflows 64 bits");
                pw *= static_cast<unsigned>(q);
            }
        }
        return static_cast<std::uint64_t>(sum);
    }
    std::vector<unsigned __int128> pw(static_cast<std::size_t>(n) + 1, 1);
    for (int m = 1; m <= n; ++m) {
        if (pw[static_cast<std::size_t>(m) - 1] > kMax128 / static_cast<unsigned>(q))
            overflow("subspace count overflows 64 bits");
        pw[static_cast<std::size_t>(m)] = pw[static_cast<std::size_t>(m) - 1] * static_cast<unsigned>(q);
    }
    // After the symmetry reduction the partial products are themselves
    // subspace counts and increase monotonically, so checking each one
    // against 2^64 never rejects a representable final value.
    unsigned __int128 acc = 1;
    for (int i = 0; i < k; ++i) {
        const unsigned __int128 num = pw[static_cast<std::size_t>(n - i)] - 1;
        const unsigned __int128 den = pw[static_cast<std::size_t>(i) + 1] - 1;
        if (acc > kMax128 / num) overflow("subspace count overflows 64 bits");
        acc = acc * num / den;
        if (acc > kMax64) overflow("subspace count overflows 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t subset_lex_rank(const std::vector<int>& subset, int n) {
    const int k = static_cast<int>(subset.size());
    int prev = -1;
    for (int c : subset) {
        if (c <= prev || c >= n)
            throw std::invalid_argument("subset must be strictly increasing within [0, n)");
        prev = c;
    }
    std::uint64_t rank = 0;
    prev = -1;
    for (int i = 0; i < k; ++i) {
        for (int x = prev + 1; x < subset[static_cast<std::size_t>(i)]; ++x)
            rank += binomial(n - 1 - x, k - 1 - i);
        prev = subset[static_cast<std::size_t>(i)];
    }
    return rank;
}

SubspaceFamily::SubspaceFamily(int n, int k, FieldPtr field)
    : n_(n), k_(k), field_(std::move(field)) {
    if (!field_) throw std::invalid_argument("SubspaceFamily needs a field");
    if (n_ < 1 || k_ < 1 || k_ >= n_)
        throw std::invalid_argument("SubspaceFamily needs 0 < k < n");
}

std::optional<std::uint32_t> SubspaceFamily::find(const MatGF& canonical_gen) const {
    const auto it = index_.find(canonical_gen.bytes());
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> SubspaceFamily::find(const LinearCode& code) const {
    return find(code.generator());
}

void SubspaceFamily::add(LinearCode code) {
    if (code.n() != n_ || code.k() != k_ || code.q() != field_->q())
        throw std::invalid_argument("family member has mismatched parameters");
    const auto [it, inserted] =
        index_.emplace(code.generator().bytes(), static_cast<std::uint32_t>(members_.size()));
    if (!inserted) throw std::invalid_argument("duplicate family member");
    members_.push_back(std::move(code));
}

SubspaceFamily enumerate_subspaces(int n, int k, const FieldPtr& field, std::uint64_t cap) {
    if (!field) throw std::invalid_argument("enumerate_subspaces needs a field");
    if (n < 1 || k < 1 || k >= n)
        throw std::invalid_argument("enumerate_subspaces needs 0 < k < n");
    const std::uint64_t total = gaussian_binomial(n, k, field->q());
    if (total > cap) throw budget_error("subspace", cap, total);
    SubspaceFamily fam(n, k, field);
    for (MatGF& g : enumerate_rref(k, n, field))
        fam.add(LinearCode::from_matrix(g));
    return fam;
}

SubspaceFamily enumerate_class(int n, int k, int t, const FieldPtr& field, std::uint64_t cap) {
    if (t < 0 || t > k)
        throw std::invalid_argument("class level t must lie in [0, k]");
    SubspaceFamily all = enumerate_subspaces(n, k, field, cap);
    SubspaceFamily fam(n, k, field);
    for (const LinearCode& c : all.members())
        if (c.in_class(t)) fam.add(c);
    return fam;
}

PencilLine pencil(const LinearCode& x, const LinearCode& y) {
    if (x.q() != y.q() || x.n() != y.n() || x.k() != y.k())
        throw std::invalid_argument("pencil needs two k-spaces of the same ambient space");
    const FieldPtr& field = x.field();
    const int k = x.k();
    const RrefResult joint = rref(stack(x.generator(), y.generator()));
    if (joint.rank != k + 1)
        throw std::invalid_argument("pencil needs adjacent spaces (intersection of dimension k-1)");
    MatGF top(k + 1, x.n(), field);
    for (int i = 0; i < k + 1; ++i)
        for (int j = 0; j < x.n(); ++j) top.set(i, j, joint.mat.at(i, j));
    const MatGF bottom = intersect_rowspaces(x.generator(), y.generator());

    // First two rows of the top basis that extend the bottom independently.
    int ui = -1, wi = -1;
    for (int i = 0; i < k + 1 && wi < 0; ++i) {
        const std::vector<GfElem> row = matrix_row(top, i);
        if (ui < 0) {
            if (rank_of(with_row(bottom, row, field)) == bottom.rows() + 1) ui = i;
        } else {
            const MatGF ext = with_row(bottom, matrix_row(top, ui), field);
            if (rank_of(with_row(ext, row, field)) == bottom.rows() + 2) wi = i;
        }
    }
    if (ui < 0 || wi < 0) throw std::logic_error("pencil could not extend the intersection basis");

    PencilLine line{bottom, top,
                    pencil_points(bottom, matrix_row(top, ui), matrix_row(top, wi), field)};
    return line;
}

std::vector<PencilLine> geometry_lines(int n, int k, int t, const FieldPtr& field,
                                       std::uint64_t cap) {
    if (!field) throw std::invalid_argument("geometry_lines needs a field");
    if (n < 1 || k < 1 || k >= n)
        throw std::invalid_argument("geometry_lines needs 0 < k < n");
    if (t < 0 || t > k)
        throw std::invalid_argument("class level t must lie in [0, k]");
    std::vector<PencilLine> lines;
    if (k == 1) {
        // The only candidate bottom is the zero space, which qualifies only
        // at level 0; its lines are all 2-spaces of the ambient space.
        if (t != 0) return lines;
        const std::uint64_t total = gaussian_binomial(n, 2, field->q());
        if (total > cap) throw budget_error("pencil-line", cap, total);
        const MatGF bottom(0, n, field);
        for (const MatGF& top : enumerate_rref(2, n, field))
            lines.push_back(
                PencilLine{bottom, top,
                           pencil_points(bottom, matrix_row(top, 0), matrix_row(top, 1), field)});
        return lines;
    }
    if (t > k - 1) return lines; // no (k-1)-space has dual distance k+1
    const SubspaceFamily bottoms = enumerate_class(n, k - 1, t, field, cap);
    const int m = n - k + 1; // dimension of the quotient by a bottom
    const std::uint64_t per_bottom = gaussian_binomial(m, 2, field->q());
    if (!bottoms.members().empty()) {
        if (per_bottom > kMax64 / bottoms.size())
            throw budget_error("pencil-line", cap, kMax64);
        const std::uint64_t total = per_bottom * bottoms.size();
        if (total > cap) throw budget_error("pencil-line", cap, total);
    }
    const std::vector<MatGF> quotient_planes = enumerate_rref(2, m, field);
    for (const LinearCode& d : bottoms.members()) {
        const MatGF& bottom = d.generator();
        // Coordinates not used as pivots of the bottom lift the quotient:
        // the corresponding unit vectors complete any bottom basis.
        std::vector<char> is_piv(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < bottom.rows(); ++i)
            for (int j = 0; j < n; ++j)
                if (bottom.at(i, j) != 0) {
                    is_piv[static_cast<std::size_t>(j)] = 1;
                    break;
                }
        std::vector<int> comp;
        comp.reserve(static_cast<std::size_t>(m));
        for (int j = 0; j < n; ++j)
            if (!is_piv[static_cast<std::size_t>(j)]) comp.push_back(j);
        for (const MatGF& plane : quotient_planes) {
            std::vector<GfElem> u(static_cast<std::size_t>(n), 0),
                w(static_cast<std::size_t>(n), 0);
            for (int c = 0; c < m; ++c) {
                u[static_cast<std::size_t>(comp[static_cast<std::size_t>(c)])] = plane.at(0, c);
                w[static_cast<std::size_t>(comp[static_cast<std::size_t>(c)])] = plane.at(1, c);
            }
            MatGF top_raw = with_row(with_row(bottom, u, field), w, field);
            const RrefResult rr = rref(top_raw);
            if (rr.rank != k + 1) throw std::logic_error("lifted plane failed to extend the bottom");
            lines.push_back(PencilLine{bottom, rr.mat, pencil_points(bottom, u, w, field)});
        }
    }
    return lines;
}

std::vector<GfElem> plucker(const LinearCode& x) {
    return normalize_projective(k_minors(x.generator()), *x.field());
}

std::optional<LinearCode> plucker_preimage(const std::vector<GfElem>& coords, int n, int k,
                                           const FieldPtr& field) {
    if (!field) throw std::invalid_argument("plucker_preimage needs a field");
    if (n < 1 || k < 1 || k >= n)
        throw std::invalid_argument("plucker_preimage needs 0 < k < n");
    if (coords.size() != binomial(n, k))
        throw std::invalid_argument("coordinate vector must have length C(n,k)");
    const Field& f = *field;
    for (GfElem x : coords)
        if (x >= f.q()) throw std::invalid_argument("coordinate outside the field");
    const std::vector<GfElem> w = normalize_projective(coords, f); // throws on zero vector

    // First subset with a nonzero coordinate, in the shared lexicographic order.
    std::vector<int> s0(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) s0[static_cast<std::size_t>(i)] = i;
    std::size_t idx = 0;
    while (w[idx] == 0) {
        if (!next_subset(s0, n)) throw std::logic_error("nonzero vector had no nonzero entry");
        ++idx;
    }

    // Candidate basis: row r, column j carries the coordinate of s0 with its
    // r-th element replaced by j, with the sign of the sort permutation.
    MatGF b(k, n, field);
    for (int r = 0; r < k; ++r) {
        for (int j = 0; j < n; ++j) {
            bool repeat = false;
            int inversions = 0;
            std::vector<int> tup(s0);
            tup[static_cast<std::size_t>(r)] = j;
            for (int a = 0; a < k && !repeat; ++a) {
                if (a == r) continue;
                if (tup[static_cast<std::size_t>(a)] == j) repeat = true;
                if (a < r && tup[static_cast<std::size_t>(a)] > j) ++inversions;
                if (a > r && tup[static_cast<std::size_t>(a)] < j) ++inversions;
            }
            if (repeat) continue; // entry stays 0
            std::sort(tup.begin(), tup.end());
            GfElem v = w[subset_lex_rank(tup, n)];
            if (inversions % 2 != 0) v = f.neg(v);
            b.set(r, j, v);
        }
    }
    if (rank_of(b) != k) return std::nullopt;
    LinearCode candidate = LinearCode::from_matrix(b);
    if (plucker(candidate) != w) return std::nullopt;
    return candidate;
}

PluckerLineResult plucker_line_in_variety(const LinearCode& x, const LinearCode& y) {
    if (x.q() != y.q() || x.n() != y.n() || x.k() != y.k())
        throw std::invalid_argument("line needs two k-spaces of the same ambient space");
    if (x == y) throw std::invalid_argument("line needs two distinct spaces");
    const FieldPtr& field = x.field();
    const Field& f = *field;
    const std::vector<GfElem> p = plucker(x);
    const std::vector<GfElem> q = plucker(y);
    if (p == q) throw std::logic_error("distinct spaces produced equal image points");

    PluckerLineResult res;
    std::size_t hits = 0;
    for (int lam = 0; lam <= f.q(); ++lam) {
        std::vector<GfElem> pt(p.size());
        if (lam == f.q()) {
            pt = q;
        } else {
            for (std::size_t i = 0; i < p.size(); ++i)
                pt[i] = f.add(p[i], f.mul(static_cast<GfElem>(lam), q[i]));
        }
        if (auto pre = plucker_preimage(pt, x.n(), x.k(), field)) {
            ++hits;
            res.preimages.push_back(std::move(*pre));
        }
    }
    res.in_grassmann_image = hits == static_cast<std::size_t>(f.q()) + 1;
    return res;
}

} // namespace codegraph
