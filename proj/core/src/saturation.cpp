#include "codegraph/saturation.hpp"

#include "codegraph/errors.hpp"
#include "codegraph/grassmann.hpp"
#include "codegraph/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace codegraph {
namespace {

bool next_subset(std::vector<std::uint32_t>& s, std::uint32_t n) {
    const int k = static_cast<int>(s.size());
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - static_cast<std::uint32_t>(k - i)) --i;
    if (i < 0) return false;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
        s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

// Fixed-width bitset over the points of one projective space.
struct BitMask {
    std::vector<std::uint64_t> w;
    explicit BitMask(std::size_t bits = 0) : w((bits + 63) / 64, 0) {}
    void set(std::uint32_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::uint32_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void or_with(const BitMask& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t word : w) c += static_cast<std::size_t>(std::popcount(word));
        return c;
    }
};

MatGF rows_from_points(const ProjectiveSpace& space, const std::vector<std::uint32_t>& idx) {
    MatGF m(static_cast<int>(idx.size()), space.dim(), space.field());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const std::vector<GfElem>& p = space.point(idx[r]);
        for (int j = 0; j < space.dim(); ++j) m.set(static_cast<int>(r), j, p[static_cast<std::size_t>(j)]);
    }
    return m;
}

// Marks every projective point of the row space of the given points.
void span_into(const ProjectiveSpace& space, const std::vector<std::uint32_t>& idx, BitMask& out) {
    if (idx.empty()) return;
    const RrefResult rr = rref(rows_from_points(space, idx));
    const Field& f = *space.field();
    const int rho = rr.rank;
    const int dim = space.dim();
    std::vector<GfElem> vec(static_cast<std::size_t>(dim));
    // One normalized coefficient tuple per projective point of the span:
    // leading coefficient 1 at row i, earlier rows 0, later rows free.
    for (int lead = 0; lead < rho; ++lead) {
        const int tail = rho - 1 - lead;
        std::uint64_t combos = 1;
        for (int i = 0; i < tail; ++i) combos *= static_cast<std::uint64_t>(f.q());
        for (std::uint64_t v = 0; v < combos; ++v) {
            for (int j = 0; j < dim; ++j) vec[static_cast<std::size_t>(j)] = rr.mat.at(lead, j);
            std::uint64_t rest = v;
            for (int r = rho - 1; r > lead; --r) {
                const GfElem c = static_cast<GfElem>(rest % static_cast<std::uint64_t>(f.q()));
                rest /= static_cast<std::uint64_t>(f.q());
                if (c != 0)
                    for (int j = 0; j < dim; ++j)
                        vec[static_cast<std::size_t>(j)] =
                            f.add(vec[static_cast<std::size_t>(j)], f.mul(c, rr.mat.at(r, j)));
            }
            out.set(space.index_of(vec));
        }
    }
}

MatGF with_row(const MatGF& base, const std::vector<GfElem>& row, const FieldPtr& field) {
    MatGF m(base.rows() + 1, base.cols(), field);
    for (int i = 0; i < base.rows(); ++i)
        for (int j = 0; j < base.cols(); ++j) m.set(i, j, base.at(i, j));
    for (int j = 0; j < base.cols(); ++j) m.set(base.rows(), j, row[static_cast<std::size_t>(j)]);
    return m;
}

void require_isolation_input(const LinearCode& c, int t) {
    if (c.k() < 2) throw std::invalid_argument("isolation test needs dimension at least 2");
    if (t < 1) throw std::invalid_argument("isolation test needs level t >= 1");
    if (!c.in_class(t)) // also validates t <= k
        throw std::invalid_argument("isolation test needs a member of the level-t class");
}

} // namespace

std::vector<GfElem> normalize_point(std::vector<GfElem> v, const Field& f) {
    for (GfElem x : v) {
        if (x != 0) {
            if (x != 1) {
                const GfElem s = f.inv(x);
                for (GfElem& y : v) y = f.mul(s, y);
            }
            return v;
        }
    }
    throw std::invalid_argument("the zero vector is not a projective point");
}

ProjectiveSpace ProjectiveSpace::make(int dim, const FieldPtr& field, std::uint64_t cap) {
    if (!field) throw std::invalid_argument("ProjectiveSpace needs a field");
    if (dim < 1) throw std::invalid_argument("ProjectiveSpace needs dim >= 1");
    const std::uint64_t total = gaussian_binomial(dim, 1, field->q());
    if (total > cap) throw budget_error("projective-point", cap, total);
    ProjectiveSpace s;
    s.dim_ = dim;
    s.field_ = field;
    s.points_.reserve(total);
    const int q = field->q();
    for (int lead = 0; lead < dim; ++lead) {
        const int tail = dim - 1 - lead;
        std::uint64_t combos = 1;
        for (int i = 0; i < tail; ++i) combos *= static_cast<std::uint64_t>(q);
        for (std::uint64_t v = 0; v < combos; ++v) {
            std::vector<GfElem> p(static_cast<std::size_t>(dim), 0);
            p[static_cast<std::size_t>(lead)] = 1;
            std::uint64_t rest = v;
            for (int j = dim - 1; j > lead; --j) { // earlier entries more significant
                p[static_cast<std::size_t>(j)] = static_cast<GfElem>(rest % static_cast<std::uint64_t>(q));
                rest /= static_cast<std::uint64_t>(q);
            }
            s.points_.push_back(std::move(p));
        }
    }
    return s;
}

std::uint32_t ProjectiveSpace::index_of(const std::vector<GfElem>& v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("point has the wrong length");
    const std::vector<GfElem> p = normalize_point(v, *field_);
    const std::uint64_t q = static_cast<std::uint64_t>(field_->q());
    int lead = 0;
    while (p[static_cast<std::size_t>(lead)] == 0) ++lead;
    // offset of the lead block (earlier leads have larger blocks), then the
    // tail read as a base-q number with earlier entries more significant
    std::uint64_t idx = 0;
    std::uint64_t block = 1;
    for (int i = 0; i < dim_ - 1; ++i) block *= q; // block size at lead 0
    for (int l = 0; l < lead; ++l) {
        idx += block;
        block /= q;
    }
    std::uint64_t value = 0;
    for (int j = lead + 1; j < dim_; ++j)
        value = value * q + p[static_cast<std::size_t>(j)];
    return static_cast<std::uint32_t>(idx + value);
}

ProjPointSet ProjPointSet::from_indices(std::vector<std::uint32_t> indices) {
    ProjPointSet s;
    s.total_ = indices.size();
    std::sort(indices.begin(), indices.end());
    for (std::uint32_t i : indices) {
        if (!s.indices_.empty() && s.indices_.back() == i) {
            ++s.mults_.back();
        } else {
            s.indices_.push_back(i);
            s.mults_.push_back(1);
        }
    }
    return s;
}

ProjPointSet ProjPointSet::from_vectors(const ProjectiveSpace& space,
                                        const std::vector<std::vector<GfElem>>& vectors) {
    std::vector<std::uint32_t> idx;
    idx.reserve(vectors.size());
    for (const auto& v : vectors) idx.push_back(space.index_of(v));
    return from_indices(std::move(idx));
}

bool ProjPointSet::contains(std::uint32_t index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool ProjPointSet::is_all_points(const ProjectiveSpace& space) const {
    return indices_.size() == space.size();
}

std::vector<std::vector<GfElem>> ProjPointSet::points(const ProjectiveSpace& space) const {
    std::vector<std::vector<GfElem>> out;
    out.reserve(indices_.size());
    for (std::uint32_t i : indices_) out.push_back(space.point(i));
    return out;
}

ProjPointSet columns_as_points(const ProjectiveSpace& space, const LinearCode& c) {
    if (space.dim() != c.k() || space.field()->q() != c.q())
        throw std::invalid_argument("space does not match the code's column space");
    std::vector<std::uint32_t> idx;
    idx.reserve(static_cast<std::size_t>(c.n()));
    for (int j = 0; j < c.n(); ++j) {
        const std::vector<GfElem> col = c.generator().column(j);
        bool zero = true;
        for (GfElem x : col)
            if (x != 0) { zero = false; break; }
        if (zero) throw std::invalid_argument("generator has a zero column");
        idx.push_back(space.index_of(col));
    }
    return ProjPointSet::from_indices(std::move(idx));
}

ProjPointSet all_points(const ProjectiveSpace& space) {
    std::vector<std::uint32_t> idx(space.size());
    for (std::uint32_t i = 0; i < space.size(); ++i) idx[i] = i;
    return ProjPointSet::from_indices(std::move(idx));
}

ProjPointSet secant_span(const ProjectiveSpace& space, const ProjPointSet& omega, int t) {
    if (t < 0) throw std::invalid_argument("secant span level must be nonnegative");
    BitMask covered(space.size());
    const std::vector<std::uint32_t>& pts = omega.indices();
    if (pts.size() <= static_cast<std::size_t>(t)) {
        span_into(space, pts, covered);
    } else {
        std::vector<std::uint32_t> members(static_cast<std::size_t>(t) + 1);
        std::vector<std::uint32_t> sel(static_cast<std::size_t>(t) + 1);
        for (std::uint32_t i = 0; i <= static_cast<std::uint32_t>(t); ++i) sel[i] = i;
        do {
            for (std::size_t i = 0; i < sel.size(); ++i) members[i] = pts[sel[i]];
            span_into(space, members, covered);
        } while (next_subset(sel, static_cast<std::uint32_t>(pts.size())));
    }
    std::vector<std::uint32_t> idx;
    for (std::uint32_t i = 0; i < space.size(); ++i)
        if (covered.test(i)) idx.push_back(i);
    return ProjPointSet::from_indices(std::move(idx));
}

bool covers_at_level(const ProjectiveSpace& space, const ProjPointSet& omega, int t) {
    if (t < 1) throw std::invalid_argument("coverage level must be at least 1");
    return secant_span(space, omega, t - 1).is_all_points(space);
}

bool is_t_saturating(const ProjectiveSpace& space, const ProjPointSet& omega, int t) {
    if (t < 0) throw std::invalid_argument("saturation level must be nonnegative");
    if (t == 0) return omega.is_all_points(space);
    return secant_span(space, omega, t).is_all_points(space) &&
           !secant_span(space, omega, t - 1).is_all_points(space);
}

bool is_isolated_geometric(const LinearCode& c, int t) {
    require_isolation_input(c, t);
    const ProjectiveSpace space = ProjectiveSpace::make(c.k(), c.field());
    return covers_at_level(space, columns_as_points(space, c), t);
}

bool is_isolated_direct(const LinearCode& c, int t) {
    require_isolation_input(c, t);
    if (t > c.k() - 1) return true; // no (k-1)-subspace can sit in the class
    const int n = c.n();
    const int m = n - c.k() + 1; // codimension of a (k-1)-subspace, plus one
    const ProjectiveSpace quotient = ProjectiveSpace::make(m, c.field());
    for (const LinearCode& d : c.all_subcodes()) {
        if (!d.in_class(t)) continue;
        const MatGF& bottom = d.generator();
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
        for (const std::vector<GfElem>& qp : quotient.points()) {
            std::vector<GfElem> lift(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < m; ++i)
                lift[static_cast<std::size_t>(comp[static_cast<std::size_t>(i)])] = qp[static_cast<std::size_t>(i)];
            const LinearCode y = LinearCode::from_matrix(with_row(bottom, lift, c.field()));
            if (y != c && y.in_class(t)) return false;
        }
    }
    return true;
}

bool is_isolated(const LinearCode& c, int t) {
    const bool geometric = is_isolated_geometric(c, t);
    const bool direct = is_isolated_direct(c, t);
    if (geometric != direct)
        throw std::logic_error("isolation deciders disagree on a vertex");
    return geometric;
}

namespace {

// Pruned depth-first search for the smallest set whose level-t secant span is
// the whole space, with a node budget and a deterministic greedy fallback.
class SatSearcher {
public:
    SatSearcher(const ProjectiveSpace& space, int t, std::uint64_t budget)
        : space_(space), t_(t), budget_(budget), n_(static_cast<std::uint32_t>(space.size())) {
        const int q = space_.field()->q();
        const int rho = std::min(t_ + 1, space_.dim());
        span_points_ = 0; // 1 + q + ... + q^(rho-1): points of a full-rank span
        std::uint64_t pw = 1;
        for (int i = 0; i < rho; ++i) {
            span_points_ += pw;
            pw *= static_cast<std::uint64_t>(q);
        }
        span_extra_ = span_points_ > static_cast<std::uint64_t>(t_) + 1
                          ? span_points_ - static_cast<std::uint64_t>(t_) - 1
                          : 0;
        if (t_ == 1 && n_ <= 384) {
            pair_masks_.assign(static_cast<std::size_t>(n_) * n_, BitMask());
            for (std::uint32_t a = 0; a < n_; ++a)
                for (std::uint32_t b = a + 1; b < n_; ++b) {
                    BitMask m(n_);
                    span_into(space_, {a, b}, m);
                    pair_masks_[static_cast<std::size_t>(a) * n_ + b] = m;
                }
        }
    }

    SatMinResult run(SatMode mode) {
        SatMinResult res;
        res.budget = budget_;
        res.lower_bound = analytic_lower_bound();
        if (mode == SatMode::Exact && n_ <= 65536) {
            for (int m = res.lower_bound; m <= static_cast<int>(n_); ++m) {
                prefix_.clear();
                cov_.assign(static_cast<std::size_t>(m) + 1, BitMask(n_));
                found_ = false;
                aborted_ = false;
                dfs(0, m);
                if (found_) {
                    res.size = m;
                    res.lower_bound = m;
                    res.witness_indices = witness_;
                    res.mode = SatMode::Exact;
                    res.optimal = true;
                    finish(res);
                    return res;
                }
                if (aborted_) {
                    res.lower_bound = m; // every smaller size is ruled out
                    break;
                }
                res.lower_bound = m + 1; // level m exhausted with no witness
            }
        }
        greedy(res);
        finish(res);
        return res;
    }

private:
    int analytic_lower_bound() const {
        for (int m = 1; m <= static_cast<int>(n_); ++m) {
            std::uint64_t ub;
            if (m <= t_) {
                const int q = space_.field()->q();
                const int rho = std::min(m, space_.dim());
                ub = 0;
                std::uint64_t pw = 1;
                for (int i = 0; i < rho; ++i) {
                    ub += pw;
                    pw *= static_cast<std::uint64_t>(q);
                }
            } else {
                std::uint64_t subs;
                try {
                    subs = binomial(m, t_ + 1);
                } catch (const std::overflow_error&) {
                    return m;
                }
                if (span_extra_ != 0 && subs > (std::numeric_limits<std::uint64_t>::max() -
                                                static_cast<std::uint64_t>(m)) / span_extra_)
                    return m;
                ub = static_cast<std::uint64_t>(m) + subs * span_extra_;
            }
            if (ub >= n_) return m;
        }
        return static_cast<int>(n_);
    }

    // Most new points that r further choices could cover from a set of size s.
    std::uint64_t optimistic_gain(int s, int r) const {
        std::uint64_t g = 0;
        for (int i = 0; i < r; ++i) {
            std::uint64_t subs;
            try {
                subs = binomial(s + i, t_);
            } catch (const std::overflow_error&) {
                return n_;
            }
            if (span_extra_ != 0 && subs > std::numeric_limits<std::uint64_t>::max() / (span_extra_ + 1))
                return n_;
            g += 1 + subs * span_extra_;
            if (g >= n_) return n_;
        }
        return g;
    }

    const BitMask& subset_span(std::vector<std::uint32_t> idx) {
        std::sort(idx.begin(), idx.end());
        std::string key(reinterpret_cast<const char*>(idx.data()), idx.size() * sizeof(std::uint32_t));
        auto it = span_cache_.find(key);
        if (it != span_cache_.end()) return it->second;
        BitMask m(n_);
        span_into(space_, idx, m);
        return span_cache_.emplace(std::move(key), std::move(m)).first->second;
    }

    // Coverage after appending p to the current prefix, written into cov_[d+1].
    void extend_coverage(int d, std::uint32_t p) {
        BitMask& out = cov_[static_cast<std::size_t>(d) + 1];
        out = cov_[static_cast<std::size_t>(d)];
        out.set(p);
        const int s = static_cast<int>(prefix_.size());
        if (s < t_) {
            std::vector<std::uint32_t> whole(prefix_);
            whole.push_back(p);
            span_into(space_, whole, out);
            return;
        }
        if (t_ == 1 && !pair_masks_.empty()) {
            for (std::uint32_t a : prefix_) {
                const std::uint32_t lo = std::min(a, p), hi = std::max(a, p);
                out.or_with(pair_masks_[static_cast<std::size_t>(lo) * n_ + hi]);
            }
            return;
        }
        std::vector<std::uint32_t> sel(static_cast<std::size_t>(t_));
        for (int i = 0; i < t_; ++i) sel[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
        do {
            std::vector<std::uint32_t> members(static_cast<std::size_t>(t_) + 1);
            for (int i = 0; i < t_; ++i)
                members[static_cast<std::size_t>(i)] = prefix_[sel[static_cast<std::size_t>(i)]];
            members[static_cast<std::size_t>(t_)] = p;
            out.or_with(subset_span(std::move(members)));
        } while (next_subset(sel, static_cast<std::uint32_t>(prefix_.size())));
    }

    void dfs(int d, int m) {
        if (found_ || aborted_) return;
        if (++visited_ > budget_) {
            aborted_ = true;
            return;
        }
        if (d == m) {
            if (cov_[static_cast<std::size_t>(d)].count() == n_) {
                found_ = true;
                witness_ = prefix_;
            }
            return;
        }
        const std::uint32_t first = prefix_.empty() ? 0 : prefix_.back() + 1;
        const int remaining_after = m - d - 1;
        for (std::uint32_t p = first; p + static_cast<std::uint32_t>(remaining_after) < n_; ++p) {
            extend_coverage(d, p);
            const std::size_t covered = cov_[static_cast<std::size_t>(d) + 1].count();
            if (covered + optimistic_gain(d + 1, remaining_after) < n_) continue;
            prefix_.push_back(p);
            dfs(d + 1, m);
            prefix_.pop_back();
            if (found_ || aborted_) return;
        }
    }

    void greedy(SatMinResult& res) {
        BitMask cov(n_);
        std::vector<std::uint32_t> chosen;
        while (cov.count() < n_) {
            std::uint32_t best = 0;
            std::size_t best_gain = 0;
            BitMask best_cov(n_);
            for (std::uint32_t p = 0; p < n_; ++p) {
                if (std::find(chosen.begin(), chosen.end(), p) != chosen.end()) continue;
                ++visited_;
                BitMask cand = cov;
                cand.set(p);
                if (static_cast<int>(chosen.size()) < t_) {
                    std::vector<std::uint32_t> whole(chosen);
                    whole.push_back(p);
                    span_into(space_, whole, cand);
                } else if (t_ >= 1) {
                    if (t_ == 1 && !pair_masks_.empty()) {
                        for (std::uint32_t a : chosen) {
                            const std::uint32_t lo = std::min(a, p), hi = std::max(a, p);
                            cand.or_with(pair_masks_[static_cast<std::size_t>(lo) * n_ + hi]);
                        }
                    } else {
                        std::vector<std::uint32_t> sel(static_cast<std::size_t>(t_));
                        for (int i = 0; i < t_; ++i)
                            sel[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
                        do {
                            std::vector<std::uint32_t> members(static_cast<std::size_t>(t_) + 1);
                            for (int i = 0; i < t_; ++i)
                                members[static_cast<std::size_t>(i)] = chosen[sel[static_cast<std::size_t>(i)]];
                            members[static_cast<std::size_t>(t_)] = p;
                            cand.or_with(subset_span(std::move(members)));
                        } while (next_subset(sel, static_cast<std::uint32_t>(chosen.size())));
                    }
                }
                const std::size_t gain = cand.count() - cov.count();
                if (gain > best_gain) { // ties keep the smallest index
                    best_gain = gain;
                    best = p;
                    best_cov = std::move(cand);
                }
            }
            if (best_gain == 0)
                throw std::logic_error("greedy saturation stalled before covering the space");
            chosen.push_back(best);
            cov = std::move(best_cov);
        }
        std::sort(chosen.begin(), chosen.end());
        res.size = static_cast<int>(chosen.size());
        res.witness_indices = std::move(chosen);
        res.mode = SatMode::Greedy;
        res.optimal = res.size == res.lower_bound;
    }

    void finish(SatMinResult& res) {
        res.subsets_examined = visited_;
        res.witness_points.clear();
        for (std::uint32_t i : res.witness_indices) res.witness_points.push_back(space_.point(i));
    }

    const ProjectiveSpace& space_;
    int t_;
    std::uint64_t budget_;
    std::uint32_t n_;
    std::uint64_t span_points_ = 0; // points in a full-rank span of t+1 points
    std::uint64_t span_extra_ = 0;  // its points beyond the t+1 spanning ones
    std::vector<BitMask> pair_masks_;
    std::unordered_map<std::string, BitMask> span_cache_;
    std::vector<std::uint32_t> prefix_;
    std::vector<BitMask> cov_;
    std::vector<std::uint32_t> witness_;
    bool found_ = false;
    bool aborted_ = false;
    std::uint64_t visited_ = 0;
};

} // namespace

SatMinResult min_saturating_size(const ProjectiveSpace& space, int t, SatMode mode,
                                 std::uint64_t budget) {
    if (t < 0) throw std::invalid_argument("saturation level must be nonnegative");
    if (t == 0) {
        SatMinResult res;
        res.size = static_cast<int>(space.size());
        res.lower_bound = res.size;
        res.witness_indices.resize(space.size());
        for (std::uint32_t i = 0; i < space.size(); ++i) res.witness_indices[i] = i;
        for (std::uint32_t i : res.witness_indices) res.witness_points.push_back(space.point(i));
        res.mode = SatMode::Exact;
        res.optimal = true;
        res.budget = budget;
        return res;
    }
    SatSearcher searcher(space, t, budget);
    return searcher.run(mode);
}

} // namespace codegraph
