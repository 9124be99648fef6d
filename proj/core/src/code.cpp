#include "codegraph/code.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace codegraph {

namespace {

// Searches for the smallest linearly dependent column subset of size s,
// s = 1, 2, ...; the first hit is the dual distance. Subsets are walked in
// lexicographic order with incremental elimination state per prefix so the
// witness is the lexicographically first one of minimum size.
struct ColumnSearch {
    const MatGF& gen;
    const Field& f;
    int k, n;

    // Elimination state: rows of the partial column matrix (columns become
    // rows here), reduced against earlier pivot rows.
    struct Frame {
        std::vector<GfElem> reduced; // length k, the reduced column
        int pivot = -1;              // -1 means the column was dependent
    };

    explicit ColumnSearch(const MatGF& g)
        : gen(g), f(*g.field()), k(g.rows()), n(g.cols()) {}

    // Reduces column c against the frames in `stack`; returns the frame.
    Frame reduce(const std::vector<Frame>& stack, int c) const {
        Frame fr;
        fr.reduced.resize(static_cast<std::size_t>(k));
        for (int r = 0; r < k; ++r) fr.reduced[static_cast<std::size_t>(r)] = gen.at(r, c);
        for (const Frame& prev : stack) {
            const GfElem coeff = fr.reduced[static_cast<std::size_t>(prev.pivot)];
            if (coeff == 0) continue;
            const GfElem scale = f.div(coeff, prev.reduced[static_cast<std::size_t>(prev.pivot)]);
            for (int r = 0; r < k; ++r)
                fr.reduced[static_cast<std::size_t>(r)] =
                    f.sub(fr.reduced[static_cast<std::size_t>(r)],
                          f.mul(scale, prev.reduced[static_cast<std::size_t>(r)]));
        }
        fr.pivot = -1;
        for (int r = 0; r < k; ++r) {
            if (fr.reduced[static_cast<std::size_t>(r)] != 0) { fr.pivot = r; break; }
        }
        return fr;
    }

    // Depth-first over ascending column choices; true once a dependent
    // subset of exactly `target` columns is found (chosen columns in `out`).
    bool find(int target, std::vector<Frame>& stack, std::vector<int>& out, int next_col) const {
        const int chosen = static_cast<int>(out.size());
        if (chosen == target) return false; // dependence must occur on the last pick
        for (int c = next_col; c <= n - (target - chosen); ++c) {
            Frame fr = reduce(stack, c);
            out.push_back(c);
            if (fr.pivot < 0) {
                if (chosen + 1 == target) return true; // dependent exactly here
                out.pop_back();
                continue; // dependent too early: a smaller subset would exist
            }
            if (chosen + 1 < target) {
                stack.push_back(std::move(fr));
                if (find(target, stack, out, c + 1)) return true;
                stack.pop_back();
            }
            out.pop_back();
        }
        return false;
    }

    DualDistanceProfile run() const {
        for (int s = 1; s <= k + 1; ++s) {
            std::vector<Frame> stack;
            std::vector<int> chosen;
            stack.reserve(static_cast<std::size_t>(s));
            chosen.reserve(static_cast<std::size_t>(s));
            if (find(s, stack, chosen, 0)) {
                DualDistanceProfile p;
                p.d_perp = s;
                p.witness_columns = chosen;
                return p;
            }
        }
        throw std::logic_error("dual distance search failed"); // unreachable: k+1 columns are dependent
    }
};

} // namespace

LinearCode LinearCode::from_matrix(const MatGF& gen) {
    if (gen.rows() == 0) throw std::invalid_argument("code requires at least one generator row");
    RrefResult rr = rref(gen);
    if (rr.rank == 0) throw std::invalid_argument("zero code is not representable");
    if (rr.rank >= gen.cols())
        throw std::invalid_argument("code dimension must be smaller than its length");
    LinearCode c;
    if (rr.rank == gen.rows()) {
        c.gen_ = std::move(rr.mat);
    } else {
        MatGF trimmed(rr.rank, gen.cols(), gen.field());
        for (int r = 0; r < rr.rank; ++r)
            for (int j = 0; j < gen.cols(); ++j) trimmed.set(r, j, rr.mat.at(r, j));
        c.gen_ = std::move(trimmed);
    }
    return c;
}

LinearCode::LinearCode(const LinearCode& o) : gen_(o.gen_) {
    dperp_cache_.store(o.dperp_cache_.load(std::memory_order_relaxed), std::memory_order_relaxed);
}
LinearCode& LinearCode::operator=(const LinearCode& o) {
    if (this != &o) {
        gen_ = o.gen_;
        dperp_cache_.store(o.dperp_cache_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    }
    return *this;
}
LinearCode::LinearCode(LinearCode&& o) noexcept : gen_(std::move(o.gen_)) {
    dperp_cache_.store(o.dperp_cache_.load(std::memory_order_relaxed), std::memory_order_relaxed);
}
LinearCode& LinearCode::operator=(LinearCode&& o) noexcept {
    if (this != &o) {
        gen_ = std::move(o.gen_);
        dperp_cache_.store(o.dperp_cache_.load(std::memory_order_relaxed), std::memory_order_relaxed);
    }
    return *this;
}

int LinearCode::dual_distance() const {
    int cached = dperp_cache_.load(std::memory_order_relaxed);
    if (cached != 0) return cached;
    const int d = ColumnSearch(gen_).run().d_perp;
    dperp_cache_.store(d, std::memory_order_relaxed);
    return d;
}

DualDistanceProfile LinearCode::dual_distance_profile() const {
    DualDistanceProfile p = ColumnSearch(gen_).run();
    dperp_cache_.store(p.d_perp, std::memory_order_relaxed);
    return p;
}

bool LinearCode::in_class(int t) const {
    if (t < 0 || t > k())
        throw std::invalid_argument("class parameter must satisfy 0 <= t <= k");
    if (t == 0) return true;
    return dual_distance() >= t + 1;
}

LinearCode LinearCode::dual_code() const {
    MatGF kb = kernel_basis(gen_);
    return LinearCode::from_matrix(kb);
}

std::optional<LinearCode> LinearCode::subcode_by_kernel(const std::vector<GfElem>& kernel_point) const {
    if (static_cast<int>(kernel_point.size()) != k())
        throw std::invalid_argument("kernel point must have length k");
    bool nonzero = false;
    for (GfElem v : kernel_point) {
        if (v >= field()->q()) throw std::invalid_argument("kernel point entry out of field range");
        if (v != 0) nonzero = true;
    }
    if (!nonzero) throw std::invalid_argument("kernel point must be nonzero");
    if (k() == 1) return std::nullopt;

    MatGF functional(1, k(), field());
    for (int j = 0; j < k(); ++j) functional.set(0, j, kernel_point[static_cast<std::size_t>(j)]);
    const MatGF coeffs = kernel_basis(functional); // (k-1) x k

    // Subcode generator = coeffs * gen (message-space restriction).
    const Field& f = *field();
    MatGF sub(coeffs.rows(), n(), field());
    for (int r = 0; r < coeffs.rows(); ++r)
        for (int j = 0; j < n(); ++j) {
            GfElem acc = 0;
            for (int m = 0; m < k(); ++m)
                acc = f.add(acc, f.mul(coeffs.at(r, m), gen_.at(m, j)));
            sub.set(r, j, acc);
        }
    return LinearCode::from_matrix(sub);
}

std::vector<LinearCode> LinearCode::all_subcodes() const {
    std::vector<LinearCode> out;
    if (k() < 2) return out;
    const int qq = q(), kk = k();
    // Projective points of the k-dimensional message space: one vector per
    // 1-subspace, normalized so the first nonzero coordinate is 1, ordered
    // by the position of that leading coordinate and then by the base-q
    // value of the trailing coordinates (most significant first).
    std::vector<GfElem> pt(static_cast<std::size_t>(kk), 0);
    for (int lead = 0; lead < kk; ++lead) {
        std::fill(pt.begin(), pt.end(), static_cast<GfElem>(0));
        pt[static_cast<std::size_t>(lead)] = 1;
        const int tail = kk - lead - 1;
        std::uint64_t count = 1;
        for (int i = 0; i < tail; ++i) count *= static_cast<std::uint64_t>(qq);
        for (std::uint64_t v = 0; v < count; ++v) {
            std::uint64_t rest = v;
            for (int i = tail - 1; i >= 0; --i) {
                pt[static_cast<std::size_t>(lead + 1 + i)] = static_cast<GfElem>(rest % qq);
                rest /= static_cast<std::uint64_t>(qq);
            }
            auto sc = subcode_by_kernel(pt);
            out.push_back(std::move(*sc));
        }
    }
    return out;
}

std::string code_to_json(const LinearCode& c) {
    nlohmann::ordered_json j;
    j["q"] = c.q();
    j["n"] = c.n();
    j["k"] = c.k();
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < c.k(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int col = 0; col < c.n(); ++col) row.push_back(static_cast<int>(c.generator().at(r, col)));
        rows.push_back(std::move(row));
    }
    j["gen"] = std::move(rows);
    return j.dump();
}

} // namespace codegraph
