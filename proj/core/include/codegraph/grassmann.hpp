#pragma once

#include "codegraph/code.hpp"
#include "codegraph/field.hpp"
#include "codegraph/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace codegraph {

// Hard ceiling on how many subspaces an enumeration call may materialize
// before it aborts with budget_error.
inline constexpr std::uint64_t kDefaultSubspaceCap = 1'000'000;

// C(n, k); throws std::overflow_error when the value does not fit in 64 bits.
std::uint64_t binomial(int n, int k);

// Number of k-dimensional subspaces of an n-dimensional space over a field
// with q elements; throws std::overflow_error when it does not fit in 64 bits.
std::uint64_t gaussian_binomial(int n, int k, int q);

// Rank of a strictly increasing k-subset of {0,...,n-1} in lexicographic
// subset order (the order used by k_minors and plucker).
std::uint64_t subset_lex_rank(const std::vector<int>& subset, int n);

// A set of k-dimensional subspaces of F_q^n, each held once via its canonical
// generator matrix, with O(1) lookup by that matrix. Order is the insertion
// order of the producing enumerator and is part of the contract: graph vertex
// ids index into this vector.
class SubspaceFamily {
public:
    SubspaceFamily(int n, int k, FieldPtr field);

    int n() const { return n_; }
    int k() const { return k_; }
    const FieldPtr& field() const { return field_; }

    std::size_t size() const { return members_.size(); }
    const LinearCode& operator[](std::size_t i) const { return members_[i]; }
    const std::vector<LinearCode>& members() const { return members_; }

    // Index of the member with this canonical generator matrix, if any.
    std::optional<std::uint32_t> find(const MatGF& canonical_gen) const;
    std::optional<std::uint32_t> find(const LinearCode& code) const;

    // Appends a member (its generator must be new to the family).
    void add(LinearCode code);

private:
    int n_ = 0;
    int k_ = 0;
    FieldPtr field_;
    std::vector<LinearCode> members_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// Every k-dimensional subspace of F_q^n (0 < k < n), in a fixed order:
// reduced-echelon pivot column sets ascending lexicographically, and for each
// pivot set the free entries run through base-q values with the last free
// cell (row-major order) varying fastest. Throws budget_error when the
// subspace count exceeds cap.
SubspaceFamily enumerate_subspaces(int n, int k, const FieldPtr& field,
                                   std::uint64_t cap = kDefaultSubspaceCap);

// The members of enumerate_subspaces whose dual minimum distance exceeds t,
// order inherited. Requires 0 <= t <= k.
SubspaceFamily enumerate_class(int n, int k, int t, const FieldPtr& field,
                               std::uint64_t cap = kDefaultSubspaceCap);

// A line of the subspace geometry: the q+1 k-spaces squeezed between a fixed
// (k-1)-space (bottom) and a fixed (k+1)-space (top) that contains it.
struct PencilLine {
    MatGF bottom;                   // canonical (k-1) x n basis; 0 x n when k == 1
    MatGF top;                      // canonical (k+1) x n basis
    std::vector<LinearCode> points; // the q+1 intermediate k-spaces
};

// The unique line through two adjacent k-spaces (intersection of dimension
// k-1). Throws std::invalid_argument when x and y are not adjacent.
PencilLine pencil(const LinearCode& x, const LinearCode& y);

// All lines of the level-t geometry on k-spaces of F_q^n: one line per pair
// of a (k-1)-space D with dual minimum distance above t and a (k+1)-space
// containing D. For k == 1 the bottom is the zero space, which qualifies only
// at t == 0; for t == k the line set is empty because no (k-1)-space has dual
// distance k+1. Throws budget_error when the line count exceeds cap.
std::vector<PencilLine> geometry_lines(int n, int k, int t, const FieldPtr& field,
                                       std::uint64_t cap = kDefaultSubspaceCap);

// Plucker coordinates of a k-space: the C(n,k) maximal minors of its
// canonical generator in lexicographic column-subset order, scaled so the
// first nonzero entry is 1.
std::vector<GfElem> plucker(const LinearCode& x);

// Attempts to realize a nonzero coordinate vector (length C(n,k)) as the
// Plucker image of a k-space: reconstructs a candidate basis from the
// coordinates and accepts only if its Plucker image reproduces the input up
// to scale. Returns the space on success.
std::optional<LinearCode> plucker_preimage(const std::vector<GfElem>& coords,
                                           int n, int k, const FieldPtr& field);

struct PluckerLineResult {
    bool in_grassmann_image = false;   // every point of the line is an image point
    std::vector<LinearCode> preimages; // spaces for the points that are, in line order
};

// Takes the projective line through the Plucker images P, Q of two distinct
// k-spaces (points P + lambda Q for lambda = 0..q-1, then Q) and reports
// which of its q+1 points are themselves Plucker images of k-spaces.
PluckerLineResult plucker_line_in_variety(const LinearCode& x, const LinearCode& y);

} // namespace codegraph
