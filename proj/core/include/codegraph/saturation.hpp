#pragma once

#include "codegraph/code.hpp"
#include "codegraph/field.hpp"

#include <cstdint>
#include <vector>

namespace codegraph {

// Hard ceiling on the number of projective points a space may materialize.
inline constexpr std::uint64_t kDefaultPointCap = 1u << 20;

// Node budget for the exact minimum-saturating-set search before it falls
// back to the greedy bound.
inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

// Scales a nonzero vector so its first nonzero entry is 1 (the canonical
// representative of its projective point). Throws on the zero vector.
std::vector<GfElem> normalize_point(std::vector<GfElem> v, const Field& f);

// The projective space of 1-dimensional subspaces of F_q^dim, with a fixed
// point order: position of the leading 1 ascending, then the remaining
// entries read as a base-q number (earlier entry more significant) ascending.
class ProjectiveSpace {
public:
    static ProjectiveSpace make(int dim, const FieldPtr& field,
                                std::uint64_t cap = kDefaultPointCap);

    int dim() const { return dim_; } // points are vectors of this length, up to scale
    const FieldPtr& field() const { return field_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<GfElem>& point(std::uint32_t i) const { return points_[i]; }
    const std::vector<std::vector<GfElem>>& points() const { return points_; }

    // Index of the point containing v, computed arithmetically from the
    // normalized representative. Throws on the zero vector or bad length.
    std::uint32_t index_of(const std::vector<GfElem>& v) const;

private:
    ProjectiveSpace() = default;
    int dim_ = 0;
    FieldPtr field_;
    std::vector<std::vector<GfElem>> points_;
};

// A multiset of points of a projective space: sorted distinct point indices
// with multiplicities. Span machinery only ever sees the distinct support;
// multiplicity is retained because generator-matrix columns may repeat.
class ProjPointSet {
public:
    ProjPointSet() = default;
    static ProjPointSet from_indices(std::vector<std::uint32_t> indices); // multiset
    static ProjPointSet from_vectors(const ProjectiveSpace& space,
                                     const std::vector<std::vector<GfElem>>& vectors);

    std::size_t distinct_size() const { return indices_.size(); }
    std::size_t total_size() const { return total_; }
    const std::vector<std::uint32_t>& indices() const { return indices_; } // sorted distinct
    const std::vector<std::uint32_t>& multiplicities() const { return mults_; }
    bool contains(std::uint32_t index) const;
    bool is_all_points(const ProjectiveSpace& space) const;
    std::vector<std::vector<GfElem>> points(const ProjectiveSpace& space) const;

private:
    std::vector<std::uint32_t> indices_;
    std::vector<std::uint32_t> mults_;
    std::size_t total_ = 0;
};

// The columns of the canonical generator of c as points of the projective
// space over F_q^k (which must be the space passed in). Throws when a column
// is zero, i.e. when the dual minimum distance of c is 1.
ProjPointSet columns_as_points(const ProjectiveSpace& space, const LinearCode& c);

// Every point of the space, once.
ProjPointSet all_points(const ProjectiveSpace& space);

// Union of the spans of all (t+1)-subsets of the distinct points of omega;
// when omega has at most t distinct points, the span of all of them. The
// result is a plain set (all multiplicities 1).
ProjPointSet secant_span(const ProjectiveSpace& space, const ProjPointSet& omega, int t);

// Whether every point of the space lies in the span of at most t points of
// omega, i.e. the level-(t-1) secant span is everything. Requires t >= 1.
bool covers_at_level(const ProjectiveSpace& space, const ProjPointSet& omega, int t);

// Whether omega saturates exactly at level t: the level-t secant span is the
// whole space and (for t >= 1) the level-(t-1) span is not. At t == 0 this
// says the distinct points of omega are all of the space.
bool is_t_saturating(const ProjectiveSpace& space, const ProjPointSet& omega, int t);

// Whether c has no neighbor in the level-t intersection graph, decided
// geometrically: its generator columns must cover the projective space at
// level t. Requires t >= 1, k >= 2, and c in the level-t class.
bool is_isolated_geometric(const LinearCode& c, int t);

// The same question decided directly from the neighbor definition: some
// (k-1)-subspace of c in the level-t class extends to a different k-space in
// the class. Same preconditions.
bool is_isolated_direct(const LinearCode& c, int t);

// Runs both deciders and returns the shared verdict; throws std::logic_error
// if they ever disagree.
bool is_isolated(const LinearCode& c, int t);

enum class SatMode { Exact, Greedy };

struct SatMinResult {
    int size = 0;                                 // smallest size found
    int lower_bound = 0;                          // proven lower bound on the optimum
    std::vector<std::uint32_t> witness_indices;   // one witness set of that size
    std::vector<std::vector<GfElem>> witness_points;
    SatMode mode = SatMode::Exact;                // mode that produced the witness
    bool optimal = false;                         // size == optimum, proven
    std::uint64_t subsets_examined = 0;           // search nodes visited
    std::uint64_t budget = 0;                     // node budget that applied
};

// Minimum size of a point set whose level-t secant span is the whole space.
// Exact mode runs a pruned depth-first search over sets in lexicographic
// order, seeded with an analytic lower bound; if the node budget runs out it
// falls back to the greedy bound and reports optimal=false unless the greedy
// size meets the proven lower bound. Greedy mode goes straight to the greedy
// bound. Deterministic throughout.
SatMinResult min_saturating_size(const ProjectiveSpace& space, int t,
                                 SatMode mode = SatMode::Exact,
                                 std::uint64_t budget = kDefaultSearchBudget);

} // namespace codegraph
