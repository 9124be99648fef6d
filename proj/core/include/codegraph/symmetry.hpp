#pragma once

#include "codegraph/code.hpp"
#include "codegraph/field.hpp"
#include "codegraph/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace codegraph {

// Hard ceiling on orbit size before enumeration aborts with budget_error.
inline constexpr std::uint64_t kDefaultOrbitBudget = 100'000;

// A monomial transformation of F_q^n: column j is scaled by scales[j] and
// moved to position perm[j].
struct MonomialMap {
    std::vector<int> perm;
    std::vector<GfElem> scales;
};

// Generators of the full monomial group: all column transpositions in
// lexicographic (i, j) order, plus — when the field has more than one unit —
// the map scaling column 0 by a primitive element.
std::vector<MonomialMap> monomial_generators(int n, const FieldPtr& field);

// The image of a code under a monomial map, in canonical form.
LinearCode act(const MonomialMap& map, const LinearCode& c);

// Every code reachable from c by monomial maps, in breadth-first discovery
// order starting at c itself. Throws budget_error when the orbit exceeds
// the budget.
std::vector<LinearCode> orbit(const LinearCode& c, std::uint64_t budget = kDefaultOrbitBudget);

// Whether every generator moves c to itself or to an adjacent k-space
// (joint span of rank k or k+1). The group generators never move a space
// further than one step, which keeps orbits inside components.
bool generator_images_equal_or_adjacent(const LinearCode& c);

// Whether the whole orbit of c lies in c's component of the given graph,
// which must be the level-t span graph containing c. Throws budget_error
// when the orbit exceeds the budget and std::invalid_argument when the
// graph does not match (kind, t, parameters) or does not contain c.
bool verify_orbit_in_component(const LinearCode& c, int t, const CodeGraph& graph,
                               std::uint64_t budget = kDefaultOrbitBudget);

std::string monomial_to_json(const MonomialMap& m); // {"perm","scales"}

} // namespace codegraph
