#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "codegraph/code.hpp"
#include "codegraph/errors.hpp"
#include "codegraph/field.hpp"
#include "codegraph/graph.hpp"
#include "codegraph/matrix.hpp"
#include "codegraph/symmetry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

using namespace codegraph;

namespace {

LinearCode code(int q, const std::vector<std::vector<int>>& rows) {
    return LinearCode::from_matrix(MatGF::from_rows(field_for_order(q), rows));
}

} // namespace

TEST_CASE("monomial generators are transpositions plus one scaling") {
    auto gens2 = monomial_generators(3, field_for_order(2));
    REQUIRE(gens2.size() == 3); // (0,1), (0,2), (1,2); no scaling over GF(2)
    CHECK(gens2[0].perm == std::vector<int>{1, 0, 2});
    CHECK(gens2[1].perm == std::vector<int>{2, 1, 0});
    CHECK(gens2[2].perm == std::vector<int>{0, 2, 1});
    for (const auto& g : gens2)
        CHECK(g.scales == std::vector<GfElem>{1, 1, 1});

    auto gens3 = monomial_generators(3, field_for_order(3));
    REQUIRE(gens3.size() == 4); // three transpositions plus the column-0 scaling
    const auto& scaling = gens3.back();
    CHECK(scaling.perm == std::vector<int>{0, 1, 2});
    CHECK(scaling.scales[0] == field_for_order(3)->primitive_element());
    CHECK(scaling.scales[1] == 1);
    CHECK(scaling.scales[2] == 1);

    auto gens4 = monomial_generators(2, field_for_order(4));
    CHECK(gens4.size() == 2); // one transposition, one scaling
}

TEST_CASE("acting on a code permutes and scales its columns") {
    // Swap the first two columns.
    MonomialMap swap01{{1, 0, 2}, {1, 1, 1}};
    auto moved = act(swap01, code(2, {{1, 0, 0}, {0, 1, 1}}));
    CHECK(moved == code(2, {{1, 0, 1}, {0, 1, 0}}));

    // Scaling a column does not move the subspace's canonical form's span,
    // but can change which canonical generator represents it over GF(3).
    MonomialMap scale0{{0, 1, 2}, {2, 1, 1}};
    auto scaled = act(scale0, code(3, {{1, 0, 1}, {0, 1, 1}}));
    CHECK(scaled == code(3, {{2, 0, 1}, {0, 1, 1}}));
    CHECK(scaled.generator() == MatGF::from_rows(field_for_order(3), {{1, 0, 2}, {0, 1, 1}}));

    // Monomial maps preserve the dual distance.
    for (const auto& g : monomial_generators(4, field_for_order(3))) {
        auto c = code(3, {{1, 0, 1, 2}, {0, 1, 1, 1}});
        CHECK(act(g, c).dual_distance() == c.dual_distance());
    }

    // Malformed maps are rejected.
    CHECK_THROWS_AS(act(MonomialMap{{0, 1}, {1, 1}}, code(2, {{1, 0, 1}, {0, 1, 1}})),
                    std::invalid_argument); // wrong length
    CHECK_THROWS_AS(act(MonomialMap{{0, 0, 2}, {1, 1, 1}}, code(2, {{1, 0, 1}, {0, 1, 1}})),
                    std::invalid_argument); // not a permutation
    CHECK_THROWS_AS(act(MonomialMap{{0, 1, 2}, {0, 1, 1}}, code(2, {{1, 0, 1}, {0, 1, 1}})),
                    std::invalid_argument); // zero scale
}

TEST_CASE("orbits enumerate all monomial images breadth-first") {
    // Columns {e1, e2, e2}: the orbit moves the lone column through the
    // three positions.
    auto c = code(2, {{1, 0, 0}, {0, 1, 1}});
    auto orb = orbit(c);
    REQUIRE(orb.size() == 3);
    CHECK(orb[0] == c); // starts at the seed
    std::set<std::string> seen;
    for (const auto& m : orb) seen.insert(m.generator().bytes());
    CHECK(seen.size() == 3);
    CHECK(seen.count(code(2, {{1, 0, 1}, {0, 1, 0}}).generator().bytes()) == 1);
    CHECK(seen.count(code(2, {{1, 1, 0}, {0, 0, 1}}).generator().bytes()) == 1);

    // A code whose columns form a symmetric set is fixed by every permutation.
    CHECK(orbit(code(2, {{1, 0, 1}, {0, 1, 1}})).size() == 1);

    // The orbit budget is enforced.
    CHECK_THROWS_AS(orbit(c, 2), budget_error);
}

TEST_CASE("the length-seven simplex column set has orbit thirty") {
    // Columns are the seven points of the binary projective plane; the
    // stabilizer is its collineation group of order 168 inside the 5040
    // column permutations.
    auto simplex = code(2, {{1, 0, 0, 1, 1, 0, 1},
                            {0, 1, 0, 1, 0, 1, 1},
                            {0, 0, 1, 0, 1, 1, 1}});
    auto orb = orbit(simplex);
    CHECK(orb.size() == 30);
    for (const auto& m : orb) CHECK(m.dual_distance() == simplex.dual_distance());
}

TEST_CASE("generator images stay within one adjacency step") {
    for (int q : {2, 3, 4}) {
        auto fam = enumerate_subspaces(4, 2, field_for_order(q), 1'000'000);
        // Sample a spread of vertices rather than the whole family.
        for (std::size_t i = 0; i < fam.size(); i += 7)
            CHECK(generator_images_equal_or_adjacent(fam[i]));
    }
}

TEST_CASE("orbits stay inside their component of the span graph") {
    auto field = field_for_order(2);
    auto graph = build_graph(GraphKind::Delta, 3, 2, 1, field);
    REQUIRE(graph.vertex_count() == 4);

    auto moving = code(2, {{1, 0, 0}, {0, 1, 1}});
    CHECK(verify_orbit_in_component(moving, 1, graph));
    auto fixed = code(2, {{1, 0, 1}, {0, 1, 1}}); // orbit of size one
    CHECK(verify_orbit_in_component(fixed, 1, graph));

    // The check refuses mismatched graphs.
    auto gamma = build_graph(GraphKind::Gamma, 3, 2, 0, field);
    CHECK_THROWS_AS(verify_orbit_in_component(moving, 1, gamma), std::invalid_argument);
    CHECK_THROWS_AS(verify_orbit_in_component(moving, 0, graph), std::invalid_argument);
    auto foreign = code(2, {{1, 0, 1, 0}, {0, 1, 1, 1}});
    CHECK_THROWS_AS(verify_orbit_in_component(foreign, 1, graph), std::invalid_argument);
}

TEST_CASE("monomial maps serialize to json") {
    auto j = monomial_to_json(MonomialMap{{1, 0}, {1, 1}});
    CHECK(j.find("\"perm\"") != std::string::npos);
    CHECK(j.find("\"scales\"") != std::string::npos);
}
