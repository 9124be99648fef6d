#include "codegraph/symmetry.hpp"

#include "codegraph/errors.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace codegraph {
namespace {

void validate_map(const MonomialMap& map, const LinearCode& c) {
    const std::size_t n = static_cast<std::size_t>(c.n());
    if (map.perm.size() != n || map.scales.size() != n)
        throw std::invalid_argument("monomial map size does not match the code length");
    std::vector<char> seen(n, 0);
    for (int p : map.perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)])
            throw std::invalid_argument("monomial map permutation is not a permutation");
        seen[static_cast<std::size_t>(p)] = 1;
    }
    for (GfElem s : map.scales)
        if (s == 0 || s >= c.q())
            throw std::invalid_argument("monomial map scale is not a field unit");
}

} // namespace

std::vector<MonomialMap> monomial_generators(int n, const FieldPtr& field) {
    if (!field) throw std::invalid_argument("monomial generators need a field");
    if (n < 1) throw std::invalid_argument("monomial generators need n >= 1");
    std::vector<MonomialMap> gens;
    std::vector<int> identity(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) identity[static_cast<std::size_t>(i)] = i;
    const std::vector<GfElem> ones(static_cast<std::size_t>(n), 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            MonomialMap m{identity, ones};
            m.perm[static_cast<std::size_t>(i)] = j;
            m.perm[static_cast<std::size_t>(j)] = i;
            gens.push_back(std::move(m));
        }
    if (field->q() > 2) {
        MonomialMap m{identity, ones};
        m.scales[0] = field->primitive_element();
        gens.push_back(std::move(m));
    }
    return gens;
}

LinearCode act(const MonomialMap& map, const LinearCode& c) {
    validate_map(map, c);
    const Field& f = *c.field();
    const MatGF& gen = c.generator();
    MatGF out(c.k(), c.n(), c.field());
    for (int j = 0; j < c.n(); ++j) {
        const int target = map.perm[static_cast<std::size_t>(j)];
        const GfElem s = map.scales[static_cast<std::size_t>(j)];
        for (int r = 0; r < c.k(); ++r) out.set(r, target, f.mul(s, gen.at(r, j)));
    }
    return LinearCode::from_matrix(out);
}

std::vector<LinearCode> orbit(const LinearCode& c, std::uint64_t budget) {
    const std::vector<MonomialMap> gens = monomial_generators(c.n(), c.field());
    std::vector<LinearCode> found;
    std::unordered_set<std::string> seen;
    std::deque<std::size_t> frontier; // indices into found
    seen.insert(c.generator().bytes());
    found.push_back(c);
    frontier.push_back(0);
    while (!frontier.empty()) {
        const std::size_t at = frontier.front();
        frontier.pop_front();
        for (const MonomialMap& g : gens) {
            LinearCode img = act(g, found[at]);
            if (!seen.insert(img.generator().bytes()).second) continue;
            if (found.size() + 1 > budget)
                throw budget_error("orbit", budget, static_cast<std::uint64_t>(found.size()) + 1);
            frontier.push_back(found.size());
            found.push_back(std::move(img));
        }
    }
    return found;
}

bool generator_images_equal_or_adjacent(const LinearCode& c) {
    for (const MonomialMap& g : monomial_generators(c.n(), c.field())) {
        const LinearCode img = act(g, c);
        if (img != c && !delta_adjacent(c, img)) return false;
    }
    return true;
}

bool verify_orbit_in_component(const LinearCode& c, int t, const CodeGraph& graph,
                               std::uint64_t budget) {
    if (graph.kind() != GraphKind::Delta)
        throw std::invalid_argument("orbit containment is checked against the span graph");
    if (graph.t() != t || graph.n() != c.n() || graph.k() != c.k() || graph.q() != c.q())
        throw std::invalid_argument("graph parameters do not match the code");
    const auto home = graph.family().find(c);
    if (!home) throw std::invalid_argument("code is not a vertex of the graph");
    const std::uint32_t comp = graph.component_of(*home);
    for (const LinearCode& member : orbit(c, budget)) {
        const auto id = graph.family().find(member);
        if (!id)
            throw std::logic_error("orbit member escaped the vertex set of its class");
        if (graph.component_of(*id) != comp) return false;
    }
    return true;
}

std::string monomial_to_json(const MonomialMap& m) {
    nlohmann::ordered_json j;
    j["perm"] = m.perm;
    j["scales"] = m.scales;
    return j.dump();
}

} // namespace codegraph
