#include "codegraph/graph.hpp"

#include "codegraph/errors.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace codegraph {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t kMaskBitLimit = 4096; // largest q^n the mask engine accepts

// q^n when it stays within the mask limit, 0 otherwise.
std::uint64_t vector_space_size_within(std::uint64_t limit, int q, int n) {
    std::uint64_t s = 1;
    for (int i = 0; i < n; ++i) {
        s *= static_cast<std::uint64_t>(q);
        if (s > limit) return 0;
    }
    return s;
}

// Bit per vector of F_q^n (index sum v[i] q^i, coordinate 0 least
// significant), marking membership in one subspace.
std::vector<std::uint64_t> membership_mask(const LinearCode& c, std::size_t words) {
    std::vector<std::uint64_t> mask(words, 0);
    const Field& f = *c.field();
    const int q = f.q();
    const int n = c.n();
    const int k = c.k();
    const MatGF& gen = c.generator();
    std::uint64_t combos = 1;
    for (int i = 0; i < k; ++i) combos *= static_cast<std::uint64_t>(q);
    std::vector<GfElem> vec(static_cast<std::size_t>(n));
    for (std::uint64_t cv = 0; cv < combos; ++cv) {
        std::fill(vec.begin(), vec.end(), 0);
        std::uint64_t rest = cv;
        for (int r = 0; r < k; ++r) {
            const GfElem coef = static_cast<GfElem>(rest % static_cast<std::uint64_t>(q));
            rest /= static_cast<std::uint64_t>(q);
            if (coef != 0)
                for (int j = 0; j < n; ++j)
                    vec[static_cast<std::size_t>(j)] =
                        f.add(vec[static_cast<std::size_t>(j)], f.mul(coef, gen.at(r, j)));
        }
        std::uint64_t idx = 0;
        for (int j = n - 1; j >= 0; --j)
            idx = idx * static_cast<std::uint64_t>(q) + vec[static_cast<std::size_t>(j)];
        mask[idx >> 6] |= std::uint64_t{1} << (idx & 63);
    }
    return mask;
}

std::string mask_key(const std::vector<std::uint64_t>& and_buf) {
    return std::string(reinterpret_cast<const char*>(and_buf.data()),
                       and_buf.size() * sizeof(std::uint64_t));
}

struct EdgeList {
    std::vector<std::uint32_t> a, b; // a[i] < b[i], lexicographically sorted
    std::vector<std::int8_t> labels;
};

// CSR over both directions from an (a < b)-sorted edge list; rows come out
// sorted because backward entries (all below the row) arrive during the scan
// of earlier sources and forward entries follow in source order.
void edges_to_csr(std::size_t vertices, const EdgeList& edges,
                  std::vector<std::uint64_t>& offsets, std::vector<std::uint32_t>& neighbors,
                  std::vector<std::int8_t>* labels_out) {
    std::vector<std::uint64_t> degree(vertices + 1, 0);
    for (std::size_t e = 0; e < edges.a.size(); ++e) {
        ++degree[edges.a[e] + 1];
        ++degree[edges.b[e] + 1];
    }
    offsets.assign(vertices + 1, 0);
    for (std::size_t v = 1; v <= vertices; ++v) offsets[v] = offsets[v - 1] + degree[v];
    neighbors.assign(offsets[vertices], 0);
    if (labels_out) labels_out->assign(offsets[vertices], 0);
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t e = 0; e < edges.a.size(); ++e) {
        const std::uint32_t x = edges.a[e], y = edges.b[e];
        neighbors[cursor[x]] = y;
        neighbors[cursor[y]] = x;
        if (labels_out) {
            (*labels_out)[cursor[x]] = edges.labels[e];
            (*labels_out)[cursor[y]] = edges.labels[e];
        }
        ++cursor[x];
        ++cursor[y];
    }
}

} // namespace

std::string graph_kind_name(GraphKind kind) {
    switch (kind) {
        case GraphKind::Gamma: return "gamma";
        case GraphKind::Delta: return "delta";
        case GraphKind::Lambda: return "lambda";
    }
    throw std::logic_error("unknown graph kind");
}

std::optional<GraphKind> graph_kind_from_name(const std::string& name) {
    if (name == "gamma") return GraphKind::Gamma;
    if (name == "delta") return GraphKind::Delta;
    if (name == "lambda") return GraphKind::Lambda;
    return std::nullopt;
}

bool delta_adjacent(const LinearCode& x, const LinearCode& y) {
    if (x.q() != y.q() || x.n() != y.n() || x.k() != y.k())
        throw std::invalid_argument("adjacency needs two k-spaces of the same ambient space");
    return rank_of(stack(x.generator(), y.generator())) == x.k() + 1;
}

bool lambda_adjacent(const LinearCode& x, const LinearCode& y, int t) {
    if (t < 0 || t > x.k())
        throw std::invalid_argument("class level t must lie in [0, k]");
    if (!delta_adjacent(x, y)) return false;
    if (x.k() == 1) return t == 0; // the zero space has dual distance 1
    const LinearCode meet = LinearCode::from_matrix(intersect_rowspaces(x.generator(), y.generator()));
    return meet.in_class(t);
}

LabeledGamma build_labeled_gamma(int n, int k, const FieldPtr& field, const BuildOptions& opts) {
    SubspaceFamily family = enumerate_subspaces(n, k, field, opts.subspace_cap);
    const std::size_t v = family.size();
    std::vector<std::int8_t> vertex_dperp(v);
    for (std::size_t i = 0; i < v; ++i)
        vertex_dperp[i] = static_cast<std::int8_t>(family[i].dual_distance());

    const std::uint64_t space = vector_space_size_within(kMaskBitLimit, field->q(), n);
    bool use_masks;
    switch (opts.engine) {
        case BuildOptions::Engine::Masks:
            if (space == 0)
                throw std::invalid_argument("mask engine needs q^n <= 4096");
            use_masks = true;
            break;
        case BuildOptions::Engine::Elimination: use_masks = false; break;
        case BuildOptions::Engine::Auto:
        default: use_masks = space != 0; break;
    }

    EdgeList edges;
    if (use_masks) {
        const std::size_t words = static_cast<std::size_t>((space + 63) / 64);
        std::vector<std::vector<std::uint64_t>> masks(v);
        for (std::size_t i = 0; i < v; ++i) masks[i] = membership_mask(family[i], words);

        // Intersection labels come from the masks of all (k-1)-spaces.
        std::unordered_map<std::string, std::int8_t> meet_label;
        if (k >= 2) {
            const SubspaceFamily subs = enumerate_subspaces(n, k - 1, field, opts.subspace_cap);
            meet_label.reserve(subs.size() * 2);
            for (std::size_t i = 0; i < subs.size(); ++i)
                meet_label.emplace(mask_key(membership_mask(subs[i], words)),
                                   static_cast<std::int8_t>(subs[i].dual_distance()));
        }

        std::uint64_t meet_count = 1; // vectors in a (k-1)-dim intersection
        for (int i = 0; i < k - 1; ++i) meet_count *= static_cast<std::uint64_t>(field->q());
        std::vector<std::uint64_t> and_buf(words);
        for (std::uint32_t i = 0; i < v; ++i) {
            const std::uint64_t* mi = masks[i].data();
            for (std::uint32_t j = i + 1; j < v; ++j) {
                const std::uint64_t* mj = masks[j].data();
                std::uint64_t pop = 0;
                for (std::size_t w = 0; w < words; ++w) {
                    and_buf[w] = mi[w] & mj[w];
                    pop += static_cast<std::uint64_t>(std::popcount(and_buf[w]));
                }
                if (pop != meet_count) continue;
                std::int8_t label = 1; // dual distance of the zero space
                if (k >= 2) {
                    const auto it = meet_label.find(mask_key(and_buf));
                    if (it == meet_label.end())
                        throw std::logic_error("intersection mask missing from the label table");
                    label = it->second;
                }
                edges.a.push_back(i);
                edges.b.push_back(j);
                edges.labels.push_back(label);
            }
        }
    } else {
        for (std::uint32_t i = 0; i < v; ++i) {
            const MatGF& gi = family[i].generator();
            for (std::uint32_t j = i + 1; j < v; ++j) {
                if (rank_of(stack(gi, family[j].generator())) != k + 1) continue;
                std::int8_t label = 1;
                if (k >= 2) {
                    const LinearCode meet = LinearCode::from_matrix(
                        intersect_rowspaces(gi, family[j].generator()));
                    label = static_cast<std::int8_t>(meet.dual_distance());
                }
                edges.a.push_back(i);
                edges.b.push_back(j);
                edges.labels.push_back(label);
            }
        }
    }

    LabeledGamma g{field, n, k, std::move(family), std::move(vertex_dperp), {}, {}, {}};
    edges_to_csr(v, edges, g.offsets, g.neighbors, &g.edge_labels);
    return g;
}

CodeGraph::CodeGraph(GraphKind kind, int t, SubspaceFamily family,
                     std::vector<std::uint64_t> offsets, std::vector<std::uint32_t> neighbors)
    : kind_(kind),
      t_(kind == GraphKind::Gamma ? 0 : t),
      family_(std::move(family)),
      offsets_(std::move(offsets)),
      neighbors_(std::move(neighbors)) {
    const std::size_t v = family_.size();
    if (offsets_.size() != v + 1 || offsets_[0] != 0 || offsets_.back() != neighbors_.size())
        throw std::invalid_argument("malformed adjacency offsets");
    for (std::uint32_t nb : neighbors_)
        if (nb >= v) throw std::invalid_argument("neighbor id out of range");
    component_.assign(v, kUnreached);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t s = 0; s < v; ++s) {
        if (component_[s] != kUnreached) continue;
        const std::uint32_t id = static_cast<std::uint32_t>(component_sizes_.size());
        component_sizes_.push_back(0);
        queue.assign(1, s);
        component_[s] = id;
        while (!queue.empty()) {
            const std::uint32_t u = queue.back();
            queue.pop_back();
            ++component_sizes_[id];
            for (const std::uint32_t* p = neighbors_begin(u); p != neighbors_end(u); ++p)
                if (component_[*p] == kUnreached) {
                    component_[*p] = id;
                    queue.push_back(*p);
                }
        }
    }
}

std::vector<std::uint32_t> CodeGraph::isolated_vertices() const {
    if (kind_ != GraphKind::Lambda)
        throw std::logic_error("isolated vertices are tracked for the intersection graph only");
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < vertex_count(); ++v)
        if (degree(v) == 0) out.push_back(v);
    return out;
}

std::vector<std::uint32_t> CodeGraph::bfs_distances(std::uint32_t src,
                                                    std::vector<std::uint32_t>* parents) const {
    std::vector<std::uint32_t> dist(vertex_count(), kUnreached);
    if (parents) parents->assign(vertex_count(), kUnreached);
    std::deque<std::uint32_t> queue;
    dist[src] = 0;
    queue.push_back(src);
    while (!queue.empty()) {
        const std::uint32_t u = queue.front();
        queue.pop_front();
        for (const std::uint32_t* p = neighbors_begin(u); p != neighbors_end(u); ++p) {
            if (dist[*p] != kUnreached) continue;
            dist[*p] = dist[u] + 1;
            if (parents) (*parents)[*p] = u;
            queue.push_back(*p);
        }
    }
    return dist;
}

const std::vector<int>& CodeGraph::diameter_per_component() const {
    if (diameters_) return *diameters_;
    std::vector<std::vector<std::uint32_t>> comps(component_sizes_.size());
    for (std::size_t c = 0; c < comps.size(); ++c) comps[c].reserve(component_sizes_[c]);
    for (std::uint32_t v = 0; v < vertex_count(); ++v) comps[component_[v]].push_back(v);

    std::vector<int> result(comps.size(), 0);
    std::vector<int> lb(vertex_count()), ub(vertex_count());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const std::vector<std::uint32_t>& comp = comps[c];
        if (comp.size() <= 1) continue;
        for (std::uint32_t u : comp) {
            lb[u] = 0;
            ub[u] = std::numeric_limits<int>::max();
        }
        // Eccentricity bounding: each sweep fixes one vertex's eccentricity
        // and tightens everyone's bounds until no vertex can beat the best.
        std::uint32_t w = comp[0];
        for (std::uint32_t u : comp)
            if (degree(u) > degree(w)) w = u; // ties keep the smaller id
        int diam = 0;
        while (true) {
            const std::vector<std::uint32_t> dist = bfs_distances(w);
            int ecc = 0;
            for (std::uint32_t u : comp) ecc = std::max(ecc, static_cast<int>(dist[u]));
            diam = std::max(diam, ecc);
            for (std::uint32_t u : comp) {
                const int d = static_cast<int>(dist[u]);
                lb[u] = std::max(lb[u], std::max(d, ecc - d));
                if (ub[u] != std::numeric_limits<int>::max())
                    ub[u] = std::min(ub[u], ecc + d);
                else
                    ub[u] = ecc + d;
            }
            std::uint32_t next = kUnreached;
            int best_ub = diam;
            for (std::uint32_t u : comp)
                if (ub[u] > best_ub) {
                    best_ub = ub[u];
                    next = u;
                }
            if (next == kUnreached) break;
            w = next;
        }
        result[c] = diam;
    }
    diameters_ = std::move(result);
    return *diameters_;
}

std::string CodeGraph::to_dot() const {
    std::string out = "graph codegraph {\n";
    for (std::uint32_t v = 0; v < vertex_count(); ++v) {
        out += "  v" + std::to_string(v) + " [label=\"" + family_[v].generator().to_text() +
               "\"];\n";
    }
    for (std::uint32_t v = 0; v < vertex_count(); ++v)
        for (const std::uint32_t* p = neighbors_begin(v); p != neighbors_end(v); ++p)
            if (*p > v) out += "  v" + std::to_string(v) + " -- v" + std::to_string(*p) + ";\n";
    out += "}\n";
    return out;
}

std::string CodeGraph::to_csv() const {
    std::string out = "source,target\n";
    for (std::uint32_t v = 0; v < vertex_count(); ++v)
        for (const std::uint32_t* p = neighbors_begin(v); p != neighbors_end(v); ++p)
            if (*p > v) out += std::to_string(v) + "," + std::to_string(*p) + "\n";
    return out;
}

std::string CodeGraph::summary_json() const {
    nlohmann::ordered_json j;
    j["kind"] = graph_kind_name(kind_);
    j["q"] = q();
    j["n"] = n();
    j["k"] = k();
    j["t"] = t_;
    j["vertices"] = vertex_count();
    j["edges"] = edge_count();
    j["components"] = component_count();
    std::size_t isolated = 0;
    for (std::uint32_t v = 0; v < vertex_count(); ++v)
        if (degree(v) == 0) ++isolated;
    j["isolated"] = isolated;
    j["diameter_per_component"] = diameter_per_component();
    return j.dump(2);
}

CodeGraph extract_graph(const LabeledGamma& master, GraphKind kind, int t) {
    if (kind == GraphKind::Gamma) t = 0;
    if (t < 0 || t > master.k)
        throw std::invalid_argument("class level t must lie in [0, k]");
    const bool filter_vertices = kind != GraphKind::Gamma;
    const bool filter_edges = kind == GraphKind::Lambda;
    const std::size_t v = master.family.size();
    std::vector<std::uint32_t> new_id(v, kUnreached);
    SubspaceFamily family(master.n, master.k, master.field);
    for (std::uint32_t i = 0; i < v; ++i) {
        if (filter_vertices && master.vertex_dperp[i] < t + 1) continue;
        new_id[i] = static_cast<std::uint32_t>(family.size());
        family.add(master.family[i]);
    }
    std::vector<std::uint64_t> offsets(family.size() + 1, 0);
    std::vector<std::uint32_t> neighbors;
    for (std::uint32_t i = 0; i < v; ++i) {
        if (new_id[i] == kUnreached) continue;
        for (std::uint64_t e = master.offsets[i]; e < master.offsets[i + 1]; ++e) {
            const std::uint32_t j = master.neighbors[e];
            if (new_id[j] == kUnreached) continue;
            if (filter_edges && master.edge_labels[e] < t + 1) continue;
            neighbors.push_back(new_id[j]);
        }
        offsets[new_id[i] + 1] = neighbors.size();
    }
    return CodeGraph(kind, t, std::move(family), std::move(offsets), std::move(neighbors));
}

CodeGraph build_graph(GraphKind kind, int n, int k, int t, const FieldPtr& field,
                      const BuildOptions& opts) {
    return extract_graph(build_labeled_gamma(n, k, field, opts), kind, t);
}

CodeGraph induced_on_nonisolated(const CodeGraph& g) {
    const std::size_t v = g.vertex_count();
    std::vector<std::uint32_t> new_id(v, kUnreached);
    SubspaceFamily family(g.n(), g.k(), g.family().field());
    for (std::uint32_t i = 0; i < v; ++i) {
        if (g.degree(i) == 0) continue;
        new_id[i] = static_cast<std::uint32_t>(family.size());
        family.add(g.family()[i]);
    }
    std::vector<std::uint64_t> offsets(family.size() + 1, 0);
    std::vector<std::uint32_t> neighbors;
    for (std::uint32_t i = 0; i < v; ++i) {
        if (new_id[i] == kUnreached) continue;
        for (const std::uint32_t* p = g.neighbors_begin(i); p != g.neighbors_end(i); ++p)
            neighbors.push_back(new_id[*p]); // every neighbor has positive degree
        offsets[new_id[i] + 1] = neighbors.size();
    }
    return CodeGraph(g.kind(), g.t(), std::move(family), std::move(offsets), std::move(neighbors));
}

} // namespace codegraph
