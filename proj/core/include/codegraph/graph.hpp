#pragma once

#include "codegraph/code.hpp"
#include "codegraph/field.hpp"
#include "codegraph/grassmann.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace codegraph {

enum class GraphKind { Gamma, Delta, Lambda };

// "gamma" / "delta" / "lambda".
std::string graph_kind_name(GraphKind kind);
std::optional<GraphKind> graph_kind_from_name(const std::string& name);

// Whether two k-spaces of the same ambient space meet in dimension k-1,
// i.e. their joint span has rank k+1.
bool delta_adjacent(const LinearCode& x, const LinearCode& y);

// Delta adjacency with the intersection required to lie in the level-t class
// of (k-1)-spaces; for k == 1 the intersection is the zero space, which
// qualifies exactly at t == 0.
bool lambda_adjacent(const LinearCode& x, const LinearCode& y, int t);

struct BuildOptions {
    enum class Engine {
        Auto,        // membership bitmasks when q^n <= 4096, else elimination
        Masks,       // error if q^n > 4096
        Elimination, // rank computations only
    };
    std::uint64_t subspace_cap = kDefaultSubspaceCap;
    Engine engine = Engine::Auto;
};

// The full adjacency structure on ALL k-spaces of F_q^n, labeled with enough
// data to cut out any level-t graph without recomputation: the dual minimum
// distance of every vertex and of every edge's intersection.
struct LabeledGamma {
    FieldPtr field;
    int n = 0;
    int k = 0;
    SubspaceFamily family;                 // all k-spaces, enumeration order
    std::vector<std::int8_t> vertex_dperp; // dual distance per vertex
    std::vector<std::uint64_t> offsets;    // CSR over both edge directions
    std::vector<std::uint32_t> neighbors;  // sorted within each row
    std::vector<std::int8_t> edge_labels;  // dual distance of the intersection
};

LabeledGamma build_labeled_gamma(int n, int k, const FieldPtr& field,
                                 const BuildOptions& opts = {});

// An undirected graph on a family of k-spaces, stored as CSR with sorted
// rows. Components are computed eagerly; exact diameters lazily.
class CodeGraph {
public:
    CodeGraph(GraphKind kind, int t, SubspaceFamily family,
              std::vector<std::uint64_t> offsets, std::vector<std::uint32_t> neighbors);

    GraphKind kind() const { return kind_; }
    int t() const { return t_; }
    const SubspaceFamily& family() const { return family_; }
    int n() const { return family_.n(); }
    int k() const { return family_.k(); }
    int q() const { return family_.field()->q(); }

    std::size_t vertex_count() const { return family_.size(); }
    std::uint64_t edge_count() const { return neighbors_.size() / 2; }
    std::size_t degree(std::uint32_t v) const {
        return static_cast<std::size_t>(offsets_[v + 1] - offsets_[v]);
    }
    const std::uint32_t* neighbors_begin(std::uint32_t v) const {
        return neighbors_.data() + offsets_[v];
    }
    const std::uint32_t* neighbors_end(std::uint32_t v) const {
        return neighbors_.data() + offsets_[v + 1];
    }
    const std::vector<std::uint64_t>& offsets() const { return offsets_; }
    const std::vector<std::uint32_t>& neighbors() const { return neighbors_; }

    std::size_t component_count() const { return component_sizes_.size(); }
    std::uint32_t component_of(std::uint32_t v) const { return component_[v]; }
    const std::vector<std::size_t>& component_sizes() const { return component_sizes_; }

    // The empty graph and one-vertex graphs count as connected.
    bool connected() const { return component_sizes_.size() <= 1; }

    // Degree-zero vertices, ascending. Only the level-t intersection graph
    // backs this notion with a vertex-local criterion, so other kinds refuse.
    std::vector<std::uint32_t> isolated_vertices() const;

    // Exact diameter of each component, indexed by component id; computed on
    // first use with an eccentricity-bounding search (verified against plain
    // breadth-first sweeps in the tests).
    const std::vector<int>& diameter_per_component() const;

    // Distances from src (unreachable = UINT32_MAX); optionally the BFS tree.
    std::vector<std::uint32_t> bfs_distances(std::uint32_t src,
                                             std::vector<std::uint32_t>* parents = nullptr) const;

    std::string to_dot() const;
    std::string to_csv() const;
    std::string summary_json() const;

private:
    GraphKind kind_;
    int t_;
    SubspaceFamily family_;
    std::vector<std::uint64_t> offsets_;
    std::vector<std::uint32_t> neighbors_;
    std::vector<std::uint32_t> component_;
    std::vector<std::size_t> component_sizes_;
    mutable std::optional<std::vector<int>> diameters_;
};

// Cuts the level-t graph of the requested kind out of a labeled master:
// Gamma keeps everything (t is pinned to 0); Delta keeps vertices whose dual
// distance exceeds t; Lambda additionally keeps only edges whose intersection
// label exceeds t.
CodeGraph extract_graph(const LabeledGamma& master, GraphKind kind, int t);

// Builds the master for (n, k) and extracts one graph.
CodeGraph build_graph(GraphKind kind, int n, int k, int t, const FieldPtr& field,
                      const BuildOptions& opts = {});

// The subgraph induced on vertices of positive degree (vertex order kept).
CodeGraph induced_on_nonisolated(const CodeGraph& g);

} // namespace codegraph
