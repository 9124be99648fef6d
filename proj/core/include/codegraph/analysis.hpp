#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "codegraph/code.hpp"
#include "codegraph/field.hpp"
#include "codegraph/graph.hpp"
#include "codegraph/grassmann.hpp"
#include "codegraph/saturation.hpp"
#include "codegraph/symmetry.hpp"

namespace codegraph {

// Per-cell work limits shared by the verifiers.
struct Caps {
    std::uint64_t subspace_cap = kDefaultSubspaceCap;
    std::uint64_t orbit_budget = kDefaultOrbitBudget;
    std::uint64_t search_budget = kDefaultSearchBudget;
    std::uint64_t sample_per_cell = 1000; // vertex/pair sampling ceiling
};

// Parameter ranges swept by the grid verifiers. A cell is any (q, n, k, t)
// with q in field_orders, 0 < k <= k_max, k < n <= n_max_for(q), 0 <= t <= k;
// individual claims restrict t further as documented on each verifier.
struct GridSpec {
    std::vector<int> field_orders{2, 3, 4};
    int n_max_q2 = 7;
    int n_max_other = 5;
    int k_max = 4;
    Caps caps;

    static GridSpec default_grid() { return GridSpec{}; }
    int n_max_for(int q) const { return q == 2 ? n_max_q2 : n_max_other; }
};

struct CellKey {
    int q = 0;
    int n = 0;
    int k = 0;
    int t = 0;
};

enum class Outcome { Pass, Fail, Skipped };

std::string outcome_name(Outcome o); // "PASS" | "FAIL" | "SKIPPED"

// One verifier result. A Fail always carries a JSON witness describing the
// offending object; runtime_seconds is diagnostic only and deliberately
// excluded from every serialization so report files are byte-stable.
struct VerificationReport {
    std::string claim;
    CellKey cell;
    Outcome outcome = Outcome::Pass;
    std::string witness; // JSON text (counterexample or certificate), may be empty
    std::string detail;  // human-readable summary
    double runtime_seconds = 0.0;
};

// Shared per-run store of fields and fully labeled ambient graphs so that
// verifiers touching the same (q, n, k) never rebuild the pairwise scan.
class CellCache {
public:
    explicit CellCache(Caps caps = {}) : caps_(caps) {}

    const Caps& caps() const { return caps_; }
    FieldPtr field(int q);
    const LabeledGamma& master(int q, int n, int k);

private:
    Caps caps_;
    std::map<int, FieldPtr> fields_;
    std::map<std::tuple<int, int, int>, LabeledGamma> masters_;
};

// Claim identifiers accepted by run_claim and the CLI.
inline constexpr const char* kClaimConnectivityEquivalence = "connectivity-equivalence";
inline constexpr const char* kClaimIsolationAgreement = "isolation-agreement";
inline constexpr const char* kClaimNondegenerateThreshold = "nondegenerate-threshold";
inline constexpr const char* kClaimProjectiveThreshold = "projective-threshold";
inline constexpr const char* kClaimLargeFieldConnectivity = "large-field-connectivity";
inline constexpr const char* kClaimDualMdsEdgeless = "dual-mds-edgeless";
inline constexpr const char* kClaimIsolationVanishingBound = "isolation-vanishing-bound";
inline constexpr const char* kClaimMonomialAdjacency = "monomial-adjacency";
inline constexpr const char* kClaimTransparency = "transparency";
inline constexpr const char* kClaimDiameterBound = "diameter-bound";

std::vector<std::string> claim_names();

// For every cell: the level-t intersection graph equals the disjoint union of
// its isolated vertices and the induced subgraph on the rest, and that induced
// subgraph is connected exactly when the level-t span graph one dimension down
// is connected (single-vertex and empty graphs count as connected). On cells
// where the lower level is connected, explicit paths between sampled
// non-isolated vertices are constructed through spans of consecutive lower
// level BFS-tree codes and validated edge by edge.
std::vector<VerificationReport> verify_connectivity_equivalence(const GridSpec& grid,
                                                                CellCache& cache);

// For every vertex of every cell with t >= 1: the coverage-based isolation
// test, the direct subcode-extension test, and graph degree zero agree.
std::vector<VerificationReport> verify_isolation_agreement(const GridSpec& grid,
                                                           CellCache& cache);

// t = 1 threshold: the intersection graph on nondegenerate codes is connected
// exactly for n < (q^k - 1)/(q - 1); a vertex is isolated exactly when its
// columns exhaust the point set of the ambient projective space; at the
// threshold length the isolated vertices form a single monomial orbit.
std::vector<VerificationReport> verify_nondegenerate_threshold(const GridSpec& grid,
                                                               CellCache& cache);

// t = 2 threshold: the intersection graph on projective codes is connected
// exactly for n below the minimal size of a point set whose 2-point spans
// cover the ambient projective space (computed by independent exact search);
// a vertex is isolated exactly when its columns form such a covering set.
std::vector<VerificationReport> verify_projective_threshold(const GridSpec& grid,
                                                            CellCache& cache);

// Cells with t < k and q > C(n, t): the level-t intersection graph is
// connected. Cells failing the hypothesis are recorded as skipped. A fixed
// showcase cell over GF(5) is appended after the grid sweep.
std::vector<VerificationReport> verify_large_field_connectivity(const GridSpec& grid,
                                                                CellCache& cache);

// t = k: the level-k intersection graph has no edges and every vertex attains
// the maximal dual distance k + 1.
std::vector<VerificationReport> verify_dual_mds_edgeless(const GridSpec& grid,
                                                         CellCache& cache);

// Cells with t < k and q^(k-t) > C(n, t): no isolated vertices exist.
// Cells failing the hypothesis are recorded as skipped.
std::vector<VerificationReport> verify_isolation_vanishing_bound(const GridSpec& grid,
                                                                 CellCache& cache);

// For sampled vertices of every cell: each monomial generator image stays in
// the class and equals the vertex or is span-graph adjacent to it; whole
// orbits of a few vertices stay inside one span-graph component.
std::vector<VerificationReport> verify_monomial_adjacency(const GridSpec& grid,
                                                          CellCache& cache);

// For every span-graph adjacent pair of every cell with t >= 1 (sampled at
// t = 0): the full pencil through the pair lies in the class exactly when the
// pair is intersection-graph adjacent, and the projective line through their
// exterior-coordinate images lies in the coordinate model of the class under
// the same condition. Sampled non-adjacent pairs must yield lines that leave
// the coordinate model of the subspace family.
std::vector<VerificationReport> verify_transparency(const GridSpec& grid,
                                                    CellCache& cache);

// t = 1: every component of the induced subgraph on non-isolated vertices has
// diameter at most k + 1, and at most one more than the diameter of the
// level-1 span graph one dimension down when both are connected.
std::vector<VerificationReport> verify_diameter_bound(const GridSpec& grid,
                                                      CellCache& cache);

// Dispatch by claim identifier. Throws std::invalid_argument on unknown ids.
std::vector<VerificationReport> run_claim(const std::string& claim, const GridSpec& grid,
                                          CellCache& cache);

// One row per scanned length.
struct ThresholdScanRow {
    int n = 0;
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
    std::uint64_t components = 0;
    std::uint64_t isolated = 0;
    bool connected = true;
};

// Result of scanning n = k+1 .. ceiling for the first disconnected length
// (nu) and the first length with an isolated vertex (nu_plus). The scan stops
// early once the vertex family is empty, which persists for all larger n.
struct ThresholdResult {
    int q = 0;
    int k = 0;
    int t = 0;
    int ceiling = 0;
    std::optional<int> nu;
    std::optional<int> nu_plus;
    std::optional<int> family_empty_from;
    std::string status; // "EQUAL" | "UNEQUAL" | "UNRESOLVED"
    std::string note;
    std::string witness; // JSON text, may be empty
    std::vector<ThresholdScanRow> rows;
};

ThresholdResult scan_thresholds(int q, int k, int t, int ceiling, CellCache& cache);

// True when no report failed (skipped reports do not count as failures).
bool all_passed(const std::vector<VerificationReport>& reports);

// Canonical serializations. runtime_seconds never appears in any of these.
std::string reports_to_json(const std::vector<VerificationReport>& reports);
std::string reports_to_markdown(const std::vector<VerificationReport>& reports);
std::string threshold_result_to_json(const ThresholdResult& result);
std::string threshold_results_to_markdown(const std::vector<ThresholdResult>& results);

} // namespace codegraph
