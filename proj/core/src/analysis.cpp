#include "codegraph/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "codegraph/errors.hpp"
#include "codegraph/matrix.hpp"
#include "codegraph/symmetry.hpp"

namespace codegraph {
namespace {

using ordered_json = nlohmann::ordered_json;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::uint64_t pow_u64(std::uint64_t base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

ordered_json code_obj(const LinearCode& c) { return ordered_json::parse(code_to_json(c)); }

VerificationReport report(const char* claim, CellKey cell, Outcome outcome, std::string witness,
                          std::string detail, double secs) {
    VerificationReport r;
    r.claim = claim;
    r.cell = cell;
    r.outcome = outcome;
    r.witness = std::move(witness);
    r.detail = std::move(detail);
    r.runtime_seconds = secs;
    return r;
}

VerificationReport pass(const char* claim, CellKey cell, std::string detail, const Timer& timer,
                        std::string witness = {}) {
    return report(claim, cell, Outcome::Pass, std::move(witness), std::move(detail),
                  timer.seconds());
}

VerificationReport fail(const char* claim, CellKey cell, const ordered_json& witness,
                        std::string detail, const Timer& timer) {
    return report(claim, cell, Outcome::Fail, witness.dump(), std::move(detail), timer.seconds());
}

VerificationReport skip(const char* claim, CellKey cell, std::string detail, const Timer& timer) {
    return report(claim, cell, Outcome::Skipped, {}, std::move(detail), timer.seconds());
}

// Deterministic sample of at most cap indices out of [0, total), evenly strided.
std::vector<std::uint32_t> strided_sample(std::size_t total, std::uint64_t cap) {
    std::vector<std::uint32_t> out;
    if (total == 0 || cap == 0) return out;
    const std::uint64_t stride = (static_cast<std::uint64_t>(total) + cap - 1) / cap;
    for (std::uint64_t i = 0; i < total; i += stride) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

// Runs a single-cell verifier body, converting a blown work cap into a
// skipped report instead of aborting the whole sweep.
template <typename Fn>
VerificationReport guarded_cell(const char* claim, CellKey cell, Fn&& body) {
    Timer timer;
    try {
        return body(timer);
    } catch (const budget_error& e) {
        return report(claim, cell, Outcome::Skipped, {}, std::string("budget: ") + e.what(),
                      timer.seconds());
    }
}

std::optional<LinearCode> first_inclass_subcode(const LinearCode& x, int t) {
    for (const LinearCode& s : x.all_subcodes())
        if (s.in_class(t)) return s;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// connectivity-equivalence
// ---------------------------------------------------------------------------

VerificationReport equivalence_cell(CellCache& cache, const LabeledGamma& master, CellKey cell,
                                    Timer& timer) {
    const char* claim = kClaimConnectivityEquivalence;
    const int k = cell.k, t = cell.t;

    CodeGraph lambda = extract_graph(master, GraphKind::Lambda, t);
    CodeGraph delta = extract_graph(master, GraphKind::Delta, t);
    const std::vector<std::uint32_t> iso = lambda.isolated_vertices();
    CodeGraph tilde = induced_on_nonisolated(lambda);

    // Vertex partition and basic extraction consistency.
    if (delta.vertex_count() != lambda.vertex_count())
        return fail(claim, cell,
                    ordered_json{{"span_vertices", delta.vertex_count()},
                                 {"intersection_vertices", lambda.vertex_count()}},
                    "span and intersection graphs disagree on the vertex family", timer);
    if (tilde.vertex_count() + iso.size() != lambda.vertex_count())
        return fail(claim, cell,
                    ordered_json{{"non_isolated", tilde.vertex_count()},
                                 {"isolated", iso.size()},
                                 {"vertices", lambda.vertex_count()}},
                    "isolated/non-isolated partition does not cover the vertex set", timer);
    for (std::uint32_t v = 0; v < tilde.vertex_count(); ++v)
        if (tilde.degree(v) == 0)
            return fail(claim, cell, ordered_json{{"code", code_obj(tilde.family()[v])}},
                        "degree-zero vertex survived the non-isolated restriction", timer);
    if (lambda.edge_count() > delta.edge_count())
        return fail(claim, cell,
                    ordered_json{{"intersection_edges", lambda.edge_count()},
                                 {"span_edges", delta.edge_count()}},
                    "intersection graph has edges outside the span graph", timer);
    if (t == 0) {
        const std::uint64_t ambient_edges = master.neighbors.size() / 2;
        if (lambda.vertex_count() != master.family.size() ||
            lambda.edge_count() != ambient_edges || delta.edge_count() != ambient_edges)
            return fail(claim, cell,
                        ordered_json{{"vertices", lambda.vertex_count()},
                                     {"edges", lambda.edge_count()},
                                     {"ambient_vertices", master.family.size()},
                                     {"ambient_edges", ambient_edges}},
                        "level-0 graphs must coincide with the ambient subspace graph", timer);
    }

    // Connectivity equivalence against the level-t span graph one level down.
    bool down_connected = true;
    std::string down_note;
    std::optional<CodeGraph> down;
    if (k >= 2 && t <= k - 1) {
        down.emplace(extract_graph(cache.master(cell.q, cell.n, k - 1), GraphKind::Delta, t));
        down_connected = down->connected();
        down_note = "lower level: " + std::to_string(down->vertex_count()) + " vertices, " +
                    (down_connected ? "connected" : "disconnected");
    } else if (k >= 2) {
        down_note = "lower level empty at this strictness";
    } else {
        down_note = (t == 0) ? "lower level is the zero space alone" : "lower level empty";
    }
    if (tilde.connected() != down_connected)
        return fail(claim, cell,
                    ordered_json{{"non_isolated_connected", tilde.connected()},
                                 {"non_isolated_vertices", tilde.vertex_count()},
                                 {"lower_level_connected", down_connected},
                                 {"lower_level_vertices", down ? down->vertex_count() : 0}},
                    "connectivity equivalence violated", timer);

    // Constructive paths: join sampled non-isolated vertices through spans of
    // consecutive codes on lower-level BFS tree walks, validating every step.
    std::size_t paths_checked = 0;
    if (down && down_connected && down->vertex_count() >= 1 && tilde.vertex_count() >= 2) {
        std::vector<std::uint32_t> parents;
        down->bfs_distances(0, &parents);

        auto chain_to_root = [&](const LinearCode& x) -> std::optional<std::vector<LinearCode>> {
            const std::optional<LinearCode> d = first_inclass_subcode(x, t);
            if (!d) return std::nullopt;
            const auto idx = down->family().find(*d);
            if (!idx) return std::nullopt;
            std::vector<LinearCode> chain;
            std::uint32_t cur = *idx;
            chain.push_back(down->family()[cur]);
            while (cur != 0) {
                cur = parents[cur];
                chain.push_back(down->family()[cur]);
            }
            return chain;
        };

        const auto samples = strided_sample(tilde.vertex_count(), 64);
        const LinearCode& anchor = tilde.family()[samples.front()];
        const auto anchor_chain = chain_to_root(anchor);
        if (!anchor_chain)
            return fail(claim, cell, ordered_json{{"code", code_obj(anchor)}},
                        "non-isolated vertex has no in-class subcode", timer);
        for (std::size_t si = 1; si < samples.size(); ++si) {
            const LinearCode& x = tilde.family()[samples[si]];
            const auto x_chain = chain_to_root(x);
            if (!x_chain)
                return fail(claim, cell, ordered_json{{"code", code_obj(x)}},
                            "non-isolated vertex has no in-class subcode", timer);

            std::vector<const LinearCode*> walk;
            for (const LinearCode& c : *x_chain) walk.push_back(&c);
            for (std::size_t i = anchor_chain->size() - 1; i-- > 0;)
                walk.push_back(&(*anchor_chain)[i]);
            std::vector<const LinearCode*> stations;
            for (const LinearCode* c : walk)
                if (stations.empty() || *stations.back() != *c) stations.push_back(c);

            std::vector<LinearCode> path;
            path.push_back(x);
            for (std::size_t i = 0; i + 1 < stations.size(); ++i)
                path.push_back(LinearCode::from_matrix(
                    stack(stations[i]->generator(), stations[i + 1]->generator())));
            path.push_back(anchor);
            std::vector<const LinearCode*> clean;
            for (const LinearCode& c : path)
                if (clean.empty() || *clean.back() != c) clean.push_back(&c);

            for (const LinearCode* c : clean)
                if (!c->in_class(t))
                    return fail(claim, cell,
                                ordered_json{{"from", code_obj(x)},
                                             {"to", code_obj(anchor)},
                                             {"member", code_obj(*c)},
                                             {"dual_distance", c->dual_distance()}},
                                "constructive path leaves the class", timer);
            for (std::size_t i = 0; i + 1 < clean.size(); ++i)
                if (!lambda_adjacent(*clean[i], *clean[i + 1], t))
                    return fail(claim, cell,
                                ordered_json{{"from", code_obj(*clean[i])},
                                             {"to", code_obj(*clean[i + 1])}},
                                "constructive path step is not intersection-adjacent", timer);
            ++paths_checked;
        }
    }

    std::string detail = "non-isolated part " +
                         std::string(tilde.connected() ? "connected" : "disconnected") + " (" +
                         std::to_string(tilde.vertex_count()) + " vertices, " +
                         std::to_string(iso.size()) + " isolated); " + down_note;
    if (paths_checked > 0)
        detail += "; constructive paths validated: " + std::to_string(paths_checked);
    return pass(claim, cell, detail, timer);
}

std::vector<VerificationReport> connectivity_equivalence(const GridSpec& grid, CellCache& cache) {
    std::vector<VerificationReport> out;
    for (int q : grid.field_orders) {
        for (int k = 1; k <= grid.k_max; ++k) {
            for (int n = k + 1; n <= grid.n_max_for(q); ++n) {
                for (int t = 0; t <= k; ++t) {
                    const CellKey cell{q, n, k, t};
                    out.push_back(guarded_cell(
                        kClaimConnectivityEquivalence, cell, [&](Timer& timer) {
                            return equivalence_cell(cache, cache.master(q, n, k), cell, timer);
                        }));
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// isolation-agreement
// ---------------------------------------------------------------------------

std::vector<VerificationReport> isolation_agreement(const GridSpec& grid, CellCache& cache) {
    const char* claim = kClaimIsolationAgreement;
    std::vector<VerificationReport> out;
    for (int q : grid.field_orders) {
        for (int k = 1; k <= grid.k_max; ++k) {
            for (int n = k + 1; n <= grid.n_max_for(q); ++n) {
                for (int t = 1; t <= k; ++t) {
                    const CellKey cell{q, n, k, t};
                    out.push_back(guarded_cell(claim, cell, [&](Timer& timer) {
                        CodeGraph lambda =
                            extract_graph(cache.master(q, n, k), GraphKind::Lambda, t);
                        if (lambda.vertex_count() == 0)
                            return pass(claim, cell, "family empty; vacuous", timer);
                        if (k == 1) {
                            for (std::uint32_t v = 0; v < lambda.vertex_count(); ++v)
                                if (lambda.degree(v) != 0)
                                    return fail(claim, cell,
                                                ordered_json{{"code", code_obj(lambda.family()[v])}},
                                                "rank-one vertex with an edge at positive level",
                                                timer);
                            return pass(claim, cell,
                                        "rank-one level: all " +
                                            std::to_string(lambda.vertex_count()) +
                                            " vertices isolated (no nonzero proper subcode)",
                                        timer);
                        }
                        std::size_t isolated = 0;
                        for (std::uint32_t v = 0; v < lambda.vertex_count(); ++v) {
                            const LinearCode& c = lambda.family()[v];
                            const bool deg0 = lambda.degree(v) == 0;
                            const bool geo = is_isolated_geometric(c, t);
                            const bool dir = is_isolated_direct(c, t);
                            if (geo != dir || dir != deg0)
                                return fail(claim, cell,
                                            ordered_json{{"code", code_obj(c)},
                                                         {"degree_zero", deg0},
                                                         {"coverage_test", geo},
                                                         {"subcode_test", dir}},
                                            "isolation tests disagree", timer);
                            if (deg0) ++isolated;
                        }
                        return pass(claim, cell,
                                    std::to_string(lambda.vertex_count()) + " vertices, " +
                                        std::to_string(isolated) +
                                        " isolated; coverage, subcode, and degree tests agree",
                                    timer);
                    }));
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// nondegenerate-threshold (t = 1)
// ---------------------------------------------------------------------------

std::vector<VerificationReport> nondegenerate_threshold(const GridSpec& grid, CellCache& cache) {
    const char* claim = kClaimNondegenerateThreshold;
    std::vector<VerificationReport> out;
    for (int q : grid.field_orders) {
        for (int k = 1; k <= grid.k_max; ++k) {
            const int n_max = grid.n_max_for(q);
            const CellKey cell{q, n_max, k, 1};
            out.push_back(guarded_cell(claim, cell, [&](Timer& timer) {
                const std::uint64_t threshold = gaussian_binomial(k, 1, q);
                const FieldPtr field = cache.field(q);
                const ProjectiveSpace space = ProjectiveSpace::make(k, field);
                if (space.size() != threshold)
                    return fail(claim, cell,
                                ordered_json{{"points", space.size()}, {"threshold", threshold}},
                                "point count disagrees with the threshold formula", timer);

                std::string flip_note;
                std::string orbit_note;
                for (int n = k + 1; n <= n_max; ++n) {
                    CodeGraph lambda = extract_graph(cache.master(q, n, k), GraphKind::Lambda, 1);
                    if (lambda.vertex_count() == 0) continue; // out of scope at this length
                    const bool predicted = static_cast<std::uint64_t>(n) < threshold;
                    if (lambda.connected() != predicted)
                        return fail(claim, cell,
                                    ordered_json{{"n", n},
                                                 {"connected", lambda.connected()},
                                                 {"predicted_connected", predicted},
                                                 {"vertices", lambda.vertex_count()},
                                                 {"components", lambda.component_count()},
                                                 {"isolated", lambda.isolated_vertices().size()}},
                                    "connectivity does not match the threshold formula", timer);
                    for (std::uint32_t v = 0; v < lambda.vertex_count(); ++v) {
                        const LinearCode& c = lambda.family()[v];
                        const bool deg0 = lambda.degree(v) == 0;
                        const bool covers = columns_as_points(space, c).is_all_points(space);
                        if (deg0 != covers)
                            return fail(claim, cell,
                                        ordered_json{{"n", n},
                                                     {"code", code_obj(c)},
                                                     {"degree_zero", deg0},
                                                     {"columns_cover_space", covers}},
                                        "isolation is not equivalent to exhausting the point set",
                                        timer);
                    }
                    if (static_cast<std::uint64_t>(n) == threshold) {
                        const auto iso = lambda.isolated_vertices();
                        if (iso.empty())
                            return fail(claim, cell, ordered_json{{"n", n}, {"isolated_count", 0}},
                                        "no isolated vertex at the threshold length", timer);
                        const auto orb =
                            orbit(lambda.family()[iso.front()], cache.caps().orbit_budget);
                        std::set<std::uint32_t> iso_set(iso.begin(), iso.end());
                        std::set<std::uint32_t> orb_set;
                        for (const LinearCode& o : orb) {
                            const auto idx = lambda.family().find(o);
                            if (!idx)
                                return fail(claim, cell, ordered_json{{"code", code_obj(o)}},
                                            "monomial image left the class", timer);
                            orb_set.insert(*idx);
                        }
                        if (orb_set != iso_set)
                            return fail(claim, cell,
                                        ordered_json{{"n", n},
                                                     {"isolated_count", iso.size()},
                                                     {"orbit_size", orb.size()}},
                                        "isolated vertices are not a single monomial orbit",
                                        timer);
                        flip_note = "flip observed at n=" + std::to_string(n);
                        orbit_note =
                            "; isolated set is one monomial orbit of size " +
                            std::to_string(iso.size());
                    }
                }

                const std::string base = "threshold " + std::to_string(threshold) +
                                         "; scanned n=" + std::to_string(k + 1) + ".." +
                                         std::to_string(n_max);
                if (threshold > static_cast<std::uint64_t>(n_max))
                    return skip(claim, cell,
                                base + "; flip beyond scanned lengths; connectivity and "
                                       "isolation-freeness verified below it",
                                timer);
                std::string detail = base;
                if (!flip_note.empty()) detail += "; " + flip_note + orbit_note;
                else detail += "; threshold below the least valid length; graphs disconnected throughout";
                return pass(claim, cell, detail, timer);
            }));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// projective-threshold (t = 2)
// ---------------------------------------------------------------------------

std::vector<VerificationReport> projective_threshold(const GridSpec& grid, CellCache& cache) {
    const char* claim = kClaimProjectiveThreshold;
    std::vector<VerificationReport> out;
    for (int q : grid.field_orders) {
        for (int k = 2; k <= grid.k_max; ++k) {
            const int n_max = grid.n_max_for(q);
            const CellKey cell{q, n_max, k, 2};
            out.push_back(guarded_cell(claim, cell, [&](Timer& timer) {
                const FieldPtr field = cache.field(q);
                const ProjectiveSpace space = ProjectiveSpace::make(k, field);
                const SatMinResult sat =
                    min_saturating_size(space, 1, SatMode::Exact, cache.caps().search_budget);

                std::string sat_note;
                if (sat.optimal) {
                    sat_note = "minimal covering size " + std::to_string(sat.size) + " (exact)";
                } else {
                    sat_note = "covering size in [" + std::to_string(sat.lower_bound) + ", " +
                               std::to_string(sat.size) + "] (search budget reached)";
                    if (sat.lower_bound <= n_max)
                        return skip(claim, cell,
                                    sat_note + "; minimum not pinned inside the scanned lengths",
                                    timer);
                }

                std::string empty_note;
                std::string flip_note;
                for (int n = k + 1; n <= n_max; ++n) {
                    CodeGraph lambda = extract_graph(cache.master(q, n, k), GraphKind::Lambda, 2);
                    if (lambda.vertex_count() == 0) {
                        if (empty_note.empty())
                            empty_note = "; family empty from n=" + std::to_string(n);
                        break;
                    }
                    const bool predicted =
                        sat.optimal ? (n < sat.size) : true; // below any feasible minimum
                    if (lambda.connected() != predicted)
                        return fail(claim, cell,
                                    ordered_json{{"n", n},
                                                 {"connected", lambda.connected()},
                                                 {"predicted_connected", predicted},
                                                 {"vertices", lambda.vertex_count()},
                                                 {"components", lambda.component_count()},
                                                 {"isolated", lambda.isolated_vertices().size()}},
                                    "connectivity does not flip at the covering minimum", timer);
                    for (std::uint32_t v = 0; v < lambda.vertex_count(); ++v) {
                        const LinearCode& c = lambda.family()[v];
                        const bool deg0 = lambda.degree(v) == 0;
                        const bool covers =
                            covers_at_level(space, columns_as_points(space, c), 2);
                        if (deg0 != covers)
                            return fail(claim, cell,
                                        ordered_json{{"n", n},
                                                     {"code", code_obj(c)},
                                                     {"degree_zero", deg0},
                                                     {"two_point_spans_cover", covers}},
                                        "isolation is not equivalent to two-point-span coverage",
                                        timer);
                    }
                    if (sat.optimal && n == sat.size && !lambda.connected())
                        flip_note = "; disconnection observed at n=" + std::to_string(n);
                }

                const std::string base = sat_note + "; scanned n=" + std::to_string(k + 1) +
                                         ".." + std::to_string(n_max) + empty_note;
                if (!sat.optimal || sat.size > n_max)
                    return skip(claim, cell,
                                base + "; flip beyond scanned lengths; connectivity verified "
                                       "below it",
                                timer);
                return pass(claim, cell, base + flip_note, timer);
            }));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// large-field-connectivity
// ---------------------------------------------------------------------------

std::vector<VerificationReport> large_field_connectivity(const GridSpec& grid, CellCache& cache) {
    const char* claim = kClaimLargeFieldConnectivity;
    std::vector<VerificationReport> out;
    auto run_cell = [&](int q, int n, int k, int t, const char* extra) {
        const CellKey cell{q, n, k, t};
        out.push_back(guarded_cell(claim, cell, [&](Timer& timer) {
            const std::uint64_t bound = binomial(n, t);
            const std::string hyp = "q > C(n,t): " + std::to_string(q) +
                                    (static_cast<std::uint64_t>(q) > bound ? " > " : " <= ") +
                                    std::to_string(bound);
            if (static_cast<std::uint64_t>(q) <= bound)
                return skip(claim, cell, std::string("hypothesis not met (") + hyp + ")" + extra,
                            timer);
            CodeGraph lambda = extract_graph(cache.master(q, n, k), GraphKind::Lambda, t);
            if (!lambda.connected())
                return fail(claim, cell,
                            ordered_json{{"vertices", lambda.vertex_count()},
                                         {"components", lambda.component_count()},
                                         {"isolated", lambda.isolated_vertices().size()}},
                            std::string("graph disconnected although ") + hyp, timer);
            return pass(claim, cell,
                        hyp + "; connected (" + std::to_string(lambda.vertex_count()) +
                            " vertices)" + extra,
                        timer);
        }));
    };
    for (int q : grid.field_orders)
        for (int k = 1; k <= grid.k_max; ++k)
            for (int n = k + 1; n <= grid.n_max_for(q); ++n)
                for (int t = 0; t < k; ++t) run_cell(q, n, k, t, "");
    run_cell(5, 4, 3, 1, "; showcase cell");
    return out;
}

// ---------------------------------------------------------------------------
// dual-mds-edgeless (t = k)
// ---------------------------------------------------------------------------

std::vector<VerificationReport> dual_mds_edgeless(const GridSpec& grid, CellCache& cache) {
    const char* claim = kClaimDualMdsEdgeless;
    std::vector<VerificationReport> out;
    for (int q : grid.field_orders) {
        for (int k = 1; k <= grid.k_max; ++k) {
            for (int n = k + 1; n <= grid.n_max_for(q); ++n) {
                const CellKey cell{q, n, k, k};
                out.push_back(guarded_cell(claim, cell, [&](Timer& timer) {
                    CodeGraph lambda = extract_graph(cache.master(q, n, k), GraphKind::Lambda, k);
                    if (lambda.vertex_count() == 0)
                        return pass(claim, cell, "family empty; vacuous", timer);
                    if (lambda.edge_count() != 0)
                        return fail(claim, cell, ordered_json{{"edges", lambda.edge_count()}},
                                    "maximal-level graph has an edge", timer);
                    for (std::uint32_t v = 0; v < lambda.vertex_count(); ++v) {
                        const LinearCode& c = lambda.family()[v];
                        if (c.dual_distance() != k + 1)
                            return fail(claim, cell,
                                        ordered_json{{"code", code_obj(c)},
                                                     {"dual_distance", c.dual_distance()}},
                                        "vertex misses the maximal dual distance", timer);
                    }
                    return pass(claim, cell,
                                std::to_string(lambda.vertex_count()) +
                                    " vertices, no edges; every dual distance equals k+1",
                                timer);
                }));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// isolation-vanishing-bound
// ---------------------------------------------------------------------------

std::vector<VerificationReport> isolation_vanishing_bound(const GridSpec& grid,
                                                          CellCache& cache) {
    const char* claim = kClaimIsolationVanishingBound;
    std::vector<VerificationReport> out;
    for (int q : grid.field_orders) {
        for (int k = 1; k <= grid.k_max; ++k) {
            for (int n = k + 1; n <= grid.n_max_for(q); ++n) {
                for (int t = 0; t < k; ++t) {
                    const CellKey cell{q, n, k, t};
                    out.push_back(guarded_cell(claim, cell, [&](Timer& timer) {
                        const std::uint64_t lhs = pow_u64(static_cast<std::uint64_t>(q), k - t);
                        const std::uint64_t rhs = binomial(n, t);
                        const std::string hyp = "q^(k-t) > C(n,t): " + std::to_string(lhs) +
                                                (lhs > rhs ? " > " : " <= ") + std::to_string(rhs);
                        if (lhs <= rhs)
                            return skip(claim, cell, "hypothesis not met (" + hyp + ")", timer);
                        CodeGraph lambda =
                            extract_graph(cache.master(q, n, k), GraphKind::Lambda, t);
                        const auto iso = lambda.isolated_vertices();
                        if (!iso.empty())
                            return fail(claim, cell,
                                        ordered_json{
                                            {"isolated_count", iso.size()},
                                            {"example", code_obj(lambda.family()[iso.front()])}},
                                        std::string("isolated vertex exists although ") + hyp,
                                        timer);
                        return pass(claim, cell,
                                    hyp + "; no isolated vertices among " +
                                        std::to_string(lambda.vertex_count()),
                                    timer);
                    }));
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// monomial-adjacency
// ---------------------------------------------------------------------------

std::vector<VerificationReport> monomial_adjacency(const GridSpec& grid, CellCache& cache) {
    const char* claim = kClaimMonomialAdjacency;
    std::vector<VerificationReport> out;
    for (int q : grid.field_orders) {
        for (int k = 1; k <= grid.k_max; ++k) {
            for (int n = k + 1; n <= grid.n_max_for(q); ++n) {
                const auto gens = monomial_generators(n, cache.field(q));
                for (int t = 0; t <= k; ++t) {
                    const CellKey cell{q, n, k, t};
                    out.push_back(guarded_cell(claim, cell, [&](Timer& timer) {
                        CodeGraph delta =
                            extract_graph(cache.master(q, n, k), GraphKind::Delta, t);
                        if (delta.vertex_count() == 0)
                            return pass(claim, cell, "family empty; vacuous", timer);
                        const auto samples =
                            strided_sample(delta.vertex_count(), cache.caps().sample_per_cell);
                        for (std::uint32_t v : samples) {
                            const LinearCode& c = delta.family()[v];
                            for (const MonomialMap& m : gens) {
                                const LinearCode img = act(m, c);
                                if (!img.in_class(t))
                                    return fail(claim, cell,
                                                ordered_json{
                                                    {"code", code_obj(c)},
                                                    {"map", ordered_json::parse(
                                                                monomial_to_json(m))},
                                                    {"image", code_obj(img)},
                                                    {"image_dual_distance", img.dual_distance()}},
                                                "monomial generator image left the class", timer);
                                if (img != c && !delta_adjacent(c, img))
                                    return fail(
                                        claim, cell,
                                        ordered_json{
                                            {"code", code_obj(c)},
                                            {"map", ordered_json::parse(monomial_to_json(m))},
                                            {"image", code_obj(img)}},
                                        "generator image neither equals the vertex nor is "
                                        "span-adjacent to it",
                                        timer);
                            }
                        }
                        std::size_t orbits_checked = 0;
                        std::string orbit_note;
                        for (std::size_t i = 0; i < samples.size() && i < 2; ++i) {
                            try {
                                if (!verify_orbit_in_component(delta.family()[samples[i]], t,
                                                               delta, cache.caps().orbit_budget))
                                    return fail(claim, cell,
                                                ordered_json{{"code",
                                                              code_obj(delta.family()[samples[i]])}},
                                                "monomial orbit crosses component boundaries",
                                                timer);
                                ++orbits_checked;
                            } catch (const budget_error&) {
                                orbit_note = "; orbit sampling stopped (budget)";
                                break;
                            }
                        }
                        return pass(claim, cell,
                                    std::to_string(samples.size()) + " vertices x " +
                                        std::to_string(gens.size()) + " generators; orbits in "
                                        "one component: " + std::to_string(orbits_checked) +
                                        orbit_note,
                                    timer);
                    }));
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// transparency
// ---------------------------------------------------------------------------

VerificationReport transparency_cell(const LabeledGamma& master, CellKey cell, Timer& timer) {
    const char* claim = kClaimTransparency;
    const int t = cell.t;
    const std::uint32_t vertex_count = static_cast<std::uint32_t>(master.family.size());
    const std::int8_t need = static_cast<std::int8_t>(t + 1);

    // Count the level-t span-adjacent pairs first so the level-0 sweep (where
    // class membership is trivially true) can be strided deterministically.
    std::uint64_t pair_total = 0;
    for (std::uint32_t u = 0; u < vertex_count; ++u) {
        if (master.vertex_dperp[u] < need) continue;
        for (std::uint64_t e = master.offsets[u]; e < master.offsets[u + 1]; ++e) {
            const std::uint32_t w = master.neighbors[e];
            if (w > u && master.vertex_dperp[w] >= need) ++pair_total;
        }
    }
    const bool full = t >= 1;
    const std::uint64_t stride =
        full ? 1 : std::max<std::uint64_t>(1, (pair_total + 63) / 64);

    std::uint64_t pairs_checked = 0, lambda_pairs = 0, pair_index = 0;
    for (std::uint32_t u = 0; u < vertex_count; ++u) {
        if (master.vertex_dperp[u] < need) continue;
        for (std::uint64_t e = master.offsets[u]; e < master.offsets[u + 1]; ++e) {
            const std::uint32_t w = master.neighbors[e];
            if (w <= u || master.vertex_dperp[w] < need) continue;
            const bool process = (pair_index++ % stride) == 0;
            if (!process) continue;
            const LinearCode& x = master.family[u];
            const LinearCode& y = master.family[w];
            const bool lam = master.edge_labels[e] >= need;

            // Pencil route: the q+1 codes between the intersection and the span.
            const PencilLine line = pencil(x, y);
            bool all_in = true;
            const LinearCode* outside = nullptr;
            for (const LinearCode& z : line.points)
                if (!z.in_class(t)) {
                    all_in = false;
                    outside = &z;
                    break;
                }
            if (all_in != lam) {
                ordered_json wit{{"x", code_obj(x)},
                                 {"y", code_obj(y)},
                                 {"intersection_in_class", lam},
                                 {"full_pencil_in_class", all_in}};
                if (outside) {
                    wit["member_outside"] = code_obj(*outside);
                    wit["member_dual_distance"] = outside->dual_distance();
                }
                return fail(claim, cell, wit,
                            "pencil membership does not match intersection adjacency", timer);
            }

            // Coordinate route: the projective line through the exterior images.
            const PluckerLineResult pl = plucker_line_in_variety(x, y);
            if (!pl.in_grassmann_image)
                return fail(claim, cell, ordered_json{{"x", code_obj(x)}, {"y", code_obj(y)}},
                            "coordinate line through adjacent images leaves the subspace model",
                            timer);
            bool line_in = true;
            for (const LinearCode& z : pl.preimages)
                if (!z.in_class(t)) {
                    line_in = false;
                    break;
                }
            if (line_in != lam)
                return fail(claim, cell,
                            ordered_json{{"x", code_obj(x)},
                                         {"y", code_obj(y)},
                                         {"intersection_in_class", lam},
                                         {"coordinate_line_in_class_model", line_in}},
                            "coordinate-line containment does not match intersection adjacency",
                            timer);
            std::vector<std::string> a, b;
            for (const LinearCode& z : line.points) a.push_back(z.generator().bytes());
            for (const LinearCode& z : pl.preimages) b.push_back(z.generator().bytes());
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b)
                return fail(claim, cell, ordered_json{{"x", code_obj(x)}, {"y", code_obj(y)}},
                            "pencil members and coordinate-line preimages disagree", timer);
            ++pairs_checked;
            if (lam) ++lambda_pairs;
        }
    }

    // Sampled non-adjacent in-class pairs: no pencil exists and the coordinate
    // line must leave the subspace model.
    std::uint64_t far_checked = 0;
    if (vertex_count >= 2) {
        const auto starts = strided_sample(vertex_count, 16);
        for (const std::uint32_t u : starts) {
            if (far_checked >= 16) break;
            if (master.vertex_dperp[u] < need) continue;
            for (std::uint32_t w = u + 1; w < vertex_count; ++w) {
                if (master.vertex_dperp[w] < need) continue;
                const std::uint32_t* lo = master.neighbors.data() + master.offsets[u];
                const std::uint32_t* hi = master.neighbors.data() + master.offsets[u + 1];
                if (std::binary_search(lo, hi, w)) continue;
                const LinearCode& x = master.family[u];
                const LinearCode& y = master.family[w];
                bool threw = false;
                try {
                    (void)pencil(x, y);
                } catch (const std::invalid_argument&) {
                    threw = true;
                }
                if (!threw)
                    return fail(claim, cell, ordered_json{{"x", code_obj(x)}, {"y", code_obj(y)}},
                                "pencil accepted a non-adjacent pair", timer);
                const PluckerLineResult pl = plucker_line_in_variety(x, y);
                if (pl.in_grassmann_image)
                    return fail(claim, cell, ordered_json{{"x", code_obj(x)}, {"y", code_obj(y)}},
                                "coordinate line of a non-adjacent pair stayed in the subspace "
                                "model",
                                timer);
                ++far_checked;
                break;
            }
        }
    }

    std::string detail = (full ? "all " : "sampled ") + std::to_string(pairs_checked) +
                         " of " + std::to_string(pair_total) + " adjacent pairs (" +
                         std::to_string(lambda_pairs) +
                         " intersection-adjacent); non-adjacent samples: " +
                         std::to_string(far_checked);
    if (!full) detail += "; level 0 is vacuous (every intersection is in class)";
    return pass(claim, cell, detail, timer);
}

std::vector<VerificationReport> transparency(const GridSpec& grid, CellCache& cache) {
    std::vector<VerificationReport> out;
    for (int q : grid.field_orders)
        for (int k = 1; k <= grid.k_max; ++k)
            for (int n = k + 1; n <= grid.n_max_for(q); ++n)
                for (int t = 0; t <= k; ++t) {
                    const CellKey cell{q, n, k, t};
                    out.push_back(guarded_cell(kClaimTransparency, cell, [&](Timer& timer) {
                        return transparency_cell(cache.master(q, n, k), cell, timer);
                    }));
                }
    return out;
}

// ---------------------------------------------------------------------------
// diameter-bound (t = 1)
// ---------------------------------------------------------------------------

std::vector<VerificationReport> diameter_bound(const GridSpec& grid, CellCache& cache) {
    const char* claim = kClaimDiameterBound;
    std::vector<VerificationReport> out;
    for (int q : grid.field_orders) {
        for (int k = 1; k <= grid.k_max; ++k) {
            for (int n = k + 1; n <= grid.n_max_for(q); ++n) {
                const CellKey cell{q, n, k, 1};
                out.push_back(guarded_cell(claim, cell, [&](Timer& timer) {
                    CodeGraph lambda = extract_graph(cache.master(q, n, k), GraphKind::Lambda, 1);
                    CodeGraph tilde = induced_on_nonisolated(lambda);
                    if (tilde.vertex_count() == 0)
                        return pass(claim, cell, "no non-isolated vertices; vacuous", timer);
                    const auto& diams = tilde.diameter_per_component();
                    const int dmax = *std::max_element(diams.begin(), diams.end());
                    if (dmax > k + 1)
                        return fail(claim, cell,
                                    ordered_json{{"diameter", dmax}, {"bound", k + 1}},
                                    "diameter exceeds k+1", timer);
                    std::string extra;
                    if (k >= 2) {
                        CodeGraph down =
                            extract_graph(cache.master(q, n, k - 1), GraphKind::Delta, 1);
                        if (down.vertex_count() > 0 && down.connected() && tilde.connected()) {
                            const auto& down_diams = down.diameter_per_component();
                            const int down_diam =
                                *std::max_element(down_diams.begin(), down_diams.end());
                            if (dmax > down_diam + 1)
                                return fail(claim, cell,
                                            ordered_json{{"diameter", dmax},
                                                         {"lower_level_diameter", down_diam}},
                                            "diameter exceeds the lower-level diameter plus one",
                                            timer);
                            extra = "; lower-level diameter " + std::to_string(down_diam);
                        }
                    }
                    return pass(claim, cell,
                                "diameter " + std::to_string(dmax) + " <= " +
                                    std::to_string(k + 1) + extra,
                                timer);
                }));
            }
        }
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// CellCache
// ---------------------------------------------------------------------------

FieldPtr CellCache::field(int q) {
    auto it = fields_.find(q);
    if (it == fields_.end()) it = fields_.emplace(q, field_for_order(q)).first;
    return it->second;
}

const LabeledGamma& CellCache::master(int q, int n, int k) {
    const auto key = std::make_tuple(q, n, k);
    auto it = masters_.find(key);
    if (it == masters_.end()) {
        BuildOptions opts;
        opts.subspace_cap = caps_.subspace_cap;
        it = masters_.emplace(key, build_labeled_gamma(n, k, field(q), opts)).first;
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// Dispatch and serialization
// ---------------------------------------------------------------------------

std::vector<std::string> claim_names() {
    return {kClaimConnectivityEquivalence, kClaimIsolationAgreement,
            kClaimNondegenerateThreshold,  kClaimProjectiveThreshold,
            kClaimLargeFieldConnectivity,  kClaimDualMdsEdgeless,
            kClaimIsolationVanishingBound, kClaimMonomialAdjacency,
            kClaimTransparency,            kClaimDiameterBound};
}

std::vector<VerificationReport> run_claim(const std::string& claim, const GridSpec& grid,
                                          CellCache& cache) {
    if (claim == kClaimConnectivityEquivalence) return connectivity_equivalence(grid, cache);
    if (claim == kClaimIsolationAgreement) return isolation_agreement(grid, cache);
    if (claim == kClaimNondegenerateThreshold) return nondegenerate_threshold(grid, cache);
    if (claim == kClaimProjectiveThreshold) return projective_threshold(grid, cache);
    if (claim == kClaimLargeFieldConnectivity) return large_field_connectivity(grid, cache);
    if (claim == kClaimDualMdsEdgeless) return dual_mds_edgeless(grid, cache);
    if (claim == kClaimIsolationVanishingBound) return isolation_vanishing_bound(grid, cache);
    if (claim == kClaimMonomialAdjacency) return monomial_adjacency(grid, cache);
    if (claim == kClaimTransparency) return transparency(grid, cache);
    if (claim == kClaimDiameterBound) return diameter_bound(grid, cache);
    throw std::invalid_argument("unknown claim: " + claim);
}

std::vector<VerificationReport> verify_connectivity_equivalence(const GridSpec& grid,
                                                                CellCache& cache) {
    return connectivity_equivalence(grid, cache);
}
std::vector<VerificationReport> verify_isolation_agreement(const GridSpec& grid,
                                                           CellCache& cache) {
    return isolation_agreement(grid, cache);
}
std::vector<VerificationReport> verify_nondegenerate_threshold(const GridSpec& grid,
                                                               CellCache& cache) {
    return nondegenerate_threshold(grid, cache);
}
std::vector<VerificationReport> verify_projective_threshold(const GridSpec& grid,
                                                            CellCache& cache) {
    return projective_threshold(grid, cache);
}
std::vector<VerificationReport> verify_large_field_connectivity(const GridSpec& grid,
                                                                CellCache& cache) {
    return large_field_connectivity(grid, cache);
}
std::vector<VerificationReport> verify_dual_mds_edgeless(const GridSpec& grid,
                                                         CellCache& cache) {
    return dual_mds_edgeless(grid, cache);
}
std::vector<VerificationReport> verify_isolation_vanishing_bound(const GridSpec& grid,
                                                                 CellCache& cache) {
    return isolation_vanishing_bound(grid, cache);
}
std::vector<VerificationReport> verify_monomial_adjacency(const GridSpec& grid,
                                                          CellCache& cache) {
    return monomial_adjacency(grid, cache);
}
std::vector<VerificationReport> verify_transparency(const GridSpec& grid, CellCache& cache) {
    return transparency(grid, cache);
}
std::vector<VerificationReport> verify_diameter_bound(const GridSpec& grid, CellCache& cache) {
    return diameter_bound(grid, cache);
}

// ---------------------------------------------------------------------------
// Threshold scan
// ---------------------------------------------------------------------------

ThresholdResult scan_thresholds(int q, int k, int t, int ceiling, CellCache& cache) {
    if (k < 1) throw std::invalid_argument("dimension must be positive");
    if (t < 0 || t > k) throw std::invalid_argument("level must satisfy 0 <= t <= k");
    if (ceiling < k + 1)
        throw std::invalid_argument("ceiling must be at least k+1 to scan any length");
    cache.field(q); // validates q

    ThresholdResult r;
    r.q = q;
    r.k = k;
    r.t = t;
    r.ceiling = ceiling;

    ordered_json witness;
    for (int n = k + 1; n <= ceiling; ++n) {
        CodeGraph lambda = extract_graph(cache.master(q, n, k), GraphKind::Lambda, t);
        const auto iso = lambda.isolated_vertices();
        ThresholdScanRow row;
        row.n = n;
        row.vertices = lambda.vertex_count();
        row.edges = lambda.edge_count();
        row.components = lambda.component_count();
        row.isolated = iso.size();
        row.connected = lambda.connected();
        r.rows.push_back(row);

        if (row.vertices == 0) {
            // An empty family stays empty for every larger length: dropping a
            // non-pivot column of any longer member would produce a shorter one.
            r.family_empty_from = n;
            break;
        }
        if (!r.nu && !row.connected) {
            r.nu = n;
            ordered_json reps = ordered_json::array();
            reps.push_back(code_obj(lambda.family()[0]));
            for (std::uint32_t v = 1; v < lambda.vertex_count(); ++v)
                if (lambda.component_of(v) != lambda.component_of(0)) {
                    reps.push_back(code_obj(lambda.family()[v]));
                    break;
                }
            witness["component_representatives"] = reps;
        }
        if (!r.nu_plus && row.isolated > 0) {
            r.nu_plus = n;
            witness["isolated_code"] = code_obj(lambda.family()[iso.front()]);
        }
        if (r.nu && r.nu_plus) break;
    }

    witness["nu"] = r.nu ? ordered_json(*r.nu) : ordered_json(nullptr);
    witness["nu_plus"] = r.nu_plus ? ordered_json(*r.nu_plus) : ordered_json(nullptr);

    if (ceiling < k + 2) {
        r.status = "UNRESOLVED";
        r.note = "ceiling admits a single length; no flip observable";
    } else if (r.nu && r.nu_plus) {
        r.status = (*r.nu == *r.nu_plus) ? "EQUAL" : "UNEQUAL";
        r.note = "both parameters observed";
        if (*r.nu > *r.nu_plus)
            r.note += "; caveat: isolation precedes disconnection (single-vertex graphs count "
                      "as connected)";
    } else if (r.nu || r.nu_plus) {
        r.status = "UNEQUAL";
        const std::string found = r.nu ? "disconnection" : "isolation";
        const std::string missing = r.nu ? "isolation" : "disconnection";
        r.note = found + " observed at n=" + std::to_string(r.nu ? *r.nu : *r.nu_plus) + "; " +
                 missing +
                 (r.family_empty_from
                      ? " can never occur (family empty from n=" +
                            std::to_string(*r.family_empty_from) + ")"
                      : " does not occur at any scanned length, so the parameters differ");
    } else if (r.family_empty_from) {
        r.status = "EQUAL";
        r.note = "vacuously equal: neither parameter exists (family empty from n=" +
                 std::to_string(*r.family_empty_from) + ")";
    } else {
        r.status = "UNRESOLVED";
        r.note = "no disconnection or isolation up to the ceiling";
    }
    r.witness = witness.dump();
    return r;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "PASS";
        case Outcome::Fail: return "FAIL";
        case Outcome::Skipped: return "SKIPPED";
    }
    return "UNKNOWN";
}

bool all_passed(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (r.outcome == Outcome::Fail) return false;
    return true;
}

namespace {

ordered_json parse_or_string(const std::string& text) {
    if (text.empty()) return ordered_json(nullptr);
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) return ordered_json(text);
    return j;
}

ordered_json report_to_ordered_json(const VerificationReport& r) {
    ordered_json j;
    j["claim"] = r.claim;
    ordered_json cell;
    cell["q"] = r.cell.q;
    cell["n"] = r.cell.n;
    cell["k"] = r.cell.k;
    cell["t"] = r.cell.t;
    j["cell"] = cell;
    j["outcome"] = outcome_name(r.outcome);
    j["witness"] = parse_or_string(r.witness);
    j["detail"] = r.detail;
    return j;
}

std::string escape_pipes(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += "\\|";
        else out += c;
    }
    return out;
}

} // namespace

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_to_ordered_json(r));
    return arr.dump(2) + "\n";
}

std::string reports_to_markdown(const std::vector<VerificationReport>& reports) {
    std::string out = "| claim | q | n | k | t | outcome | detail |\n"
                      "|---|---|---|---|---|---|---|\n";
    for (const auto& r : reports) {
        out += "| " + r.claim + " | " + std::to_string(r.cell.q) + " | " +
               std::to_string(r.cell.n) + " | " + std::to_string(r.cell.k) + " | " +
               std::to_string(r.cell.t) + " | " + outcome_name(r.outcome) + " | " +
               escape_pipes(r.detail) + " |\n";
    }
    return out;
}

std::string threshold_result_to_json(const ThresholdResult& result) {
    ordered_json j;
    j["q"] = result.q;
    j["k"] = result.k;
    j["t"] = result.t;
    j["ceiling"] = result.ceiling;
    j["nu"] = result.nu ? ordered_json(*result.nu) : ordered_json(nullptr);
    j["nu_plus"] = result.nu_plus ? ordered_json(*result.nu_plus) : ordered_json(nullptr);
    j["family_empty_from"] =
        result.family_empty_from ? ordered_json(*result.family_empty_from) : ordered_json(nullptr);
    j["status"] = result.status;
    j["note"] = result.note;
    j["witness"] = parse_or_string(result.witness);
    ordered_json rows = ordered_json::array();
    for (const auto& row : result.rows) {
        ordered_json rj;
        rj["n"] = row.n;
        rj["vertices"] = row.vertices;
        rj["edges"] = row.edges;
        rj["components"] = row.components;
        rj["isolated"] = row.isolated;
        rj["connected"] = row.connected;
        rows.push_back(rj);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string threshold_results_to_markdown(const std::vector<ThresholdResult>& results) {
    std::string out = "| q | k | t | ceiling | nu | nu_plus | status | note |\n"
                      "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : results) {
        out += "| " + std::to_string(r.q) + " | " + std::to_string(r.k) + " | " +
               std::to_string(r.t) + " | " + std::to_string(r.ceiling) + " | " +
               (r.nu ? std::to_string(*r.nu) : "-") + " | " +
               (r.nu_plus ? std::to_string(*r.nu_plus) : "-") + " | " + r.status + " | " +
               escape_pipes(r.note) + " |\n";
    }
    return out;
}

} // namespace codegraph
