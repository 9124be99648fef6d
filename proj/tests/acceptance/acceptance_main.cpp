// Acceptance harness: thirteen pinned checks, one line each on stdout in a
// fixed order, formatted "PASS <name>: <detail>" or "FAIL <name>: <detail>".
// Progress notes go to stderr. Exit code 0 only if every line passed.
//
// Optional argv[1] is a scratch directory for machine-readable side outputs
// (threshold scan results and the two report-suite serializations).

#include "codegraph/analysis.hpp"
#include "codegraph/code.hpp"
#include "codegraph/errors.hpp"
#include "codegraph/field.hpp"
#include "codegraph/graph.hpp"
#include "codegraph/grassmann.hpp"
#include "codegraph/matrix.hpp"
#include "codegraph/saturation.hpp"
#include "codegraph/symmetry.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace codegraph;

namespace {

struct Criterion {
    std::string name;
    bool pass = false;
    std::string detail;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << s << "s";
    return os.str();
}

void progress(const std::string& msg) { std::cerr << "[acceptance] " << msg << "\n"; }

// ---------------------------------------------------------------------------
// 1. Field axioms, exhaustively, plus the rank/intersection identity on
//    random matrix pairs. Budget: 10 seconds.
// ---------------------------------------------------------------------------

Criterion check_field_axioms() {
    Stopwatch watch;
    Criterion c{"field-axioms-and-rank-identities"};
    std::uint64_t triples = 0;

    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        const FieldPtr fp = field_for_order(q);
        const Field& f = *fp;
        for (int a = 0; a < q; ++a) {
            if (f.add(a, 0) != a || f.mul(a, 1) != a) {
                c.detail = "identity axiom failed in the order-" + std::to_string(q) + " field";
                return c;
            }
            if (f.add(a, f.neg(a)) != 0) {
                c.detail = "additive inverse failed in the order-" + std::to_string(q) + " field";
                return c;
            }
            if (a != 0 && f.mul(a, f.inv(a)) != 1) {
                c.detail = "multiplicative inverse failed in the order-" + std::to_string(q) +
                           " field";
                return c;
            }
            for (int b = 0; b < q; ++b) {
                if (f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a)) {
                    c.detail = "commutativity failed in the order-" + std::to_string(q) + " field";
                    return c;
                }
                for (int d = 0; d < q; ++d) {
                    ++triples;
                    if (f.add(f.add(a, b), d) != f.add(a, f.add(b, d)) ||
                        f.mul(f.mul(a, b), d) != f.mul(a, f.mul(b, d)) ||
                        f.mul(a, f.add(b, d)) != f.add(f.mul(a, b), f.mul(a, d))) {
                        c.detail = "associativity or distributivity failed in the order-" +
                                   std::to_string(q) + " field";
                        return c;
                    }
                }
            }
        }
    }

    std::uint64_t pairs_total = 0;
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        auto field = field_for_order(q);
        std::mt19937 rng(12345u + static_cast<unsigned>(q));
        for (int trial = 0; trial < 10'000; ++trial) {
            const int cols = 4 + static_cast<int>(rng() % 3);
            const int ra = 1 + static_cast<int>(rng() % 3);
            const int rb = 1 + static_cast<int>(rng() % 3);
            MatGF a(ra, cols, field), b(rb, cols, field);
            for (int r = 0; r < ra; ++r)
                for (int col = 0; col < cols; ++col)
                    a.set(r, col, static_cast<GfElem>(rng() % q));
            for (int r = 0; r < rb; ++r)
                for (int col = 0; col < cols; ++col)
                    b.set(r, col, static_cast<GfElem>(rng() % q));
            const int rank_a = rref(a).rank;
            const int rank_b = rref(b).rank;
            const int rank_sum = rref(stack(a, b)).rank;
            const MatGF meet = intersect_rowspaces(a, b);
            ++pairs_total;
            if (meet.rows() != rank_a + rank_b - rank_sum) {
                c.detail = "rank identity failed over the order-" + std::to_string(q) +
                           " field on trial " + std::to_string(trial);
                return c;
            }
            if (meet.rows() > 0 && rref(stack(a, meet)).rank != rank_a) {
                c.detail = "intersection escaped the first row space over the order-" +
                           std::to_string(q) + " field";
                return c;
            }
        }
    }

    const double elapsed = watch.seconds();
    if (elapsed >= 10.0) {
        c.detail = "checks passed but took " + fmt_seconds(elapsed) + " (budget 10s)";
        return c;
    }
    c.pass = true;
    c.detail = "7 fields exhaustive (" + std::to_string(triples) + " triples), " +
               std::to_string(pairs_total) + " random rank identities, " + fmt_seconds(elapsed);
    return c;
}

// ---------------------------------------------------------------------------
// 2. The column-dependence computation of the dual minimum distance agrees
//    with exhaustive dual-codeword enumeration on every code with q <= 3 and
//    n <= 6. Budget: 120 seconds.
// ---------------------------------------------------------------------------

int oracle_dual_min_weight(const LinearCode& code) {
    const MatGF basis = kernel_basis(code.generator());
    const Field& f = *code.field();
    const int rows = basis.rows();
    const int n = code.n();
    const int q = f.q();
    std::uint64_t total = 1;
    for (int i = 0; i < rows; ++i) total *= static_cast<std::uint64_t>(q);
    int best = n + 1;
    std::vector<GfElem> word(static_cast<std::size_t>(n));
    for (std::uint64_t index = 1; index < total; ++index) {
        std::fill(word.begin(), word.end(), 0);
        std::uint64_t rest = index;
        for (int r = 0; r < rows; ++r, rest /= q) {
            const GfElem coeff = static_cast<GfElem>(rest % q);
            if (coeff == 0) continue;
            for (int col = 0; col < n; ++col)
                word[col] = f.add(word[col], f.mul(coeff, basis.at(r, col)));
        }
        int weight = 0;
        for (GfElem e : word) weight += e != 0;
        if (weight > 0 && weight < best) best = weight;
    }
    return best; // n + 1 when the dual is trivial
}

Criterion check_dual_distance_oracle() {
    Stopwatch watch;
    Criterion c{"dual-distance-oracle-equivalence"};
    std::uint64_t codes = 0;
    for (int q : {2, 3}) {
        auto field = field_for_order(q);
        for (int n = 2; n <= 6; ++n) {
            for (int k = 1; k < n; ++k) {
                auto family = enumerate_subspaces(n, k, field);
                for (std::size_t i = 0; i < family.size(); ++i) {
                    ++codes;
                    const int direct = family[i].dual_distance();
                    const int oracle = oracle_dual_min_weight(family[i]);
                    if (direct != oracle) {
                        c.detail = "mismatch on a [" + std::to_string(n) + "," +
                                   std::to_string(k) + "] code over the order-" +
                                   std::to_string(q) + " field: column test " +
                                   std::to_string(direct) + ", codeword sweep " +
                                   std::to_string(oracle);
                        return c;
                    }
                }
            }
        }
    }
    const double elapsed = watch.seconds();
    if (elapsed >= 120.0) {
        c.detail = "checks passed but took " + fmt_seconds(elapsed) + " (budget 120s)";
        return c;
    }
    c.pass = true;
    c.detail = std::to_string(codes) + " codes, zero mismatches, " + fmt_seconds(elapsed);
    return c;
}

// ---------------------------------------------------------------------------
// Shared grid suite: every claim over the default grid, timed per claim.
// ---------------------------------------------------------------------------

struct SuiteRun {
    std::vector<VerificationReport> all;
    std::map<std::string, std::vector<VerificationReport>> by_claim;
    std::map<std::string, double> seconds;
};

SuiteRun run_suite(CellCache& cache) {
    SuiteRun run;
    const GridSpec grid = GridSpec::default_grid();
    for (const auto& claim : claim_names()) {
        progress("claim " + claim);
        Stopwatch watch;
        auto reports = run_claim(claim, grid, cache);
        run.seconds[claim] = watch.seconds();
        run.by_claim[claim] = reports;
        run.all.insert(run.all.end(), reports.begin(), reports.end());
    }
    return run;
}

std::string tally(const std::vector<VerificationReport>& reports) {
    int pass = 0, fail = 0, skip = 0;
    for (const auto& r : reports) {
        if (r.outcome == Outcome::Pass) ++pass;
        if (r.outcome == Outcome::Fail) ++fail;
        if (r.outcome == Outcome::Skipped) ++skip;
    }
    return std::to_string(reports.size()) + " cells: " + std::to_string(pass) + " pass, " +
           std::to_string(fail) + " fail, " + std::to_string(skip) + " skipped";
}

std::string failing_cells(const std::vector<VerificationReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        if (r.outcome != Outcome::Fail) continue;
        if (!out.empty()) out += "; ";
        out += "q=" + std::to_string(r.cell.q) + " n=" + std::to_string(r.cell.n) +
               " k=" + std::to_string(r.cell.k) + " t=" + std::to_string(r.cell.t);
    }
    return out;
}

Criterion from_claim(const SuiteRun& run, const std::string& name, const std::string& claim,
                     double budget_seconds) {
    Criterion c{name};
    const auto& reports = run.by_claim.at(claim);
    const double elapsed = run.seconds.at(claim);
    if (!all_passed(reports)) {
        c.detail = tally(reports) + "; failing cells: " + failing_cells(reports);
        return c;
    }
    if (elapsed >= budget_seconds) {
        c.detail = "all cells passed but took " + fmt_seconds(elapsed) + " (budget " +
                   fmt_seconds(budget_seconds) + ")";
        return c;
    }
    c.pass = true;
    c.detail = tally(reports) + ", " + fmt_seconds(elapsed);
    return c;
}

// ---------------------------------------------------------------------------
// 4. The level-1 connectivity flip at length (q^k - 1)/(q - 1), re-derived
//    directly from fresh graph cuts: flips at 3, 4, 7 for the pinned cells;
//    at the threshold the isolated vertices' columns exhaust the point set
//    and form a single monomial orbit.
// ---------------------------------------------------------------------------

Criterion check_level1_threshold(CellCache& cache) {
    Criterion c{"nondegenerate-threshold-flip"};
    struct Case {
        int q, k, threshold, isolated;
    };
    const std::vector<Case> cases = {{2, 2, 3, 1}, {3, 2, 4, 8}, {2, 3, 7, 30}};
    std::string summary;
    for (const auto& cs : cases) {
        const std::uint64_t formula = gaussian_binomial(cs.k, 1, cs.q);
        if (formula != static_cast<std::uint64_t>(cs.threshold)) {
            c.detail = "threshold formula disagrees with the pinned value for q=" +
                       std::to_string(cs.q) + " k=" + std::to_string(cs.k);
            return c;
        }
        auto field = cache.field(cs.q);
        auto space = ProjectiveSpace::make(cs.k, field);
        for (int n = cs.k + 1; n <= cs.threshold; ++n) {
            auto graph = extract_graph(cache.master(cs.q, n, cs.k), GraphKind::Lambda, 1);
            const bool expect_connected = n < cs.threshold;
            if (graph.connected() != expect_connected) {
                c.detail = "connectivity did not flip at the predicted length for q=" +
                           std::to_string(cs.q) + " k=" + std::to_string(cs.k) +
                           " n=" + std::to_string(n);
                return c;
            }
            auto isolated = graph.isolated_vertices();
            if (n < cs.threshold && !isolated.empty()) {
                c.detail = "an isolated vertex appeared below the threshold for q=" +
                           std::to_string(cs.q) + " k=" + std::to_string(cs.k) +
                           " n=" + std::to_string(n);
                return c;
            }
            if (n == cs.threshold) {
                if (static_cast<int>(isolated.size()) != cs.isolated) {
                    c.detail = "expected " + std::to_string(cs.isolated) +
                               " isolated vertices at the threshold for q=" +
                               std::to_string(cs.q) + " k=" + std::to_string(cs.k) + ", found " +
                               std::to_string(isolated.size());
                    return c;
                }
                std::set<std::uint32_t> isolated_set(isolated.begin(), isolated.end());
                for (auto v : isolated) {
                    if (!columns_as_points(space, graph.family()[v]).is_all_points(space)) {
                        c.detail = "an isolated vertex misses a point of the ambient space (q=" +
                                   std::to_string(cs.q) + " k=" + std::to_string(cs.k) + ")";
                        return c;
                    }
                }
                // All isolated vertices form one orbit under column symmetry.
                std::set<std::uint32_t> orbit_set;
                for (const auto& image : orbit(graph.family()[isolated.front()])) {
                    auto id = graph.family().find(image);
                    if (!id.has_value()) {
                        c.detail = "an orbit member left the vertex family (q=" +
                                   std::to_string(cs.q) + " k=" + std::to_string(cs.k) + ")";
                        return c;
                    }
                    orbit_set.insert(*id);
                }
                if (orbit_set != isolated_set) {
                    c.detail = "isolated vertices are not a single monomial orbit (q=" +
                               std::to_string(cs.q) + " k=" + std::to_string(cs.k) + ")";
                    return c;
                }
            }
        }
        if (!summary.empty()) summary += "; ";
        summary += "q=" + std::to_string(cs.q) + " k=" + std::to_string(cs.k) + " flips at " +
                   std::to_string(cs.threshold) + " with " + std::to_string(cs.isolated) +
                   " isolated";
    }
    c.pass = true;
    c.detail = summary;
    return c;
}

// ---------------------------------------------------------------------------
// 6. The level-2 connectivity flip in dimension 3 over GF(2) happens at the
//    exhaustively computed minimum size of a set whose point pairs span the
//    plane, confirmed by graph cuts across the whole length range.
// ---------------------------------------------------------------------------

Criterion check_level2_threshold(CellCache& cache) {
    Criterion c{"projective-threshold-flip"};
    auto field = cache.field(2);
    auto plane = ProjectiveSpace::make(3, field);
    auto sat = min_saturating_size(plane, 1, SatMode::Exact);
    if (!sat.optimal) {
        c.detail = "the exact covering search did not prove an optimum";
        return c;
    }
    if (sat.size != 4) {
        c.detail = "exhaustive covering minimum is " + std::to_string(sat.size) +
                   ", expected 4";
        return c;
    }
    for (int n = 4; n <= 7; ++n) {
        auto graph = extract_graph(cache.master(2, n, 3), GraphKind::Lambda, 2);
        const bool expect_connected = n < sat.size;
        if (graph.connected() != expect_connected) {
            c.detail = "level-2 connectivity did not flip at the covering minimum (n=" +
                       std::to_string(n) + ")";
            return c;
        }
        if (n == sat.size) {
            auto isolated = graph.isolated_vertices();
            if (isolated.empty()) {
                c.detail = "no isolated vertex at the covering minimum";
                return c;
            }
            for (auto v : isolated) {
                auto cols = columns_as_points(plane, graph.family()[v]);
                if (!covers_at_level(plane, cols, 2)) {
                    c.detail = "an isolated vertex's columns do not cover the plane by pairs";
                    return c;
                }
            }
        }
    }
    c.pass = true;
    c.detail = "covering minimum 4 (search proved optimal), graph disconnected at every length "
               "4..7; no admissible length lies below the flip";
    return c;
}

// ---------------------------------------------------------------------------
// 12. First-disconnection versus first-isolation lengths across the grid for
//     levels 1 and 2, plus a definite verdict with witness at level 3.
// ---------------------------------------------------------------------------

Criterion check_threshold_scans(CellCache& cache, std::vector<ThresholdResult>& scans_out) {
    Criterion c{"threshold-conjecture-scan"};
    const GridSpec grid = GridSpec::default_grid();
    std::vector<std::string> unequal_cells;
    for (int t : {1, 2}) {
        for (int q : grid.field_orders) {
            for (int k = std::max(t, 1); k <= grid.k_max; ++k) {
                const int ceiling = grid.n_max_for(q);
                if (ceiling < k + 1) continue;
                progress("scan q=" + std::to_string(q) + " k=" + std::to_string(k) +
                         " t=" + std::to_string(t));
                auto res = scan_thresholds(q, k, t, ceiling, cache);
                scans_out.push_back(res);
                if (res.status == "UNEQUAL") {
                    std::string cell = "q=" + std::to_string(q) + " k=" + std::to_string(k) +
                                       " t=" + std::to_string(t);
                    if (res.nu_plus && !res.nu)
                        cell += " (first isolation at " + std::to_string(*res.nu_plus) +
                                ", no disconnection" +
                                (res.family_empty_from ? ", class empty from " +
                                                             std::to_string(*res.family_empty_from)
                                                       : std::string(", within the ceiling")) +
                                ")";
                    unequal_cells.push_back(cell);
                }
            }
        }
    }

    progress("scan q=2 k=3 t=3");
    auto deep = scan_thresholds(2, 3, 3, 7, cache);
    scans_out.push_back(deep);

    const bool deep_definite = deep.status == "EQUAL" || deep.status == "UNEQUAL";
    bool deep_witness_ok = true;
    if (deep.status == "UNEQUAL") {
        auto parsed = nlohmann::json::parse(deep.witness, nullptr, false);
        deep_witness_ok = !deep.witness.empty() && !parsed.is_discarded();
    }

    std::string deep_note = "level-3 scan (q=2 k=3): " + deep.status;
    if (deep.nu_plus) deep_note += ", first isolation at " + std::to_string(*deep.nu_plus);
    if (deep.family_empty_from)
        deep_note += ", class empty from " + std::to_string(*deep.family_empty_from);
    deep_note += deep_witness_ok ? ", witness recorded" : ", witness missing";

    if (unequal_cells.empty() && deep_definite && deep_witness_ok) {
        c.pass = true;
        c.detail = "levels 1 and 2 agree on every resolvable cell; " + deep_note;
        return c;
    }
    c.detail = "the two lengths disagree at: ";
    for (std::size_t i = 0; i < unequal_cells.size(); ++i) {
        if (i) c.detail += "; ";
        c.detail += unequal_cells[i];
    }
    if (unequal_cells.empty()) c.detail = "levels 1 and 2 agree on every resolvable cell";
    c.detail += "; " + deep_note;
    return c;
}

// ---------------------------------------------------------------------------
// 13. Byte-identical serializations across two full, independent runs.
// ---------------------------------------------------------------------------

Criterion check_determinism(const std::string& first_suite_json,
                            const std::string& first_scan_json, const std::string& workdir) {
    Criterion c{"deterministic-reports"};
    progress("re-running the full suite from scratch for the determinism check");
    CellCache fresh;
    SuiteRun second = run_suite(fresh);
    const std::string second_suite_json = reports_to_json(second.all);
    const std::string second_scan_json =
        threshold_result_to_json(scan_thresholds(2, 2, 1, 6, fresh));

    std::ofstream(workdir + "/suite-run1.json") << first_suite_json;
    std::ofstream(workdir + "/suite-run2.json") << second_suite_json;

    if (first_suite_json != second_suite_json) {
        c.detail = "suite report files differ between runs (see suite-run1.json / "
                   "suite-run2.json)";
        return c;
    }
    if (first_scan_json != second_scan_json) {
        c.detail = "threshold scan serialization differs between runs";
        return c;
    }
    c.pass = true;
    c.detail = "suite serialization identical across independent runs (" +
               std::to_string(first_suite_json.size()) + " bytes), scan serialization identical";
    return c;
}

} // namespace

int main(int argc, char** argv) {
    const std::string workdir = argc > 1 ? argv[1] : ".";
    std::error_code ec;
    std::filesystem::create_directories(workdir, ec);

    std::vector<Criterion> lines;
    lines.reserve(13);

    try {
        progress("criterion 1: field axioms and rank identities");
        lines.push_back(check_field_axioms());

        progress("criterion 2: dual distance against exhaustive codeword sweeps");
        lines.push_back(check_dual_distance_oracle());

        CellCache cache;
        SuiteRun suite = run_suite(cache);
        const std::string suite_json = reports_to_json(suite.all);

        lines.push_back(from_claim(suite, "connectivity-equivalence-grid",
                                   kClaimConnectivityEquivalence, 1800.0));
        lines.push_back(check_level1_threshold(cache));
        lines.push_back(from_claim(suite, "isolation-test-agreement", kClaimIsolationAgreement,
                                   1800.0));
        lines.push_back(check_level2_threshold(cache));
        lines.push_back(from_claim(suite, "dual-mds-edgeless", kClaimDualMdsEdgeless, 1800.0));
        lines.push_back(from_claim(suite, "isolation-vanishing-bound",
                                   kClaimIsolationVanishingBound, 1800.0));
        lines.push_back(from_claim(suite, "monomial-generator-adjacency", kClaimMonomialAdjacency,
                                   1800.0));
        lines.push_back(from_claim(suite, "pencil-transparency", kClaimTransparency, 1800.0));
        lines.push_back(from_claim(suite, "nonisolated-diameter-bound", kClaimDiameterBound,
                                   1800.0));

        std::vector<ThresholdResult> scans;
        lines.push_back(check_threshold_scans(cache, scans));
        {
            std::ofstream out(workdir + "/threshold-scans.json");
            out << "[\n";
            for (std::size_t i = 0; i < scans.size(); ++i) {
                out << threshold_result_to_json(scans[i]);
                if (i + 1 < scans.size()) out << ",";
                out << "\n";
            }
            out << "]\n";
        }
        const std::string scan_json = threshold_result_to_json(scan_thresholds(2, 2, 1, 6, cache));

        lines.push_back(check_determinism(suite_json, scan_json, workdir));
    } catch (const std::exception& e) {
        std::cerr << "[acceptance] aborted: " << e.what() << "\n";
        return 1;
    }

    bool all_pass = true;
    for (const auto& line : lines) {
        std::cout << (line.pass ? "PASS " : "FAIL ") << line.name << ": " << line.detail << "\n";
        all_pass = all_pass && line.pass;
    }
    return all_pass ? 0 : 1;
}
