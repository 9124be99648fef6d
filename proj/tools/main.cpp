// codegraph: build, cache, and export subspace graphs of linear codes;
// verify structural claims over a parameter grid; scan connectivity
// thresholds; search minimal saturating point sets.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "codegraph/analysis.hpp"
#include "codegraph/cache.hpp"
#include "codegraph/code.hpp"
#include "codegraph/errors.hpp"
#include "codegraph/field.hpp"
#include "codegraph/graph.hpp"
#include "codegraph/saturation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;   // a verification claim failed
constexpr int kExitBudget = 2; // a work cap or search budget was exceeded
constexpr int kExitUsage = 3;  // bad arguments

using ordered_json = nlohmann::ordered_json;

std::string default_cache_dir() {
    if (const char* env = std::getenv("CODEGRAPH_CACHE_DIR"); env != nullptr && *env != '\0')
        return env;
    return ".codegraph-cache";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

struct BuildArgs {
    int q = 0, n = 0, k = 0, t = 0;
    std::string kind = "gamma";
    std::uint64_t cap = codegraph::kDefaultSubspaceCap;
    std::string cache_dir = default_cache_dir();
    std::string dot_path, csv_path;
};

int cmd_build(const BuildArgs& a) {
    const auto kind = codegraph::graph_kind_from_name(a.kind);
    if (!kind) {
        std::cerr << "error: unknown graph kind: " << a.kind << "\n";
        return kExitUsage;
    }
    const codegraph::FieldPtr field = codegraph::field_for_order(a.q);
    const codegraph::CacheKey key{*kind, a.q, a.n, a.k, a.t};
    const std::string path = codegraph::cache_file_path(a.cache_dir, key);

    std::optional<codegraph::CodeGraph> g = codegraph::load_graph(path, field, key);
    const bool hit = g.has_value();
    if (!g) {
        codegraph::BuildOptions opts;
        opts.subspace_cap = a.cap;
        g = codegraph::build_graph(*kind, a.n, a.k, a.t, field, opts);
        codegraph::save_graph(path, *g);
    }

    std::cout << g->summary_json() << "\n";
    std::cerr << (hit ? "cache hit: " : "cache write: ") << path << "\n";
    if (!a.dot_path.empty()) write_file(a.dot_path, g->to_dot());
    if (!a.csv_path.empty()) write_file(a.csv_path, g->to_csv());
    return kExitOk;
}

struct VerifyArgs {
    std::string claim = "all";
    std::optional<int> q, n, k, t;
    codegraph::Caps caps;
    std::string report_path, md_path;
};

int cmd_verify(const VerifyArgs& a) {
    const std::vector<std::string> known = codegraph::claim_names();
    std::vector<std::string> selected;
    if (a.claim == "all") {
        selected = known;
    } else if (std::find(known.begin(), known.end(), a.claim) != known.end()) {
        selected = {a.claim};
    } else {
        std::cerr << "error: unknown claim: " << a.claim << "\nknown claims:";
        for (const auto& c : known) std::cerr << " " << c;
        std::cerr << " all\n";
        return kExitUsage;
    }

    codegraph::GridSpec grid = codegraph::GridSpec::default_grid();
    grid.caps = a.caps;
    if (a.q) grid.field_orders = {*a.q};
    if (a.n) {
        grid.n_max_q2 = *a.n;
        grid.n_max_other = *a.n;
    }
    if (a.k) grid.k_max = *a.k;

    codegraph::CellCache cache(a.caps);
    std::vector<codegraph::VerificationReport> reports;
    for (const auto& claim : selected) {
        auto batch = codegraph::run_claim(claim, grid, cache);
        for (auto& r : batch) {
            if (a.q && r.cell.q != *a.q) continue;
            if (a.n && r.cell.n != *a.n) continue;
            if (a.k && r.cell.k != *a.k) continue;
            if (a.t && r.cell.t != *a.t) continue;
            reports.push_back(std::move(r));
        }
    }

    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& r : reports) {
        switch (r.outcome) {
            case codegraph::Outcome::Pass: ++passed; break;
            case codegraph::Outcome::Fail: ++failed; break;
            case codegraph::Outcome::Skipped: ++skipped; break;
        }
        std::cout << codegraph::outcome_name(r.outcome) << " " << r.claim << " q=" << r.cell.q
                  << " n=" << r.cell.n << " k=" << r.cell.k << " t=" << r.cell.t << " :: "
                  << r.detail << "\n";
    }
    std::cout << "cells: " << reports.size() << "  pass: " << passed << "  fail: " << failed
              << "  skipped: " << skipped << "\n";

    if (!a.report_path.empty()) write_file(a.report_path, codegraph::reports_to_json(reports));
    if (!a.md_path.empty()) write_file(a.md_path, codegraph::reports_to_markdown(reports));
    return failed == 0 ? kExitOk : kExitFail;
}

struct ScanArgs {
    int q = 0, k = 0, t = 0, ceiling = 0;
    codegraph::Caps caps;
    std::string report_path, md_path;
};

int cmd_scan(const ScanArgs& a) {
    codegraph::CellCache cache(a.caps);
    const codegraph::ThresholdResult r =
        codegraph::scan_thresholds(a.q, a.k, a.t, a.ceiling, cache);

    std::cout << codegraph::threshold_results_to_markdown({r});
    std::cout << "\n| n | vertices | edges | components | isolated | connected |\n"
                 "|---|---|---|---|---|---|\n";
    for (const auto& row : r.rows)
        std::cout << "| " << row.n << " | " << row.vertices << " | " << row.edges << " | "
                  << row.components << " | " << row.isolated << " | "
                  << (row.connected ? "yes" : "no") << " |\n";

    if (!a.report_path.empty())
        write_file(a.report_path, codegraph::threshold_result_to_json(r));
    if (!a.md_path.empty())
        write_file(a.md_path, codegraph::threshold_results_to_markdown({r}));
    return kExitOk;
}

struct SatminArgs {
    int q = 0, k = 0, t = 1;
    std::string mode = "exact";
    std::uint64_t budget = codegraph::kDefaultSearchBudget;
};

int cmd_satmin(const SatminArgs& a) {
    const codegraph::FieldPtr field = codegraph::field_for_order(a.q);
    const codegraph::ProjectiveSpace space = codegraph::ProjectiveSpace::make(a.k, field);
    const codegraph::SatMode mode =
        a.mode == "greedy" ? codegraph::SatMode::Greedy : codegraph::SatMode::Exact;
    const codegraph::SatMinResult r =
        codegraph::min_saturating_size(space, a.t, mode, a.budget);

    ordered_json j;
    j["q"] = a.q;
    j["space_dim"] = a.k;
    j["points"] = space.size();
    j["t"] = a.t;
    j["size"] = r.size;
    j["lower_bound"] = r.lower_bound;
    j["mode"] = (r.mode == codegraph::SatMode::Exact) ? "exact" : "greedy";
    j["optimal"] = r.optimal;
    ordered_json witness = ordered_json::array();
    for (const auto& pt : r.witness_points) {
        ordered_json v = ordered_json::array();
        for (const auto e : pt) v.push_back(static_cast<int>(e));
        witness.push_back(v);
    }
    j["witness"] = witness;
    std::cout << j.dump(2) << "\n";

    if (mode == codegraph::SatMode::Exact && !r.optimal) {
        std::cerr << "error: exact search budget exceeded before the minimum was proven\n";
        return kExitBudget;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subspace graphs of linear codes: build, verify, scan, satmin"};
    app.require_subcommand(1);

    BuildArgs build_args;
    CLI::App* build = app.add_subcommand("build", "build one graph, cache it, print a summary");
    build->add_option("--q", build_args.q, "field order (prime power <= 64)")->required();
    build->add_option("--n", build_args.n, "code length")->required();
    build->add_option("--k", build_args.k, "code dimension")->required();
    build->add_option("--t", build_args.t, "strictness level (0 <= t <= k)");
    build->add_option("--kind", build_args.kind, "graph kind: gamma | delta | lambda")
        ->check(CLI::IsMember({"gamma", "delta", "lambda"}));
    build->add_option("--cap", build_args.cap, "subspace enumeration cap");
    build->add_option("--cache-dir", build_args.cache_dir,
                      "cache directory (env CODEGRAPH_CACHE_DIR overrides the default)");
    build->add_option("--dot", build_args.dot_path, "write DOT to this file");
    build->add_option("--csv", build_args.csv_path, "write edge CSV to this file");

    VerifyArgs verify_args;
    int vq = 0, vn = 0, vk = 0, vt = 0;
    std::string grid_name = "default";
    CLI::App* verify = app.add_subcommand("verify", "run claim verifiers over a parameter grid");
    verify->add_option("--claim", verify_args.claim,
                       "claim id (see --help-claims) or 'all'");
    verify->add_option("--grid", grid_name, "grid preset (only 'default')")
        ->check(CLI::IsMember({"default"}));
    CLI::Option* oq = verify->add_option("--q", vq, "restrict to this field order");
    CLI::Option* on = verify->add_option("--n", vn, "restrict to this length");
    CLI::Option* ok = verify->add_option("--k", vk, "restrict to this dimension");
    CLI::Option* ot = verify->add_option("--t", vt, "restrict to this strictness level");
    verify->add_option("--cap", verify_args.caps.subspace_cap, "subspace enumeration cap");
    verify->add_option("--orbit-budget", verify_args.caps.orbit_budget,
                       "monomial orbit enumeration budget");
    verify->add_option("--search-budget", verify_args.caps.search_budget,
                       "exact satmin search budget");
    verify->add_option("--report", verify_args.report_path, "write JSON report to this file");
    verify->add_option("--md", verify_args.md_path, "write Markdown report to this file");

    ScanArgs scan_args;
    CLI::App* scan = app.add_subcommand("scan", "scan lengths for connectivity thresholds");
    scan->add_option("--q", scan_args.q, "field order")->required();
    scan->add_option("--k", scan_args.k, "code dimension")->required();
    scan->add_option("--t", scan_args.t, "strictness level")->required();
    scan->add_option("--ceiling", scan_args.ceiling, "largest length to scan")->required();
    scan->add_option("--cap", scan_args.caps.subspace_cap, "subspace enumeration cap");
    scan->add_option("--report", scan_args.report_path, "write JSON result to this file");
    scan->add_option("--md", scan_args.md_path, "write Markdown table to this file");

    SatminArgs satmin_args;
    CLI::App* satmin =
        app.add_subcommand("satmin", "minimal saturating point set in a projective space");
    satmin->add_option("--q", satmin_args.q, "field order")->required();
    satmin->add_option("--k", satmin_args.k,
                       "vector dimension of the space (points have k coordinates)")
        ->required();
    satmin->add_option("--t", satmin_args.t, "saturation level (default 1)");
    satmin->add_option("--mode", satmin_args.mode, "exact | greedy")
        ->check(CLI::IsMember({"exact", "greedy"}));
    satmin->add_option("--search-budget", satmin_args.budget, "exact search node budget");

    // Accepted for interface stability; all computations are single-threaded
    // and deterministic, so these change nothing.
    int workers = 1;
    std::uint64_t seed = 0;
    for (CLI::App* sub : {build, verify, scan, satmin}) {
        sub->add_option("--workers", workers, "reserved; runs are single-threaded");
        sub->add_option("--seed", seed, "reserved; runs are deterministic");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*oq) verify_args.q = vq;
    if (*on) verify_args.n = vn;
    if (*ok) verify_args.k = vk;
    if (*ot) verify_args.t = vt;

    try {
        if (build->parsed()) return cmd_build(build_args);
        if (verify->parsed()) return cmd_verify(verify_args);
        if (scan->parsed()) return cmd_scan(scan_args);
        if (satmin->parsed()) return cmd_satmin(satmin_args);
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const codegraph::budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
