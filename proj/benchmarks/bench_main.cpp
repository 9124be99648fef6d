// Microbenchmarks for the hot paths: field arithmetic, echelon reduction,
// dual-distance computation, subspace enumeration, ambient graph
// construction, and secant-span coverage.

#include "codegraph/field.hpp"
#include "codegraph/graph.hpp"
#include "codegraph/grassmann.hpp"
#include "codegraph/matrix.hpp"
#include "codegraph/saturation.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace codegraph;

namespace {

MatGF random_matrix(const FieldPtr& field, int rows, int cols, std::mt19937& rng) {
    MatGF m(rows, cols, field);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, static_cast<GfElem>(rng() % field->q()));
    return m;
}

void BM_FieldMultiply(benchmark::State& state) {
    const auto field = field_for_order(static_cast<int>(state.range(0)));
    const Field& f = *field;
    const int q = f.q();
    std::mt19937 rng(7);
    std::vector<GfElem> a(1024), b(1024);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<GfElem>(rng() % q);
        b[i] = static_cast<GfElem>(rng() % q);
    }
    for (auto _ : state) {
        GfElem acc = 0;
        for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}

void BM_Rref(benchmark::State& state) {
    const auto field = field_for_order(static_cast<int>(state.range(0)));
    std::mt19937 rng(11);
    std::vector<MatGF> mats;
    for (int i = 0; i < 64; ++i) mats.push_back(random_matrix(field, 4, 8, rng));
    std::size_t next = 0;
    for (auto _ : state) {
        auto result = rref(mats[next]);
        benchmark::DoNotOptimize(result.rank);
        next = (next + 1) % mats.size();
    }
}

void BM_DualDistance(benchmark::State& state) {
    const auto field = field_for_order(static_cast<int>(state.range(0)));
    std::mt19937 rng(13);
    std::vector<LinearCode> codes;
    while (codes.size() < 64) {
        auto m = random_matrix(field, 3, 7, rng);
        if (rref(m).rank == 3) codes.push_back(LinearCode::from_matrix(m));
    }
    std::size_t next = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(codes[next].dual_distance());
        next = (next + 1) % codes.size();
    }
}

void BM_EnumerateSubspaces(benchmark::State& state) {
    const auto field = field_for_order(2);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto family = enumerate_subspaces(n, 2, field);
        benchmark::DoNotOptimize(family.size());
    }
}

void BM_BuildMaster(benchmark::State& state) {
    const auto field = field_for_order(2);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto master = build_labeled_gamma(n, 2, field);
        benchmark::DoNotOptimize(master.neighbors.size());
    }
}

void BM_ExtractLevelGraph(benchmark::State& state) {
    const auto field = field_for_order(2);
    const auto master = build_labeled_gamma(static_cast<int>(state.range(0)), 2, field);
    for (auto _ : state) {
        auto graph = extract_graph(master, GraphKind::Lambda, 1);
        benchmark::DoNotOptimize(graph.edge_count());
    }
}

void BM_SecantSpan(benchmark::State& state) {
    const auto field = field_for_order(2);
    const auto space = ProjectiveSpace::make(static_cast<int>(state.range(0)), field);
    std::vector<std::uint32_t> picks;
    for (std::uint32_t i = 0; i < space.size(); i += 3) picks.push_back(i);
    const auto omega = ProjPointSet::from_indices(picks);
    for (auto _ : state) {
        auto span = secant_span(space, omega, 1);
        benchmark::DoNotOptimize(span.distinct_size());
    }
}

} // namespace

BENCHMARK(BM_FieldMultiply)->Arg(2)->Arg(4)->Arg(9);
BENCHMARK(BM_Rref)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_DualDistance)->Arg(2)->Arg(3);
BENCHMARK(BM_EnumerateSubspaces)->Arg(5)->Arg(6)->Arg(7);
BENCHMARK(BM_BuildMaster)->Arg(5)->Arg(6);
BENCHMARK(BM_ExtractLevelGraph)->Arg(6)->Arg(7);
BENCHMARK(BM_SecantSpan)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
