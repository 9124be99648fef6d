#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "codegraph/cache.hpp"
#include "codegraph/field.hpp"
#include "codegraph/graph.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

using namespace codegraph;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("codegraph-cache-test-" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void spit(const std::string& p, const std::string& data) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

bool same_graph(const CodeGraph& a, const CodeGraph& b) {
    if (a.kind() != b.kind() || a.t() != b.t()) return false;
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    if (a.offsets() != b.offsets() || a.neighbors() != b.neighbors()) return false;
    for (std::size_t i = 0; i < a.vertex_count(); ++i)
        if (!(a.family()[i] == b.family()[i])) return false;
    return a.summary_json() == b.summary_json();
}

} // namespace

TEST_CASE("cache file names are deterministic and key-specific") {
    CacheKey key{GraphKind::Lambda, 2, 3, 2, 1};
    auto p1 = cache_file_path("/tmp/cachedir", key);
    auto p2 = cache_file_path("/tmp/cachedir", key);
    CHECK(p1 == p2);
    CHECK(p1.find("lambda") != std::string::npos);
    CHECK(p1.find("q2") != std::string::npos);
    CHECK(p1.find("n3") != std::string::npos);
    CHECK(p1.find("k2") != std::string::npos);
    CHECK(p1.find("t1") != std::string::npos);
    CacheKey other = key;
    other.t = 0;
    CHECK(cache_file_path("/tmp/cachedir", other) != p1);
}

TEST_CASE("graphs survive a save and load round trip") {
    TempDir dir;
    auto field = field_for_order(2);
    for (auto kind : {GraphKind::Gamma, GraphKind::Delta, GraphKind::Lambda}) {
        int t = kind == GraphKind::Gamma ? 0 : 1;
        auto g = build_graph(kind, 4, 2, t, field);
        CacheKey key{kind, 2, 4, 2, t};
        auto path = cache_file_path(dir.path.string(), key);
        save_graph(path, g);
        auto back = load_graph(path, field, key);
        REQUIRE(back.has_value());
        CHECK(same_graph(g, *back));
    }
}

TEST_CASE("saving creates missing parent directories") {
    TempDir dir;
    auto field = field_for_order(3);
    auto g = build_graph(GraphKind::Lambda, 3, 2, 1, field);
    CacheKey key{GraphKind::Lambda, 3, 3, 2, 1};
    auto nested = (dir.path / "a" / "b").string();
    auto path = cache_file_path(nested, key);
    save_graph(path, g);
    auto back = load_graph(path, field, key);
    REQUIRE(back.has_value());
    CHECK(same_graph(g, *back));
}

TEST_CASE("repeated saves are byte-identical") {
    TempDir dir;
    auto field = field_for_order(2);
    auto g = build_graph(GraphKind::Lambda, 4, 2, 1, field);
    CacheKey key{GraphKind::Lambda, 2, 4, 2, 1};
    auto p1 = (dir.path / "one.cgraph").string();
    auto p2 = (dir.path / "two.cgraph").string();
    save_graph(p1, g);
    save_graph(p2, build_graph(GraphKind::Lambda, 4, 2, 1, field));
    CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("loads miss softly instead of throwing") {
    TempDir dir;
    auto field = field_for_order(2);
    auto g = build_graph(GraphKind::Lambda, 3, 2, 1, field);
    CacheKey key{GraphKind::Lambda, 2, 3, 2, 1};
    auto path = cache_file_path(dir.path.string(), key);
    save_graph(path, g);

    // Missing file.
    CHECK_FALSE(load_graph((dir.path / "absent.cgraph").string(), field, key).has_value());

    // Key mismatch: same bytes, different expectation.
    CacheKey wrong = key;
    wrong.n = 4;
    CHECK_FALSE(load_graph(path, field, wrong).has_value());
    wrong = key;
    wrong.kind = GraphKind::Delta;
    CHECK_FALSE(load_graph(path, field, wrong).has_value());
    wrong = key;
    wrong.t = 0;
    CHECK_FALSE(load_graph(path, field, wrong).has_value());

    // Wrong field for the stored parameters.
    CHECK_FALSE(load_graph(path, field_for_order(3), key).has_value());

    auto good = slurp(path);

    // Bad magic.
    auto bad = good;
    bad[0] = static_cast<char>(bad[0] ^ 0x5a);
    spit(path, bad);
    CHECK_FALSE(load_graph(path, field, key).has_value());

    // Truncation at several depths.
    for (auto keep : {std::size_t{1}, good.size() / 4, good.size() / 2, good.size() - 1}) {
        spit(path, good.substr(0, keep));
        CHECK_FALSE(load_graph(path, field, key).has_value());
    }

    // Trailing garbage.
    spit(path, good + "extra");
    CHECK_FALSE(load_graph(path, field, key).has_value());

    // Empty file.
    spit(path, "");
    CHECK_FALSE(load_graph(path, field, key).has_value());

    // Restored bytes load again.
    spit(path, good);
    CHECK(load_graph(path, field, key).has_value());
}

TEST_CASE("a reloaded empty graph keeps its shape") {
    TempDir dir;
    auto field = field_for_order(2);
    auto g = build_graph(GraphKind::Lambda, 4, 2, 2, field); // empty class
    REQUIRE(g.vertex_count() == 0);
    CacheKey key{GraphKind::Lambda, 2, 4, 2, 2};
    auto path = cache_file_path(dir.path.string(), key);
    save_graph(path, g);
    auto back = load_graph(path, field, key);
    REQUIRE(back.has_value());
    CHECK(back->vertex_count() == 0);
    CHECK(back->edge_count() == 0);
    CHECK(back->connected());
}
