#pragma once

#include "codegraph/field.hpp"
#include "codegraph/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace codegraph {

// Bumped whenever the on-disk layout changes; stale files reload as misses.
inline constexpr int kCacheFormatVersion = 1;

struct CacheKey {
    GraphKind kind = GraphKind::Gamma;
    int q = 0;
    int n = 0;
    int k = 0;
    int t = 0;
};

// Deterministic file name for a key inside dir.
std::string cache_file_path(const std::string& dir, const CacheKey& key);

// Writes magic, a one-line header, the packed generator matrices, and the
// adjacency arrays. Overwrites atomically-enough for a single-user cache
// (write then rename is not attempted; partial files fail validation).
void save_graph(const std::string& path, const CodeGraph& g);

// Reloads a graph saved by save_graph. Returns nullopt — never throws — on
// missing file, bad magic, header mismatch against the expected key, size
// mismatch, or any malformed payload, so callers can silently rebuild.
std::optional<CodeGraph> load_graph(const std::string& path, const FieldPtr& field,
                                    const CacheKey& expected);

} // namespace codegraph
