#include "codegraph/cache.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace codegraph {
namespace {

constexpr char kMagic[] = "CGRAPH1\n"; // 8 bytes on disk

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

} // namespace

std::string cache_file_path(const std::string& dir, const CacheKey& key) {
    return dir + "/" + graph_kind_name(key.kind) + "-q" + std::to_string(key.q) + "-n" +
           std::to_string(key.n) + "-k" + std::to_string(key.k) + "-t" + std::to_string(key.t) +
           ".cgraph";
}

void save_graph(const std::string& path, const CodeGraph& g) {
    nlohmann::ordered_json header;
    header["format_version"] = kCacheFormatVersion;
    header["kind"] = graph_kind_name(g.kind());
    header["q"] = g.q();
    header["n"] = g.n();
    header["k"] = g.k();
    header["t"] = g.t();
    header["vertices"] = g.vertex_count();
    header["edges"] = g.edge_count();

    std::string out;
    out += kMagic;
    out += header.dump();
    out += '\n';
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const MatGF& gen = g.family()[v].generator();
        for (int r = 0; r < gen.rows(); ++r)
            for (int c = 0; c < gen.cols(); ++c) out.push_back(static_cast<char>(gen.at(r, c)));
    }
    for (std::uint64_t off : g.offsets()) put_u64(out, off);
    for (std::uint32_t nb : g.neighbors()) put_u32(out, nb);

    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open cache file for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw std::runtime_error("cache write failed: " + path);
}

std::optional<CodeGraph> load_graph(const std::string& path, const FieldPtr& field,
                                    const CacheKey& expected) {
    try {
        std::ifstream f(path, std::ios::binary);
        if (!f) return std::nullopt;
        std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        const std::size_t magic_len = sizeof(kMagic) - 1;
        if (data.size() < magic_len || std::memcmp(data.data(), kMagic, magic_len) != 0)
            return std::nullopt;
        const std::size_t header_end = data.find('\n', magic_len);
        if (header_end == std::string::npos) return std::nullopt;
        const nlohmann::json header =
            nlohmann::json::parse(data.substr(magic_len, header_end - magic_len), nullptr, false);
        if (header.is_discarded()) return std::nullopt;
        if (header.value("format_version", -1) != kCacheFormatVersion) return std::nullopt;
        if (header.value("kind", std::string()) != graph_kind_name(expected.kind)) return std::nullopt;
        if (header.value("q", -1) != expected.q || header.value("n", -1) != expected.n ||
            header.value("k", -1) != expected.k || header.value("t", -1) != expected.t)
            return std::nullopt;
        if (!field || field->q() != expected.q) return std::nullopt;
        if (!header.contains("vertices") || !header.contains("edges")) return std::nullopt;
        const std::uint64_t vertices = header["vertices"].get<std::uint64_t>();
        const std::uint64_t edges = header["edges"].get<std::uint64_t>();

        const int n = expected.n, k = expected.k;
        const std::uint64_t gen_bytes = vertices * static_cast<std::uint64_t>(n) * k;
        const std::uint64_t offset_bytes = (vertices + 1) * 8;
        const std::uint64_t neighbor_bytes = edges * 2 * 4;
        const std::uint64_t want =
            header_end + 1 + gen_bytes + offset_bytes + neighbor_bytes;
        if (data.size() != want) return std::nullopt;

        const unsigned char* p =
            reinterpret_cast<const unsigned char*>(data.data()) + header_end + 1;
        SubspaceFamily family(n, k, field);
        for (std::uint64_t v = 0; v < vertices; ++v) {
            MatGF gen(k, n, field);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < n; ++c) {
                    const GfElem e = static_cast<GfElem>(*p++);
                    if (e >= field->q()) return std::nullopt;
                    gen.set(r, c, e);
                }
            LinearCode code = LinearCode::from_matrix(gen);
            if (code.generator() != gen) return std::nullopt; // stored form must be canonical
            family.add(std::move(code));
        }
        std::vector<std::uint64_t> offsets(vertices + 1);
        for (std::uint64_t i = 0; i <= vertices; ++i, p += 8) offsets[i] = get_u64(p);
        std::vector<std::uint32_t> neighbors(edges * 2);
        for (std::uint64_t i = 0; i < edges * 2; ++i, p += 4) neighbors[i] = get_u32(p);
        for (std::uint64_t i = 0; i < vertices; ++i)
            if (offsets[i] > offsets[i + 1]) return std::nullopt;
        return CodeGraph(expected.kind, expected.t, std::move(family), std::move(offsets),
                         std::move(neighbors));
    } catch (...) {
        return std::nullopt;
    }
}

} // namespace codegraph
