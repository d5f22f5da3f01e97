#include "elated/cache.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "elated/errors.hpp"

namespace elated {

namespace {

constexpr char kMagic[8] = {'E', 'L', 'H', 'C', 'A', 'C', 'H', 'E'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::ofstream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::ifstream& in, const std::string& path) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw CacheError("truncated cache file", path);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

} // namespace

std::string height_cache_filename(std::uint64_t base, std::uint64_t exponent, MapKind kind) {
    return "heights_b" + std::to_string(base) + "_e" + std::to_string(exponent) +
           (kind == MapKind::Elated ? "_elated" : "_happy") + ".bin";
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> read_height_cache(
    const std::filesystem::path& file, std::uint64_t base, std::uint64_t exponent, MapKind kind) {
    std::string path = file.string();
    std::ifstream in(file, std::ios::binary);
    if (!in) throw CacheError("cannot open cache file", path);

    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0) throw CacheError("bad magic", path);

    std::uint64_t version = get_u64(in, path);
    if (version != kVersion) throw CacheError("unsupported cache version", path);
    if (get_u64(in, path) != base) throw CacheError("cache base mismatch", path);
    if (get_u64(in, path) != exponent) throw CacheError("cache exponent mismatch", path);
    std::uint64_t kind_tag = get_u64(in, path);
    if (kind_tag != (kind == MapKind::Elated ? 0u : 1u)) throw CacheError("cache kind mismatch", path);

    std::uint64_t count = get_u64(in, path);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> records;
    records.reserve(count);
    std::uint64_t prev_key = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t key = get_u64(in, path);
        std::uint64_t value = get_u64(in, path);
        if (i > 0 && key <= prev_key) throw CacheError("cache records out of order", path);
        prev_key = key;
        records.emplace_back(key, value);
    }
    return records;
}

void write_height_cache(const std::filesystem::path& file, std::uint64_t base,
                        std::uint64_t exponent, MapKind kind,
                        const std::vector<std::pair<std::uint64_t, std::uint64_t>>& records) {
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write cache file", tmp.string());
        out.write(kMagic, 8);
        put_u64(out, kVersion);
        put_u64(out, base);
        put_u64(out, exponent);
        put_u64(out, kind == MapKind::Elated ? 0 : 1);
        put_u64(out, records.size());
        for (const auto& [key, value] : records) {
            put_u64(out, key);
            put_u64(out, value);
        }
        if (!out) throw CacheError("write failed", tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

} // namespace elated
