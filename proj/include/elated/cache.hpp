#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "elated/digitmap.hpp"

namespace elated {

// Height cache file: versioned header (magic, format version, base,
// exponent, map kind), then (key, height) pairs sorted strictly by key.
// UINT64_MAX is the no-height sentinel. Writes are atomic (temp + rename).

std::string height_cache_filename(std::uint64_t base, std::uint64_t exponent, MapKind kind);

std::vector<std::pair<std::uint64_t, std::uint64_t>> read_height_cache(
    const std::filesystem::path& file, std::uint64_t base, std::uint64_t exponent, MapKind kind);

void write_height_cache(const std::filesystem::path& file, std::uint64_t base,
                        std::uint64_t exponent, MapKind kind,
                        const std::vector<std::pair<std::uint64_t, std::uint64_t>>& records);

} // namespace elated
