#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "elated/cycles.hpp"
#include "elated/digitmap.hpp"
#include "elated/towerint.hpp"

namespace elated {

// Memoized heights for one (base, exponent, map kind). height(n) is the
// number of steps to reach 1, absent when n is attracted elsewhere.
class HeightTable {
public:
    HeightTable(Base b, Exponent e, MapKind kind);

    std::optional<std::uint64_t> height(const Int& n);

    std::uint64_t base() const { return base_; }
    std::uint64_t exponent() const { return exp_; }
    MapKind kind() const { return kind_; }

    void load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;
    bool dirty() const { return dirty_; }
    std::size_t size() const;

private:
    std::uint64_t base_;
    std::uint64_t exp_;
    MapKind kind_;
    std::uint64_t memo_limit_;
    // value -> height; kNoHeight for values not attracted to 1
    std::unordered_map<std::uint64_t, std::uint64_t> memo_;
    mutable std::shared_mutex mu_;
    mutable bool dirty_ = false;

    static constexpr std::uint64_t kNoHeight = UINT64_MAX;
};

// Process-wide table registry. When a cache directory is configured, tables
// load from it on first use and flush_height_caches() persists them.
HeightTable& height_table(Base b, Exponent e, MapKind kind);
void set_cache_directory(std::optional<std::filesystem::path> dir);
std::optional<std::filesystem::path> cache_directory();
void flush_height_caches();

std::optional<std::uint64_t> height(const Int& n, Base b, Exponent e = Exponent(2),
                                    MapKind kind = MapKind::Elated);

// n > b with non-leading base-b digits nonzero and nondecreasing.
bool is_basic(const Int& n, Base b);
// All base-b digits nondecreasing, leading digit included.
bool is_fully_basic(const Int& n, Base b);

// Ascending stream: every n < b^2, then every basic number. Minimal-height
// numbers always appear in it.
class CandidateStream {
public:
    explicit CandidateStream(Base b);
    Int next();

private:
    std::uint64_t base_;
    Int small_;                         // phase 1 counter
    std::uint64_t length_ = 2;          // current digit length in phase 2
    std::uint64_t lead_ = 0;            // current leading digit
    std::vector<std::uint64_t> tail_;   // nondecreasing non-leading digits
    bool phase2_ = false;
    void advance_tail();
};

struct SearchOptions {
    Int limit = pow_u64(10, 15);
    unsigned threads = 1;
};

struct EpsilonRecord {
    std::uint64_t base = 0;
    std::uint64_t k = 0;
    MapKind kind = MapKind::Elated;
    std::optional<Int> exact;
    std::optional<towerint::RunSymbolic> symbolic;
    std::vector<Int> trajectory; // exact descent evidence when materializable
    Int search_limit;            // bound under which minimality was established (0: constructive)
};

// Smallest number of the given height. epsilon: elated map; sigma: happy map.
EpsilonRecord epsilon(std::uint64_t k, Base b, const SearchOptions& opts = {});
Int sigma(std::uint64_t k, Base b, const SearchOptions& opts = {});

// Per-height minima discovered in one pass over the candidate stream up to
// `limit`; key k maps to the smallest number of height k below the limit.
std::map<std::uint64_t, Int> height_minima(Base b, MapKind kind, const Int& limit);

// Closed forms for bases 2 and 3. Values are run-length symbolic; the exact
// field is filled when the value is small enough to expand.
EpsilonRecord epsilon_base2(std::uint64_t k);
EpsilonRecord epsilon_base3(std::uint64_t k);

} // namespace elated
