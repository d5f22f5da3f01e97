#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "elated/digitmap.hpp"

namespace elated {

// One cycle of E_{e,b}, rotated so the minimum member comes first; members
// are stored in decimal (base-b rendering is a presentation concern).
struct Cycle {
    std::vector<Int> members;
    const Int& min() const { return members.front(); }
    std::size_t length() const { return members.size(); }
};

struct CycleSet {
    std::uint64_t base = 0;
    std::uint64_t exponent = 0;
    std::vector<Cycle> cycles; // sorted by minimum member
    // True/false when builtin reference data covers (base, exponent);
    // nullopt when no reference data exists (e.g. base > 10).
    std::optional<bool> matches_reference;

    bool contains_member(const Int& v) const;
};

struct EnumerateOptions {
    unsigned threads = 1;
    // For exponent != 2 a caller-supplied bound B with "a >= B implies
    // E_{e,b}(a) < a" is required; it is spot-checked, not trusted blindly.
    std::optional<Int> descent_bound;
};

CycleSet enumerate_cycles(Base b, Exponent e = Exponent(2), EnumerateOptions opts = {});

// Registers a descent bound so that cached contexts (attractor, is_elated,
// heights) can work with exponents other than 2.
void set_descent_bound(Base b, Exponent e, const Int& bound);

// Cached per (base, exponent); built on first use.
const CycleSet& cycle_set(Base b, Exponent e = Exponent(2));

struct AttractorResult {
    Int u;              // minimum member of the cycle first reached
    std::uint64_t steps; // steps until the trajectory first touches the cycle
};

AttractorResult attractor(const Int& n, Base b, Exponent e = Exponent(2));

bool is_elated(const Int& n, Base b, Exponent e = Exponent(2));

} // namespace elated
