#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "elated/digitmap.hpp"
#include "elated/towerint.hpp"

namespace elated {

// The fully basic numbers of shortest digit length mapping to `a` under the
// happy step. Members are kept in run form; trailing (b-1) runs may carry
// symbolic counts after a reduction.
struct PreimageSet {
    std::uint64_t base = 0;
    Int a; // reduced representative a' when the target is symbolic
    std::optional<towerint::TowerInt> a_symbolic;
    towerint::TowerInt length; // common digit length of every member
    std::vector<towerint::RunSymbolic> members; // ascending numeric value

    std::vector<Int> exact_members(std::uint64_t digit_cap = towerint::kDefaultDigitCap) const;
    std::vector<std::string> rendered() const; // run-length text forms
};

PreimageSet shortest_fully_basic_preimages(const Int& a, Base b);

struct BaseConstants {
    std::uint64_t base = 0;
    Int a_star;
    Int C;
    // Set when a_star sits at the end of the scan window 2b(b-1)^2, which
    // would mean the window argument needs a second look.
    bool at_window_boundary = false;
};

// Scans a = 1 .. 2b(b-1)^2 for the largest a whose preimage set has a member
// not ending in digit b-1, and C = floor(a_star/(b-1)^2). Cached per base.
const BaseConstants& compute_base_constants(Base b);

// S(a) for a > C_b (b-1)^2 via the append-(b-1)s reduction: q trailing (b-1)
// digits are attached to each member of S(a - (b-1)^2 q).
PreimageSet reduce_preimages(const Int& a, Base b);

// Same reduction with a known only symbolically; q becomes a TowerInt. The
// lower bound of `a` must clear C_b (b-1)^2.
PreimageSet reduce_preimages_symbolic(const towerint::TowerInt& a, Base b);

// Digit strings left after removing all trailing (b-1) digits from each
// member of S(a); the empty string is legitimate.
std::set<std::string> stripped_preimages(const Int& a, Base b);

} // namespace elated
