#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "elated/errors.hpp"
#include "elated/ints.hpp"

namespace elated {

struct Base {
    explicit Base(std::uint64_t b) : v(b) {
        if (b < 2) throw DomainError("base must be >= 2");
    }
    std::uint64_t v;
    friend bool operator==(Base a, Base b) { return a.v == b.v; }
};

struct Exponent {
    explicit Exponent(std::uint64_t e) : v(e) {
        if (e < 1) throw DomainError("exponent must be >= 1");
    }
    std::uint64_t v;
    friend bool operator==(Exponent a, Exponent b) { return a.v == b.v; }
};

// Base-b digits of a positive integer, most significant first.
class DigitExpansion {
public:
    DigitExpansion(Base base, std::vector<std::uint64_t> digits_msf);

    std::uint64_t base() const { return base_; }
    const std::vector<std::uint64_t>& digits() const { return digits_; }
    std::uint64_t leading() const { return digits_.front(); }
    std::size_t size() const { return digits_.size(); }

    Int value() const; // inverse of to_digits

private:
    std::uint64_t base_;
    std::vector<std::uint64_t> digits_;
};

DigitExpansion to_digits(const Int& n, Base b);
Int from_digits(const DigitExpansion& d);

std::uint64_t leading_digit(const Int& n, Base b);

// Sum of e-th powers of the base-b digits of n.
Int happy_step(const Int& n, Base b, Exponent e = Exponent(2));

// Leading digit times the sum of e-th powers of the base-b digits of n.
Int elated_step(const Int& n, Base b, Exponent e = Exponent(2));

// R_{r,b}(x): the integer with x ones followed by r zeros in base b. Zero
// when x = 0.
Int repunit(std::uint64_t r, Base b, const Int& x);

enum class MapKind { Elated, Happy };

Int apply_step(const Int& n, Base b, Exponent e, MapKind kind);

struct Trajectory {
    enum class Terminal { ReachedTarget, EnteredCycle };

    std::uint64_t base;
    std::uint64_t exponent;
    MapKind kind;
    std::vector<Int> values; // values[0] = start; no duplicates
    Terminal terminal;
    std::size_t cycle_index = 0; // first index of the repeated value, if any
};

// Applies the chosen step until `target` is reached (when given) or a value
// repeats. The full value sequence is recorded.
Trajectory iterate(const Int& n, Base b, Exponent e, MapKind kind,
                   std::optional<Int> target = std::nullopt);

} // namespace elated
