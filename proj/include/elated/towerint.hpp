#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elated/digitmap.hpp"

namespace elated::towerint {

using elated::Int;

// Digit cap for exact materialization. Values certified to exceed the cap
// are never expanded; callers raise the cap explicitly when they mean it.
inline constexpr std::uint64_t kDefaultDigitCap = 10'000'000;

// Fixed seed for the deterministic verification-prime stream.
inline constexpr std::uint64_t kDefaultPrimeSeed = 0x6e1a7ed5eed5ull;

// Saturating bounds carried by every node. lb is always a certified lower
// bound (possibly clamped); ub is exact-or-missing.
struct Bounds {
    Int lb;
    std::optional<Int> ub;
};

// An exact nonnegative integer given as an expression tree. Nodes certify
// their own nonnegativity and every ExactDiv carries a checked divisibility
// certificate.
class TowerInt {
public:
    enum class Kind { Literal, Sum, Product, PowBase, Repunit, ExactDiv };

    TowerInt(); // literal zero

    static TowerInt literal(Int v);
    static TowerInt sum(std::vector<std::pair<Int, TowerInt>> terms);
    static TowerInt product(std::vector<TowerInt> factors);
    static TowerInt pow(Int base, TowerInt exponent); // base >= 2
    static TowerInt repunit(std::uint64_t r, std::uint64_t base, TowerInt count);
    static TowerInt exact_div(TowerInt numerator, Int divisor);

    Kind kind() const;
    const Bounds& bounds() const;

    // Accessors (valid only for the matching kind).
    const Int& literal_value() const;
    const std::vector<std::pair<Int, TowerInt>>& terms() const;
    const std::vector<TowerInt>& factors() const;
    const Int& pow_base() const;
    const TowerInt& child() const; // PowBase exponent / Repunit count / ExactDiv numerator
    std::uint64_t repunit_r() const;
    std::uint64_t repunit_base() const;
    const Int& divisor() const;

    std::string to_text() const; // human-readable infix form

    struct Node;
    const Node* raw() const { return node_.get(); }

private:
    explicit TowerInt(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

TowerInt operator+(const TowerInt& a, const TowerInt& b);
TowerInt operator+(const TowerInt& a, const Int& b);
TowerInt operator-(const TowerInt& a, const Int& b);
TowerInt operator*(const Int& k, const TowerInt& a);

// Certified lower bound on the value (saturates at a large constant).
Int lower_bound(const TowerInt& x);

// Base-10 modulus decomposition, as used by the elated-number verifications:
// modulus = 2^alpha * 5^beta * coprime_part with gcd(coprime_part, 10) = 1.
struct ModContext {
    Int modulus;
    unsigned alpha = 0;
    unsigned beta = 0;
    Int coprime_part;
    Int order10; // multiplicative order of 10 modulo coprime_part (1 if trivial)
    static ModContext make(const Int& modulus);
};

// Residue of the exact value modulo m. Power nodes with huge exponents are
// reduced through the multiplicative order of their base; exponents sharing
// factors with m additionally require the lower bound to clear the relevant
// prime valuations.
Int eval_mod(const TowerInt& x, const Int& m);
Int eval_mod(const TowerInt& x, const ModContext& ctx);

// Exact value, or VerificationError("exceeds digit cap") when the value
// cannot be certified to fit. Never silently truncates.
Int eval_exact(const TowerInt& x, std::uint64_t digit_cap = kDefaultDigitCap);

// Can eval_exact succeed cheaply? (guards only; no materialization)
bool materializable(const TowerInt& x, std::uint64_t digit_cap = kDefaultDigitCap);

// A base-b integer as a sequence of digit runs, counts given symbolically.
class RunSymbolic {
public:
    struct Run {
        std::uint64_t digit;
        TowerInt count;
    };

    RunSymbolic(std::uint64_t base, std::vector<Run> runs); // normalizes

    std::uint64_t base() const { return base_; }
    const std::vector<Run>& runs() const { return runs_; }
    std::uint64_t leading_digit() const { return runs_.front().digit; }

    TowerInt value() const;
    TowerInt total_digits() const;

    static RunSymbolic from_int(const Int& n, std::uint64_t base);
    // prefix * base^tail - 1 rendered as digit runs (prefix >= 2).
    static RunSymbolic prefix_pow_minus_one(const Int& prefix, std::uint64_t base, TowerInt tail);

    Int materialize(std::uint64_t digit_cap = kDefaultDigitCap) const;
    bool materializable(std::uint64_t digit_cap = kDefaultDigitCap) const;

    std::string to_text() const; // e.g. 8158[9^13888887]

private:
    std::uint64_t base_;
    std::vector<Run> runs_;
};

// Leading digit times the digit-power sum, computed from the run form.
TowerInt elated_step_symbolic(const RunSymbolic& x, std::uint64_t e = 2);
TowerInt happy_step_symbolic(const RunSymbolic& x, std::uint64_t e = 2);

// Equality decided by agreement modulo `trials` distinct verification
// primes, with exact comparison whenever both sides fit the digit cap.
// One-sided: false positives are possible, false negatives are not.
bool equal_mod_primes(const TowerInt& x, const TowerInt& y, unsigned trials = 20,
                      std::uint64_t seed = kDefaultPrimeSeed);

struct CongruenceCheck {
    std::string label;
    Int modulus;
    Int expected;
    Int actual;
    bool ok;
};

struct EqualityCheck {
    std::string label;
    bool exact;      // exact comparison vs. modular
    unsigned trials; // verification primes used (0 if exact)
    bool ok;
};

struct TowerReport {
    unsigned k = 0;
    RunSymbolic value;
    std::string value_text;
    std::vector<CongruenceCheck> congruences;
    std::vector<EqualityCheck> equalities;
    std::vector<Int> exact_tail; // first materializable image down to 1
    std::uint64_t height = 0;
    bool verified = false;
    std::vector<std::string> trusted_notes; // steps resting on stated case analysis
};

// Builds the minimal elated number of height k (13..16) in symbolic form and
// verifies the congruence ladder, the symbolic descent, and the exact tail.
TowerReport verify_epsilon_tower(unsigned k, unsigned trials = 20);

} // namespace elated::towerint
