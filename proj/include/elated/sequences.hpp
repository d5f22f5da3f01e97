#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elated/cycles.hpp"
#include "elated/towerint.hpp"

namespace elated {

// Witness (n, k, r) that shifts a congruent set T into simultaneous
// happiness: S^{k-1}(t+n) = 1 for every t in T, with b^r above every
// intermediate value.
struct GoodSetWitness {
    std::uint64_t base = 0;
    std::vector<Int> T;
    Int n;               // minimal shift; 0 is permitted (recorded as such)
    std::uint64_t k = 0; // 1 + largest happy height among the t+n
    std::uint64_t r = 0; // minimal with b^r > every S^i(t+n), 0 <= i <= k-1
    Int max_intermediate;
};

struct WitnessOptions {
    Int ceiling = 1'000'000; // search ceiling on n
};

GoodSetWitness find_good_witness(const std::vector<Int>& T, Base b,
                                 const WitnessOptions& opts = {});

struct ChainElement {
    enum class Kind { ToCycle, ParityNonElated };
    Kind kind = Kind::ToCycle;
    std::vector<towerint::RunSymbolic> chain; // element first, then E2 images, ending at u
    bool exact = false; // chain additionally confirmed by direct iteration
};

// A machine-checkable certificate that {start, start+d, ..., start+(L-1)d}
// consists of u-attracted numbers (or, for the interleaved variant, that the
// even positions cannot be elated at all).
struct RunCertificate {
    std::string scheme; // "u_attracted" | "even_consecutive" | "non_elated"
    std::uint64_t base = 0;
    Int u;
    Int d;
    std::uint64_t length = 0;
    GoodSetWitness witness;
    towerint::TowerInt m;
    std::optional<Int> m_exact;
    std::vector<ChainElement> elements;
    unsigned trials = 20;
    bool verified = false;
};

// Theorem-backed constructions. Every chain step of the returned certificate
// has been verified (exactly where materializable, modulo verification
// primes otherwise).
RunCertificate build_u_attracted_run(std::uint64_t L, Base b, const Int& u, unsigned trials = 20);
RunCertificate build_even_consecutive_run(std::uint64_t L, Base b, const Int& u,
                                          unsigned trials = 20);
RunCertificate build_non_elated_run(std::uint64_t L, Base b, std::optional<Int> u = std::nullopt,
                                    unsigned trials = 20);

// Checker, independent of the builders: re-verifies every chain step, the
// common difference, and the parity exclusions.
bool verify_certificate(const RunCertificate& cert, unsigned trials = 20);

} // namespace elated
