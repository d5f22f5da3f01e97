#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace elated {

// All values in the library are exact; Int is the only integer carrier type.
using Int = mpz_class;

inline bool fits_u64(const Int& n) {
    return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64 && n.fits_ulong_p();
}

inline std::uint64_t to_u64(const Int& n) { return n.get_ui(); }

inline Int pow_int(const Int& base, std::uint64_t exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Int pow_u64(std::uint64_t base, std::uint64_t exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

// Number of base-b digits of n (n >= 1).
std::uint64_t digit_count(const Int& n, std::uint64_t base);

// Renders n >= 0 in base b: digits 0-9a-z for b <= 36, comma-separated
// decimal digit values beyond that.
std::string render_in_base(const Int& n, std::uint64_t base);

// Inverse of render_in_base (both digit alphabets accepted).
Int parse_in_base(const std::string& text, std::uint64_t base);

} // namespace elated
