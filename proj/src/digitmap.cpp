#include "elated/digitmap.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace elated {

namespace {

int digit_of_char(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

// One pass over the digits of n: leading digit plus sum of e-th digit powers.
struct DigitScan {
    std::uint64_t leading;
    Int power_sum;
};

// (base-1)^e when it fits a 64-bit word, nullopt otherwise.
std::optional<std::uint64_t> checked_pow_u64(std::uint64_t b, std::uint64_t e) {
    std::uint64_t p = 1;
    for (std::uint64_t j = 0; j < e; ++j) {
        if (b != 0 && p > UINT64_MAX / (b ? b : 1)) return std::nullopt;
        p *= b;
    }
    return p;
}

DigitScan scan_digits(const Int& n, std::uint64_t base, std::uint64_t e) {
    DigitScan out{0, Int(0)};
    if (fits_u64(n) && base <= 36) {
        // Fast path: machine-word digits, overflow-checked accumulator width.
        std::uint64_t v = to_u64(n);
        std::uint64_t digits[64];
        int len = 0;
        while (v > 0) {
            digits[len++] = v % base;
            v /= base;
        }
        out.leading = digits[len - 1];
        auto pw_max = checked_pow_u64(base - 1, e);
        if (pw_max && *pw_max <= UINT64_MAX / 64) {
            std::uint64_t acc = 0;
            for (int i = 0; i < len; ++i) {
                std::uint64_t p = 1;
                for (std::uint64_t j = 0; j < e; ++j) p *= digits[i];
                acc += p;
            }
            out.power_sum = Int(static_cast<unsigned long>(acc));
        } else {
            for (int i = 0; i < len; ++i) {
                out.power_sum += pow_u64(digits[i], e);
            }
        }
        return out;
    }
    if (base <= 36) {
        std::string s = render_in_base(n, base);
        out.leading = static_cast<std::uint64_t>(digit_of_char(s[0]));
        // Digit powers repeat, so count occurrences first.
        std::uint64_t counts[36] = {0};
        for (char c : s) counts[digit_of_char(c)]++;
        auto pw_max = checked_pow_u64(base - 1, e);
        if (pw_max && *pw_max != 0 && s.size() <= UINT64_MAX / *pw_max) {
            std::uint64_t acc = 0;
            for (std::uint64_t d = 0; d < base; ++d) {
                std::uint64_t p = 1;
                for (std::uint64_t j = 0; j < e; ++j) p *= d;
                acc += p * counts[d];
            }
            out.power_sum = Int(static_cast<unsigned long>(acc));
        } else {
            for (std::uint64_t d = 0; d < base; ++d) {
                if (counts[d]) out.power_sum += pow_u64(d, e) * Int(static_cast<unsigned long>(counts[d]));
            }
        }
        return out;
    }
    // Arbitrary large bases: repeated division.
    Int b(static_cast<unsigned long>(base));
    Int v = n;
    Int last_digit = 0;
    std::map<std::uint64_t, std::uint64_t> counts;
    while (v > 0) {
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), b.get_mpz_t());
        last_digit = r;
        counts[to_u64(r)]++;
        v = q;
    }
    out.leading = to_u64(last_digit);
    for (const auto& [d, c] : counts) {
        out.power_sum += pow_u64(d, e) * Int(static_cast<unsigned long>(c));
    }
    return out;
}

} // namespace

DigitExpansion::DigitExpansion(Base base, std::vector<std::uint64_t> digits_msf)
    : base_(base.v), digits_(std::move(digits_msf)) {
    if (digits_.empty()) throw DomainError("digit expansion must be nonempty");
    if (digits_.front() == 0) throw DomainError("leading digit must be nonzero");
    for (std::uint64_t d : digits_) {
        if (d >= base_) throw DomainError("digit out of range for base");
    }
}

Int DigitExpansion::value() const {
    if (base_ <= 36) {
        static const char* alphabet = "0123456789abcdefghijklmnopqrstuvwxyz";
        std::string s;
        s.reserve(digits_.size());
        for (std::uint64_t d : digits_) s += alphabet[d];
        return parse_in_base(s, base_);
    }
    Int b(static_cast<unsigned long>(base_));
    Int acc = 0;
    for (std::uint64_t d : digits_) acc = acc * b + Int(static_cast<unsigned long>(d));
    return acc;
}

DigitExpansion to_digits(const Int& n, Base b) {
    if (n < 1) throw DomainError("to_digits requires n >= 1");
    std::vector<std::uint64_t> digits;
    if (b.v <= 36) {
        std::string s = render_in_base(n, b.v);
        digits.reserve(s.size());
        for (char c : s) digits.push_back(static_cast<std::uint64_t>(digit_of_char(c)));
    } else {
        Int base(static_cast<unsigned long>(b.v));
        Int v = n;
        while (v > 0) {
            Int q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), base.get_mpz_t());
            digits.push_back(to_u64(r));
            v = q;
        }
        std::reverse(digits.begin(), digits.end());
    }
    return DigitExpansion(b, std::move(digits));
}

Int from_digits(const DigitExpansion& d) { return d.value(); }

std::uint64_t leading_digit(const Int& n, Base b) {
    if (n < 1) throw DomainError("leading_digit requires n >= 1");
    return scan_digits(n, b.v, 1).leading;
}

Int happy_step(const Int& n, Base b, Exponent e) {
    if (n < 1) throw DomainError("happy_step requires n >= 1");
    return scan_digits(n, b.v, e.v).power_sum;
}

Int elated_step(const Int& n, Base b, Exponent e) {
    if (n < 1) throw DomainError("elated_step requires n >= 1");
    DigitScan s = scan_digits(n, b.v, e.v);
    return Int(static_cast<unsigned long>(s.leading)) * s.power_sum;
}

Int repunit(std::uint64_t r, Base b, const Int& x) {
    if (x < 0) throw DomainError("repunit requires x >= 0");
    if (x == 0) return 0;
    if (!fits_u64(x)) throw DomainError("repunit run count too large to materialize");
    Int base(static_cast<unsigned long>(b.v));
    Int ones = (pow_int(base, to_u64(x)) - 1) / (base - 1);
    return ones * pow_int(base, r);
}

Int apply_step(const Int& n, Base b, Exponent e, MapKind kind) {
    return kind == MapKind::Elated ? elated_step(n, b, e) : happy_step(n, b, e);
}

Trajectory iterate(const Int& n, Base b, Exponent e, MapKind kind,
                   std::optional<Int> target) {
    if (n < 1) throw DomainError("iterate requires n >= 1");
    Trajectory t;
    t.base = b.v;
    t.exponent = e.v;
    t.kind = kind;
    std::map<Int, std::size_t> seen;
    Int v = n;
    for (;;) {
        if (target && v == *target) {
            t.values.push_back(v);
            t.terminal = Trajectory::Terminal::ReachedTarget;
            return t;
        }
        auto it = seen.find(v);
        if (it != seen.end()) {
            t.terminal = Trajectory::Terminal::EnteredCycle;
            t.cycle_index = it->second;
            return t;
        }
        seen.emplace(v, t.values.size());
        t.values.push_back(v);
        v = apply_step(v, b, e, kind);
    }
}

} // namespace elated
