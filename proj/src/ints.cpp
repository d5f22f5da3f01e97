#include "elated/ints.hpp"

#include <sstream>
#include <vector>

#include "elated/errors.hpp"

namespace elated {

std::uint64_t digit_count(const Int& n, std::uint64_t base) {
    if (n < 1) throw DomainError("digit_count requires n >= 1");
    if (base < 2) throw DomainError("base must be >= 2");
    if (base <= 36) {
        // sizeinbase may overestimate by one for non-power-of-two bases
        std::size_t est = mpz_sizeinbase(n.get_mpz_t(), static_cast<int>(base));
        if (est <= 1) return 1;
        Int p = pow_u64(base, static_cast<std::uint64_t>(est) - 1);
        return n >= p ? est : est - 1;
    }
    Int b(static_cast<unsigned long>(base));
    std::uint64_t count = 0;
    Int v = n;
    while (v > 0) {
        v /= b;
        ++count;
    }
    return count;
}

std::string render_in_base(const Int& n, std::uint64_t base) {
    if (n < 0) throw DomainError("render_in_base requires n >= 0");
    if (base < 2) throw DomainError("base must be >= 2");
    if (base <= 36) {
        char* raw = mpz_get_str(nullptr, static_cast<int>(base), n.get_mpz_t());
        std::string s(raw);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(raw, s.size() + 1);
        return s;
    }
    if (n == 0) return "0";
    Int b(static_cast<unsigned long>(base));
    std::vector<std::string> parts;
    Int v = n;
    while (v > 0) {
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), b.get_mpz_t());
        parts.push_back(r.get_str());
        v = q;
    }
    std::string out;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        if (!out.empty()) out += ',';
        out += *it;
    }
    return out;
}

Int parse_in_base(const std::string& text, std::uint64_t base) {
    if (base < 2) throw DomainError("base must be >= 2");
    if (text.empty()) throw DomainError("empty digit string");
    if (base <= 36 && text.find(',') == std::string::npos) {
        Int r;
        if (mpz_set_str(r.get_mpz_t(), text.c_str(), static_cast<int>(base)) != 0)
            throw DomainError("invalid digits for base " + std::to_string(base) + ": " + text);
        return r;
    }
    Int b(static_cast<unsigned long>(base));
    Int acc = 0;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        Int d(piece);
        if (d < 0 || d >= b) throw DomainError("digit out of range: " + piece);
        acc = acc * b + d;
    }
    return acc;
}

} // namespace elated
