#include "elated/preimage.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace elated {

using towerint::RunSymbolic;
using towerint::TowerInt;

namespace {

// All nondecreasing digit tuples d_1 <= ... <= d_len from [1, b-1] with
// sum of e-th powers equal to `target`, in lexicographic (= ascending
// numeric) order.
void enumerate_tuples(std::uint64_t b, std::uint64_t len, const Int& target,
                      std::vector<std::uint64_t>& prefix,
                      std::vector<std::vector<std::uint64_t>>& out) {
    if (prefix.size() == len) {
        if (target == 0) out.push_back(prefix);
        return;
    }
    std::uint64_t remaining = len - prefix.size();
    std::uint64_t lo = prefix.empty() ? 1 : prefix.back();
    for (std::uint64_t d = lo; d <= b - 1; ++d) {
        Int sq(static_cast<unsigned long>(d * d));
        // Digits are nondecreasing, so d*d per position is the current floor
        // and (b-1)^2 the ceiling for everything still unplaced.
        Int min_rest = sq * static_cast<unsigned long>(remaining);
        if (min_rest > target) break;
        Int max_rest = sq + Int(static_cast<unsigned long>((b - 1) * (b - 1))) *
                                static_cast<unsigned long>(remaining - 1);
        if (max_rest < target) continue;
        prefix.push_back(d);
        enumerate_tuples(b, len, target - sq, prefix, out);
        prefix.pop_back();
    }
}

RunSymbolic runs_from_digits(std::uint64_t base, const std::vector<std::uint64_t>& digits) {
    std::vector<RunSymbolic::Run> runs;
    for (std::uint64_t d : digits) {
        if (!runs.empty() && runs.back().digit == d &&
            runs.back().count.kind() == TowerInt::Kind::Literal) {
            runs.back().count = TowerInt::literal(runs.back().count.literal_value() + 1);
        } else {
            runs.push_back({d, TowerInt::literal(Int(1))});
        }
    }
    return RunSymbolic(base, std::move(runs));
}

PreimageSet append_trailing(const PreimageSet& inner, Base b, const TowerInt& q) {
    PreimageSet out;
    out.base = inner.base;
    out.a = inner.a; // caller overwrites
    out.length = inner.length + q;
    for (const auto& m : inner.members) {
        std::vector<RunSymbolic::Run> runs = m.runs();
        runs.push_back({b.v - 1, q});
        out.members.emplace_back(b.v, std::move(runs));
    }
    return out;
}

} // namespace

std::vector<Int> PreimageSet::exact_members(std::uint64_t digit_cap) const {
    std::vector<Int> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.materialize(digit_cap));
    return out;
}

std::vector<std::string> PreimageSet::rendered() const {
    std::vector<std::string> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.to_text());
    return out;
}

PreimageSet shortest_fully_basic_preimages(const Int& a, Base b) {
    if (a < 1) throw DomainError("preimage target must be >= 1");
    if (b.v < 3) throw DomainError("preimage sets are defined for base >= 3");
    PreimageSet out;
    out.base = b.v;
    out.a = a;
    // Any length below ceil(a / (b-1)^2) cannot reach the digit-square sum.
    Int cap2(static_cast<unsigned long>((b.v - 1) * (b.v - 1)));
    Int start = (a + cap2 - 1) / cap2;
    if (!fits_u64(start)) throw DomainError("preimage target too large for direct enumeration");
    for (std::uint64_t len = to_u64(start);; ++len) {
        std::vector<std::vector<std::uint64_t>> found;
        std::vector<std::uint64_t> prefix;
        enumerate_tuples(b.v, len, a, prefix, found);
        if (!found.empty()) {
            out.length = TowerInt::literal(Int(static_cast<unsigned long>(len)));
            for (const auto& digits : found) out.members.push_back(runs_from_digits(b.v, digits));
            return out;
        }
    }
}

const BaseConstants& compute_base_constants(Base b) {
    if (b.v < 3) throw DomainError("base constants are defined for base >= 3");
    static std::mutex mu;
    static std::map<std::uint64_t, BaseConstants> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(b.v);
    if (it != cache.end()) return it->second;

    // Window: a <= 2b(b-1)^2 covers every preimage set with a member shorter
    // than 2b digits; beyond it all members end in b-1.
    Int square(static_cast<unsigned long>((b.v - 1) * (b.v - 1)));
    Int window = Int(2) * static_cast<unsigned long>(b.v) * square;
    BaseConstants c;
    c.base = b.v;
    c.a_star = 0;
    for (Int a = 1; a <= window; ++a) {
        PreimageSet s = shortest_fully_basic_preimages(a, b);
        bool open_ended = false;
        for (const auto& m : s.members) {
            if (m.runs().back().digit != b.v - 1) {
                open_ended = true;
                break;
            }
        }
        if (open_ended) c.a_star = a;
    }
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), c.a_star.get_mpz_t(), square.get_mpz_t());
    c.C = q;
    c.at_window_boundary = (c.a_star == window);
    return cache.emplace(b.v, std::move(c)).first->second;
}

PreimageSet reduce_preimages(const Int& a, Base b) {
    const BaseConstants& c = compute_base_constants(b);
    Int square(static_cast<unsigned long>((b.v - 1) * (b.v - 1)));
    if (a <= c.C * square) {
        throw DomainError("reduction requires a > C_b (b-1)^2 = " + Int(c.C * square).get_str());
    }
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), Int(a - 1).get_mpz_t(), square.get_mpz_t());
    q -= c.C;
    Int a_prime = a - square * q;
    PreimageSet inner = shortest_fully_basic_preimages(a_prime, b);
    if (q == 0) return inner;
    PreimageSet out = append_trailing(inner, b, TowerInt::literal(q));
    out.a = a;
    return out;
}

PreimageSet reduce_preimages_symbolic(const towerint::TowerInt& a, Base b) {
    const BaseConstants& c = compute_base_constants(b);
    Int square(static_cast<unsigned long>((b.v - 1) * (b.v - 1)));
    Int floor_bound = c.C * square;
    if (towerint::lower_bound(a) <= floor_bound + square) {
        throw DomainError("reduction requires a certified > C_b (b-1)^2");
    }
    // a' is the unique representative of a's residue class inside
    // (C_b (b-1)^2, (C_b+1)(b-1)^2]; q = (a - a') / (b-1)^2.
    Int residue = towerint::eval_mod(a, square);
    Int offset;
    mpz_fdiv_r(offset.get_mpz_t(), Int(residue - floor_bound - 1).get_mpz_t(), square.get_mpz_t());
    Int a_prime = floor_bound + 1 + offset;
    TowerInt q = TowerInt::exact_div(a - a_prime, square);
    PreimageSet inner = shortest_fully_basic_preimages(a_prime, b);
    PreimageSet out = append_trailing(inner, b, q);
    out.a = a_prime;
    out.a_symbolic = a;
    return out;
}

std::set<std::string> stripped_preimages(const Int& a, Base b) {
    PreimageSet s = shortest_fully_basic_preimages(a, b);
    std::set<std::string> out;
    for (const auto& m : s.members) {
        std::vector<RunSymbolic::Run> runs = m.runs();
        if (runs.back().digit == b.v - 1) runs.pop_back();
        if (runs.empty()) {
            out.insert("");
            continue;
        }
        out.insert(RunSymbolic(b.v, std::move(runs)).to_text());
    }
    return out;
}

} // namespace elated
