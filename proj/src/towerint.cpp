#include "elated/towerint.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace elated::towerint {

namespace {

const Int& lb_saturation() {
    static const Int sat = pow_u64(10, 40);
    return sat;
}

const Int& ub_ceiling() {
    static const Int c = pow_u64(10, 80);
    return c;
}

Int clamp_lb(Int v) { return v > lb_saturation() ? lb_saturation() : v; }

std::optional<Int> clamp_ub(std::optional<Int> v) {
    if (v && *v > ub_ceiling()) return std::nullopt;
    return v;
}

// ---- 64-bit factoring (Miller-Rabin + Pollard rho) ----------------------

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod_u64(u64 a, u64 e, u64 m) {
    u64 r = m == 1 ? 0 : 1;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    u64 c = 1;
    for (;;) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod_u64(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            u64 diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
        ++c;
    }
}

void factor_into(u64 n, std::map<u64, unsigned>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out[n]++;
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

std::map<u64, unsigned> factor_u64(u64 n) {
    static std::mutex mu;
    static std::map<u64, std::map<u64, unsigned>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::map<u64, unsigned> f;
    u64 v = n;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        while (v % p == 0) {
            f[p]++;
            v /= p;
        }
    }
    factor_into(v, f);
    memo.emplace(n, f);
    return f;
}

// ---- factored moduli ------------------------------------------------------

struct Factored {
    Int value = 1;
    std::map<u64, unsigned> primes;
};

Factored factored_from_int(const Int& m) {
    if (m < 1) throw DomainError("modulus must be >= 1");
    Factored f;
    f.value = m;
    if (m == 1) return f;
    if (!fits_u64(m)) {
        throw VerificationError("order reduction unavailable: modulus exceeds 64 bits: " + m.get_str());
    }
    f.primes = factor_u64(to_u64(m));
    return f;
}

Factored multiply_factored(const Factored& a, const Int& d) {
    Factored out = a;
    out.value *= d;
    if (!fits_u64(d)) throw VerificationError("divisor exceeds 64 bits");
    for (const auto& [p, k] : factor_u64(to_u64(d))) out.primes[p] += k;
    return out;
}

Int mod_reduce(const Int& v, const Int& m) {
    Int r = v % m;
    if (r < 0) r += m;
    return r;
}

Int powm(const Int& base, const Int& exp, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int invert(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw VerificationError("not invertible: " + a.get_str() + " mod " + m.get_str());
    }
    return r;
}

} // namespace

// ---- node representation --------------------------------------------------

struct TowerInt::Node {
    Kind kind;
    Int literal;
    std::vector<std::pair<Int, TowerInt>> terms;
    std::vector<TowerInt> factors;
    Int pow_base;
    std::uint64_t rep_r = 0;
    std::uint64_t rep_base = 0;
    Int divisor;
    std::vector<TowerInt> child; // 0 or 1 entries
    Bounds bounds;
};

namespace {

Bounds bounds_of(const TowerInt& t) { return t.bounds(); }

void require_nonneg(const Bounds& b, const char* what) {
    if (b.lb < 0) throw VerificationError(std::string("cannot certify nonnegative value in ") + what);
}

// b^t with clamping; sound lower bound when used with a lower-bound t.
Int clamped_pow(const Int& base, const Int& t, const Int& sat) {
    if (t > 140) return sat;
    Int p = pow_int(base, to_u64(t));
    return p > sat ? sat : p;
}

std::optional<Int> exact_pow_ub(const Int& base, const std::optional<Int>& t) {
    if (!t) return std::nullopt;
    if (*t * static_cast<long>(mpz_sizeinbase(base.get_mpz_t(), 2)) > 300) return std::nullopt;
    return pow_int(base, to_u64(*t));
}

} // namespace

TowerInt::TowerInt() : TowerInt(literal(Int(0)).node_) {}

TowerInt::Kind TowerInt::kind() const { return node_->kind; }
const Bounds& TowerInt::bounds() const { return node_->bounds; }
const Int& TowerInt::literal_value() const { return node_->literal; }
const std::vector<std::pair<Int, TowerInt>>& TowerInt::terms() const { return node_->terms; }
const std::vector<TowerInt>& TowerInt::factors() const { return node_->factors; }
const Int& TowerInt::pow_base() const { return node_->pow_base; }
const TowerInt& TowerInt::child() const { return node_->child.front(); }
std::uint64_t TowerInt::repunit_r() const { return node_->rep_r; }
std::uint64_t TowerInt::repunit_base() const { return node_->rep_base; }
const Int& TowerInt::divisor() const { return node_->divisor; }

TowerInt TowerInt::literal(Int v) {
    if (v < 0) throw DomainError("literal nodes are nonnegative; use Sum coefficients for signs");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Literal;
    n->literal = v;
    n->bounds = Bounds{clamp_lb(v), clamp_ub(v)};
    return TowerInt(std::move(n));
}

TowerInt TowerInt::sum(std::vector<std::pair<Int, TowerInt>> terms) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    Int lb = 0;
    std::optional<Int> ub = Int(0);
    for (const auto& [c, t] : terms) {
        const Bounds& b = t.bounds();
        if (c >= 0) {
            lb += c * b.lb;
            if (ub) {
                if (b.ub)
                    *ub += c * *b.ub;
                else if (c > 0)
                    ub = std::nullopt;
            }
        } else {
            if (!b.ub) throw VerificationError("cannot bound sum: negative coefficient on unbounded term");
            lb += c * *b.ub;
            if (ub) *ub += c * b.lb;
        }
    }
    n->terms = std::move(terms);
    n->bounds = Bounds{clamp_lb(lb), clamp_ub(ub)};
    require_nonneg(n->bounds, "sum");
    return TowerInt(std::move(n));
}

TowerInt TowerInt::product(std::vector<TowerInt> factors) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    Int lb = 1;
    std::optional<Int> ub = Int(1);
    for (const auto& f : factors) {
        const Bounds& b = f.bounds();
        require_nonneg(b, "product factor");
        lb *= b.lb;
        if (ub) {
            if (b.ub)
                *ub *= *b.ub;
            else
                ub = std::nullopt;
        }
    }
    n->factors = std::move(factors);
    n->bounds = Bounds{clamp_lb(lb), clamp_ub(ub)};
    return TowerInt(std::move(n));
}

TowerInt TowerInt::pow(Int base, TowerInt exponent) {
    if (base < 2) throw DomainError("pow base must be >= 2");
    auto n = std::make_shared<Node>();
    n->kind = Kind::PowBase;
    n->pow_base = base;
    const Bounds& eb = exponent.bounds();
    require_nonneg(eb, "pow exponent");
    Bounds b;
    b.lb = clamp_lb(clamped_pow(base, eb.lb, lb_saturation()));
    b.ub = clamp_ub(exact_pow_ub(base, eb.ub));
    n->bounds = b;
    n->child.push_back(std::move(exponent));
    return TowerInt(std::move(n));
}

TowerInt TowerInt::repunit(std::uint64_t r, std::uint64_t base, TowerInt count) {
    if (base < 2) throw DomainError("repunit base must be >= 2");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Repunit;
    n->rep_r = r;
    n->rep_base = base;
    const Bounds& cb = count.bounds();
    require_nonneg(cb, "repunit count");
    Int bz(static_cast<unsigned long>(base));
    Bounds b;
    if (cb.lb == 0) {
        b.lb = 0;
    } else {
        b.lb = clamp_lb(clamped_pow(bz, Int(r) + cb.lb - 1, lb_saturation()));
    }
    if (cb.ub) {
        if (*cb.ub == 0)
            b.ub = Int(0);
        else
            b.ub = clamp_ub(exact_pow_ub(bz, Int(r) + *cb.ub));
    }
    n->bounds = b;
    n->child.push_back(std::move(count));
    return TowerInt(std::move(n));
}

TowerInt TowerInt::exact_div(TowerInt numerator, Int divisor) {
    if (divisor < 1) throw DomainError("divisor must be >= 1");
    Int rem = eval_mod(numerator, divisor);
    if (rem != 0) {
        throw VerificationError("divisibility violated: remainder " + rem.get_str() + " modulo " +
                                divisor.get_str());
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::ExactDiv;
    n->divisor = divisor;
    const Bounds& nb = numerator.bounds();
    Bounds b;
    mpz_fdiv_q(b.lb.get_mpz_t(), nb.lb.get_mpz_t(), divisor.get_mpz_t());
    if (nb.ub) {
        Int u;
        mpz_fdiv_q(u.get_mpz_t(), nb.ub->get_mpz_t(), divisor.get_mpz_t());
        b.ub = u;
    }
    n->bounds = Bounds{clamp_lb(b.lb), clamp_ub(b.ub)};
    require_nonneg(n->bounds, "exact division");
    n->child.push_back(std::move(numerator));
    return TowerInt(std::move(n));
}

TowerInt operator+(const TowerInt& a, const TowerInt& b) {
    return TowerInt::sum({{Int(1), a}, {Int(1), b}});
}
TowerInt operator+(const TowerInt& a, const Int& b) {
    return TowerInt::sum({{Int(1), a}, {b, TowerInt::literal(Int(1))}});
}
TowerInt operator-(const TowerInt& a, const Int& b) {
    return TowerInt::sum({{Int(1), a}, {-b, TowerInt::literal(Int(1))}});
}
TowerInt operator*(const Int& k, const TowerInt& a) {
    if (k < 0) throw DomainError("scaling factor must be nonnegative");
    return TowerInt::sum({{k, a}});
}

Int lower_bound(const TowerInt& x) { return x.bounds().lb; }

// ---- modular evaluation ----------------------------------------------------

namespace {

struct EvalCtx {
    std::map<std::pair<const void*, Int>, Int> residues;
    std::map<std::pair<Int, Int>, Factored> orders; // (coprime modulus, base) -> order
};

Int eval_node(const TowerInt& t, const Factored& M, EvalCtx& ctx);

Factored carmichael(const Factored& m) {
    Factored lam;
    std::map<u64, unsigned> acc;
    for (const auto& [p, k] : m.primes) {
        std::map<u64, unsigned> part;
        if (p == 2) {
            if (k == 2) part[2] = 1;
            if (k >= 3) part[2] = k - 2;
        } else {
            if (k >= 2) part[p] = k - 1;
            for (const auto& [q, j] : factor_u64(p - 1)) part[q] += j;
        }
        for (const auto& [q, j] : part) acc[q] = std::max(acc[q], j);
    }
    lam.primes = acc;
    lam.value = 1;
    for (const auto& [q, j] : acc) {
        for (unsigned i = 0; i < j; ++i) lam.value *= static_cast<unsigned long>(q);
    }
    return lam;
}

// Multiplicative order of base modulo m.value (m coprime to base).
Factored order_of(const Int& base, const Factored& m, EvalCtx& ctx) {
    if (m.value == 1) return Factored{};
    auto key = std::make_pair(m.value, base);
    auto it = ctx.orders.find(key);
    if (it != ctx.orders.end()) return it->second;

    Factored ord = carmichael(m);
    Int b = mod_reduce(base, m.value);
    for (auto& [q, k] : ord.primes) {
        while (k > 0) {
            Int t = ord.value / static_cast<unsigned long>(q);
            if (powm(b, t, m.value) == 1) {
                ord.value = t;
                --k;
            } else {
                break;
            }
        }
    }
    std::erase_if(ord.primes, [](const auto& kv) { return kv.second == 0; });
    ctx.orders.emplace(key, ord);
    return ord;
}

unsigned valuation(const Int& v, u64 p) {
    Int x = v;
    unsigned k = 0;
    Int pz(static_cast<unsigned long>(p));
    while (x % pz == 0) {
        x /= pz;
        ++k;
    }
    return k;
}

// base^exponent mod M, where the exponent is an arbitrary tower.
Int eval_pow_mod(const Int& base, const TowerInt& expo, const Factored& M, EvalCtx& ctx) {
    const Int& m = M.value;
    if (m == 1) return 0;
    if (expo.kind() == TowerInt::Kind::Literal) {
        return powm(mod_reduce(base, m), expo.literal_value(), m);
    }
    if (expo.bounds().ub) {
        // Bounded exponents are materialized and used directly.
        Int e = eval_exact(expo, 100);
        return powm(mod_reduce(base, m), e, m);
    }

    Factored shared, cop;
    shared.value = 1;
    cop.value = 1;
    for (const auto& [p, k] : M.primes) {
        if (base % static_cast<unsigned long>(p) == 0) {
            shared.primes[p] = k;
            for (unsigned i = 0; i < k; ++i) shared.value *= static_cast<unsigned long>(p);
        } else {
            cop.primes[p] = k;
            for (unsigned i = 0; i < k; ++i) cop.value *= static_cast<unsigned long>(p);
        }
    }

    Int rc = 0;
    if (cop.value > 1) {
        Factored ord = order_of(base, cop, ctx);
        Int e_red = eval_node(expo, ord, ctx);
        rc = powm(mod_reduce(base, cop.value), e_red, cop.value);
    }
    if (shared.value == 1) return rc;

    // The shared part vanishes once the exponent clears every valuation.
    Int needed = 0;
    for (const auto& [p, k] : shared.primes) {
        unsigned vb = valuation(base, p);
        Int need((k + vb - 1) / vb);
        needed = std::max(needed, need);
    }
    if (expo.bounds().lb < needed) {
        throw VerificationError("order reduction unavailable: cannot certify exponent >= " +
                                needed.get_str() + " for base " + base.get_str());
    }
    if (cop.value == 1) return 0;
    // CRT: x = 0 (mod shared), x = rc (mod cop)
    Int t = mod_reduce(rc * invert(mod_reduce(shared.value, cop.value), cop.value), cop.value);
    return shared.value * t;
}

Int eval_node(const TowerInt& t, const Factored& M, EvalCtx& ctx) {
    const Int& m = M.value;
    if (m == 1) return 0;
    auto key = std::make_pair(static_cast<const void*>(t.raw()), m);
    auto hit = ctx.residues.find(key);
    if (hit != ctx.residues.end()) return hit->second;

    Int out;
    switch (t.kind()) {
        case TowerInt::Kind::Literal:
            out = mod_reduce(t.literal_value(), m);
            break;
        case TowerInt::Kind::Sum: {
            Int acc = 0;
            for (const auto& [c, ch] : t.terms()) {
                acc = mod_reduce(acc + mod_reduce(c, m) * eval_node(ch, M, ctx), m);
            }
            out = acc;
            break;
        }
        case TowerInt::Kind::Product: {
            Int acc = 1;
            for (const auto& f : t.factors()) {
                acc = mod_reduce(acc * eval_node(f, M, ctx), m);
            }
            out = acc;
            break;
        }
        case TowerInt::Kind::PowBase:
            out = eval_pow_mod(t.pow_base(), t.child(), M, ctx);
            break;
        case TowerInt::Kind::Repunit: {
            // b^r (b^x - 1) / (b - 1)
            Int b(static_cast<unsigned long>(t.repunit_base()));
            Int d = b - 1;
            Int g;
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
            if (d == 1) {
                Int px = eval_pow_mod(b, t.child(), M, ctx);
                Int pr = powm(mod_reduce(b, m), Int(t.repunit_r()), m);
                out = mod_reduce(pr * mod_reduce(px - 1, m), m);
            } else if (g == 1) {
                Int px = eval_pow_mod(b, t.child(), M, ctx);
                Int pr = powm(mod_reduce(b, m), Int(t.repunit_r()), m);
                out = mod_reduce(pr * mod_reduce(px - 1, m) * invert(d, m), m);
            } else {
                Factored M2 = multiply_factored(M, d);
                Int px = eval_pow_mod(b, t.child(), M2, ctx);
                Int pr = powm(mod_reduce(b, M2.value), Int(t.repunit_r()), M2.value);
                Int R = mod_reduce(pr * mod_reduce(px - 1, M2.value), M2.value);
                if (R % d != 0) throw VerificationError("repunit residue not divisible by base-1");
                out = mod_reduce(R / d, m);
            }
            break;
        }
        case TowerInt::Kind::ExactDiv: {
            const Int& d = t.divisor();
            Int g;
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
            if (g == 1) {
                Int num = eval_node(t.child(), M, ctx);
                out = mod_reduce(num * invert(d, m), m);
            } else {
                Factored M2 = multiply_factored(M, d);
                Int R = eval_node(t.child(), M2, ctx);
                if (R % d != 0) {
                    throw VerificationError("divisibility violated while reducing modulo " + m.get_str());
                }
                out = mod_reduce(R / d, m);
            }
            break;
        }
    }
    ctx.residues.emplace(key, out);
    return out;
}

} // namespace

Int eval_mod(const TowerInt& x, const Int& m) {
    EvalCtx ctx;
    return eval_node(x, factored_from_int(m), ctx);
}

ModContext ModContext::make(const Int& modulus) {
    ModContext c;
    c.modulus = modulus;
    Int v = modulus;
    while (v % 2 == 0) {
        v /= 2;
        ++c.alpha;
    }
    while (v % 5 == 0) {
        v /= 5;
        ++c.beta;
    }
    c.coprime_part = v;
    if (v == 1) {
        c.order10 = 1;
    } else {
        EvalCtx ctx;
        c.order10 = order_of(Int(10), factored_from_int(v), ctx).value;
    }
    return c;
}

Int eval_mod(const TowerInt& x, const ModContext& ctx) { return eval_mod(x, ctx.modulus); }

// ---- exact evaluation ------------------------------------------------------

namespace {

// Hard bits budget for a digit cap, with slack for intermediate values.
Int bits_budget(std::uint64_t digit_cap) { return (Int(digit_cap) + 2) * 10 / 3 + 64; }

void check_digits(const Int& v, std::uint64_t digit_cap, const char* what) {
    std::size_t est = mpz_sizeinbase(v.get_mpz_t(), 10);
    if (est > digit_cap) {
        Int a = v < 0 ? Int(-v) : v;
        if (a != 0 && digit_count(a, 10) <= digit_cap) return;
        throw VerificationError(std::string(what) + " exceeds digit cap of " +
                                std::to_string(digit_cap));
    }
}

Int materialize(const TowerInt& t, std::uint64_t digit_cap);

Int materialize_pow(const Int& base, const TowerInt& expo, std::uint64_t digit_cap) {
    if (expo.bounds().lb > Int(4) * digit_cap + 64) {
        throw VerificationError("value exceeds digit cap of " + std::to_string(digit_cap));
    }
    Int e = materialize(expo, digit_cap);
    Int bits = e * static_cast<long>(mpz_sizeinbase(base.get_mpz_t(), 2));
    if (bits > bits_budget(digit_cap)) {
        throw VerificationError("value exceeds digit cap of " + std::to_string(digit_cap));
    }
    return pow_int(base, to_u64(e));
}

Int materialize(const TowerInt& t, std::uint64_t digit_cap) {
    switch (t.kind()) {
        case TowerInt::Kind::Literal: {
            check_digits(t.literal_value(), digit_cap + 32, "literal");
            return t.literal_value();
        }
        case TowerInt::Kind::Sum: {
            Int acc = 0;
            for (const auto& [c, ch] : t.terms()) acc += c * materialize(ch, digit_cap);
            check_digits(acc, digit_cap + 32, "sum");
            return acc;
        }
        case TowerInt::Kind::Product: {
            Int acc = 1;
            for (const auto& f : t.factors()) {
                acc *= materialize(f, digit_cap);
                check_digits(acc, digit_cap + 32, "product");
            }
            return acc;
        }
        case TowerInt::Kind::PowBase:
            return materialize_pow(t.pow_base(), t.child(), digit_cap);
        case TowerInt::Kind::Repunit: {
            if (t.child().bounds().lb > Int(4) * digit_cap + 64) {
                throw VerificationError("value exceeds digit cap of " + std::to_string(digit_cap));
            }
            Int x = materialize(t.child(), digit_cap);
            Int b(static_cast<unsigned long>(t.repunit_base()));
            Int digits_needed = (Int(t.repunit_r()) + x) * static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2));
            if (digits_needed > bits_budget(digit_cap)) {
                throw VerificationError("value exceeds digit cap of " + std::to_string(digit_cap));
            }
            return elated::repunit(t.repunit_r(), Base(t.repunit_base()), x);
        }
        case TowerInt::Kind::ExactDiv: {
            Int num = materialize(t.child(), digit_cap);
            Int q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), t.divisor().get_mpz_t());
            if (r != 0) throw VerificationError("divisibility violated during exact evaluation");
            return q;
        }
    }
    throw VerificationError("unreachable node kind");
}

} // namespace

Int eval_exact(const TowerInt& x, std::uint64_t digit_cap) {
    Int v = materialize(x, digit_cap);
    if (v < 0) throw VerificationError("exact evaluation produced a negative value");
    if (v > 0) check_digits(v, digit_cap, "value");
    return v;
}

bool materializable(const TowerInt& x, std::uint64_t digit_cap) {
    try {
        eval_exact(x, digit_cap);
        return true;
    } catch (const VerificationError&) {
        return false;
    }
}

// ---- text form -------------------------------------------------------------

std::string TowerInt::to_text() const {
    std::ostringstream os;
    switch (kind()) {
        case Kind::Literal:
            os << literal_value().get_str();
            break;
        case Kind::Sum: {
            os << "(";
            bool first = true;
            for (const auto& [c, ch] : terms()) {
                if (c >= 0 && !first) os << "+";
                if (c == -1)
                    os << "-";
                else if (c != 1)
                    os << c.get_str() << "*";
                os << ch.to_text();
                first = false;
            }
            os << ")";
            break;
        }
        case Kind::Product: {
            bool first = true;
            for (const auto& f : factors()) {
                if (!first) os << "*";
                os << f.to_text();
                first = false;
            }
            break;
        }
        case Kind::PowBase:
            os << pow_base().get_str() << "^" << child().to_text();
            break;
        case Kind::Repunit:
            os << "repunit(" << repunit_r() << "," << repunit_base() << "," << child().to_text() << ")";
            break;
        case Kind::ExactDiv:
            os << "(" << child().to_text() << ")/" << divisor().get_str();
            break;
    }
    return os.str();
}

// ---- run-length symbolic numbers -------------------------------------------

RunSymbolic::RunSymbolic(std::uint64_t base, std::vector<Run> runs) : base_(base) {
    if (base < 2) throw DomainError("base must be >= 2");
    for (auto& r : runs) {
        if (r.digit >= base) throw DomainError("run digit out of range for base");
        if (r.count.kind() == TowerInt::Kind::Literal && r.count.literal_value() == 0) continue;
        if (r.count.bounds().lb < 1) throw DomainError("run counts must be certified >= 1");
        if (!runs_.empty() && runs_.back().digit == r.digit) {
            runs_.back().count = runs_.back().count + r.count;
        } else {
            runs_.push_back(std::move(r));
        }
    }
    if (runs_.empty()) throw DomainError("run form must have at least one digit");
    if (runs_.front().digit == 0) throw DomainError("leading digit must be nonzero");
}

TowerInt RunSymbolic::value() const {
    Int b(static_cast<unsigned long>(base_));
    std::optional<TowerInt> acc;
    for (const auto& r : runs_) {
        TowerInt block = Int(static_cast<unsigned long>(r.digit)) *
                         TowerInt::repunit(0, base_, r.count);
        if (!acc) {
            acc = block;
        } else {
            acc = TowerInt::product({*acc, TowerInt::pow(b, r.count)}) + block;
        }
    }
    return *acc;
}

TowerInt RunSymbolic::total_digits() const {
    std::vector<std::pair<Int, TowerInt>> terms;
    for (const auto& r : runs_) terms.emplace_back(Int(1), r.count);
    return TowerInt::sum(std::move(terms));
}

RunSymbolic RunSymbolic::from_int(const Int& n, std::uint64_t base) {
    DigitExpansion d = to_digits(n, Base(base));
    std::vector<Run> runs;
    for (std::uint64_t digit : d.digits()) {
        if (!runs.empty() && runs.back().digit == digit &&
            runs.back().count.kind() == TowerInt::Kind::Literal) {
            runs.back().count = TowerInt::literal(runs.back().count.literal_value() + 1);
        } else {
            runs.push_back(Run{digit, TowerInt::literal(Int(1))});
        }
    }
    return RunSymbolic(base, std::move(runs));
}

RunSymbolic RunSymbolic::prefix_pow_minus_one(const Int& prefix, std::uint64_t base, TowerInt tail) {
    if (prefix < 1) throw DomainError("prefix must be >= 1");
    // prefix * b^t - 1 = (prefix-1) * b^t + (b^t - 1): digits of prefix-1,
    // then t copies of b-1.
    std::vector<Run> runs;
    if (prefix > 1) {
        for (const auto& r : from_int(prefix - 1, base).runs()) runs.push_back(r);
    }
    runs.push_back(Run{base - 1, std::move(tail)});
    return RunSymbolic(base, std::move(runs));
}

Int RunSymbolic::materialize(std::uint64_t digit_cap) const {
    Int total = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> expanded;
    for (const auto& r : runs_) {
        Int c = eval_exact(r.count, 24);
        total += c;
        if (total > digit_cap) {
            throw VerificationError("value exceeds digit cap of " + std::to_string(digit_cap));
        }
        expanded.emplace_back(r.digit, to_u64(c));
    }
    if (base_ <= 36) {
        static const char* alphabet = "0123456789abcdefghijklmnopqrstuvwxyz";
        std::string s;
        s.reserve(to_u64(total));
        for (const auto& [d, c] : expanded) s.append(c, alphabet[d]);
        return parse_in_base(s, base_);
    }
    Int b(static_cast<unsigned long>(base_));
    Int acc = 0;
    for (const auto& [d, c] : expanded) {
        acc = acc * pow_int(b, c) + Int(static_cast<unsigned long>(d)) * elated::repunit(0, Base(base_), Int(static_cast<unsigned long>(c)));
    }
    return acc;
}

bool RunSymbolic::materializable(std::uint64_t digit_cap) const {
    try {
        Int total = 0;
        for (const auto& r : runs_) {
            if (r.count.bounds().lb > Int(digit_cap)) return false;
            total += eval_exact(r.count, 24);
            if (total > digit_cap) return false;
        }
        return true;
    } catch (const VerificationError&) {
        return false;
    }
}

std::string RunSymbolic::to_text() const {
    static const char* alphabet = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::ostringstream os;
    for (const auto& r : runs_) {
        std::string digit = base_ <= 36 ? std::string(1, alphabet[r.digit])
                                        : std::to_string(r.digit);
        if (r.count.kind() == TowerInt::Kind::Literal && r.count.literal_value() <= 12) {
            for (Int i = 0; i < r.count.literal_value(); ++i) {
                os << digit;
                if (base_ > 36) os << ",";
            }
        } else {
            std::string count = r.count.kind() == TowerInt::Kind::Literal
                                    ? r.count.literal_value().get_str()
                                    : r.count.to_text();
            os << "[" << digit << "^" << count << "]";
        }
    }
    std::string s = os.str();
    if (base_ > 36 && !s.empty() && s.back() == ',') s.pop_back();
    return s;
}

TowerInt elated_step_symbolic(const RunSymbolic& x, std::uint64_t e) {
    Int lead(static_cast<unsigned long>(x.leading_digit()));
    return TowerInt::product({TowerInt::literal(lead), happy_step_symbolic(x, e)});
}

TowerInt happy_step_symbolic(const RunSymbolic& x, std::uint64_t e) {
    std::vector<std::pair<Int, TowerInt>> terms;
    for (const auto& r : x.runs()) {
        if (r.digit == 0) continue;
        terms.emplace_back(pow_u64(r.digit, e), r.count);
    }
    if (terms.empty()) return TowerInt::literal(Int(0));
    return TowerInt::sum(std::move(terms));
}

// ---- randomized equality ----------------------------------------------------

namespace {

u64 splitmix64(u64& state) {
    state += 0x9e3779b97f4a7c15ull;
    u64 z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

void collect_sensitive(const TowerInt& t, std::set<Int>& out) {
    switch (t.kind()) {
        case TowerInt::Kind::Literal:
            return;
        case TowerInt::Kind::Sum:
            for (const auto& [c, ch] : t.terms()) collect_sensitive(ch, out);
            return;
        case TowerInt::Kind::Product:
            for (const auto& f : t.factors()) collect_sensitive(f, out);
            return;
        case TowerInt::Kind::PowBase:
            out.insert(t.pow_base());
            collect_sensitive(t.child(), out);
            return;
        case TowerInt::Kind::Repunit:
            out.insert(Int(static_cast<unsigned long>(t.repunit_base())));
            collect_sensitive(t.child(), out);
            return;
        case TowerInt::Kind::ExactDiv:
            out.insert(t.divisor());
            collect_sensitive(t.child(), out);
            return;
    }
}

} // namespace

std::vector<Int> verification_primes(unsigned trials, std::uint64_t seed, const std::set<Int>& avoid) {
    std::vector<Int> primes;
    std::set<Int> used;
    u64 state = seed;
    while (primes.size() < trials) {
        u64 cand = (splitmix64(state) >> 3) | (1ull << 61);
        Int p;
        mpz_nextprime(p.get_mpz_t(), Int(static_cast<unsigned long>(cand)).get_mpz_t());
        if (used.count(p)) continue;
        bool bad = false;
        for (const Int& s : avoid) {
            if (s > 1 && s % p == 0) bad = true;
        }
        if (bad) continue;
        used.insert(p);
        primes.push_back(p);
    }
    return primes;
}

bool equal_mod_primes(const TowerInt& x, const TowerInt& y, unsigned trials, std::uint64_t seed) {
    if (trials < 1) throw DomainError("trials must be >= 1");
    try {
        Int vx = eval_exact(x);
        Int vy = eval_exact(y);
        return vx == vy;
    } catch (const VerificationError&) {
        // at least one side is too large; fall through to modular testing
    }
    std::set<Int> avoid;
    collect_sensitive(x, avoid);
    collect_sensitive(y, avoid);
    for (const Int& p : verification_primes(trials, seed, avoid)) {
        if (eval_mod(x, p) != eval_mod(y, p)) return false;
    }
    return true;
}

} // namespace elated::towerint
