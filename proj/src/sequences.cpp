#include "elated/sequences.hpp"

#include <algorithm>
#include <numeric>

#include "elated/heights.hpp"

namespace elated {

using towerint::RunSymbolic;
using towerint::TowerInt;

namespace {

std::uint64_t gcd2(std::uint64_t base) { return std::gcd<std::uint64_t>(2, base - 1); }

bool is_happy_number(const Int& n, Base b) {
    return height(n, b, Exponent(2), MapKind::Happy).has_value();
}

// Run form of R_{r,b}(X) + s for s < b^r: X ones, zeros, then the digits
// of s.
RunSymbolic ones_block_plus_small(const TowerInt& ones, std::uint64_t r, const Int& s, Base b) {
    std::vector<RunSymbolic::Run> runs;
    runs.push_back({1, ones});
    std::uint64_t len = s == 0 ? 0 : digit_count(s, b.v);
    if (r < len) throw DomainError("small part does not fit below the ones block");
    if (r > len) runs.push_back({0, TowerInt::literal(Int(static_cast<unsigned long>(r - len)))});
    if (s > 0) {
        for (std::uint64_t d : to_digits(s, b).digits()) {
            runs.push_back({d, TowerInt::literal(Int(1))});
        }
    }
    return RunSymbolic(b.v, std::move(runs));
}

// Nested shift towers W_0 = R_{r,b}(u) - 1, W_i = R_{r,b}(W_{i-1}).
std::vector<TowerInt> shift_towers(const Int& u, std::uint64_t r, std::uint64_t k, Base b) {
    std::vector<TowerInt> w;
    w.push_back(TowerInt::literal(repunit(r, b, u) - 1));
    for (std::uint64_t i = 1; i < k; ++i) {
        w.push_back(TowerInt::repunit(r, b.v, w.back()));
    }
    return w;
}

// Chain of E2 images for one element t of the witness set: starts at t+m and
// ends at u.
ChainElement chain_for(const Int& t, const GoodSetWitness& wit, std::uint64_t r_used, const Int& u,
                       const std::vector<TowerInt>& w, Base b) {
    ChainElement el;
    el.kind = ChainElement::Kind::ToCycle;
    std::uint64_t k = wit.k;
    Int s = t + wit.n; // S^j(t+n) as j advances
    for (std::uint64_t j = 0; j + 1 < k; ++j) {
        // v_j = W_{k-1-j} + S^j(t+n), a ones block over the small digits
        el.chain.push_back(ones_block_plus_small(w[k - 2 - j], r_used, s, b));
        s = happy_step(s, b);
    }
    // v_{k-1} = R_{r,b}(u)
    el.chain.push_back(ones_block_plus_small(TowerInt::literal(u), r_used, Int(0), b));
    el.chain.push_back(RunSymbolic::from_int(u, b.v));
    return el;
}

// Verifies one E2 step; exact when both sides materialize.
bool step_ok(const RunSymbolic& from, const RunSymbolic& to, unsigned trials) {
    TowerInt image = towerint::elated_step_symbolic(from);
    return towerint::equal_mod_primes(image, to.value(), trials);
}

bool element_ok(const ChainElement& el, const Int& u, Base b, unsigned trials) {
    if (el.kind == ChainElement::Kind::ParityNonElated) {
        if (b.v % 2 == 0) return false;
        return towerint::eval_mod(el.chain.front().value(), Int(2)) == 0;
    }
    for (std::size_t i = 0; i + 1 < el.chain.size(); ++i) {
        if (!step_ok(el.chain[i], el.chain[i + 1], trials)) return false;
    }
    Int last = el.chain.back().materialize(64);
    return last == u;
}

// Direct-iteration confirmation for fully materializable chains.
bool confirm_exact(ChainElement& el, Base b) {
    for (const auto& v : el.chain) {
        if (!v.materializable()) return false;
    }
    if (el.kind == ChainElement::Kind::ParityNonElated) {
        el.exact = el.chain.front().materialize() % 2 == 0;
        return el.exact;
    }
    Int cur = el.chain.front().materialize();
    for (std::size_t i = 1; i < el.chain.size(); ++i) {
        cur = elated_step(cur, b);
        if (cur != el.chain[i].materialize()) return false;
    }
    el.exact = true;
    return true;
}

void finalize(RunCertificate& cert, unsigned trials) {
    cert.trials = trials;
    for (auto& el : cert.elements) confirm_exact(el, Base(cert.base));
    cert.verified = verify_certificate(cert, trials);
    if (!cert.verified) {
        throw VerificationError("certificate failed its own verification");
    }
}

Int smallest_cycle_member(const CycleSet& cs, bool want_even, bool exclude_one) {
    Int best = -1;
    for (const auto& c : cs.cycles) {
        for (const auto& v : c.members) {
            if (exclude_one && v == 1) continue;
            if (want_even && v % 2 != 0) continue;
            if (best < 0 || v < best) best = v;
        }
    }
    return best;
}

} // namespace

GoodSetWitness find_good_witness(const std::vector<Int>& T, Base b, const WitnessOptions& opts) {
    if (T.empty()) throw DomainError("witness set must be nonempty");
    std::uint64_t d = gcd2(b.v);
    for (const Int& t : T) {
        if (t < 1) throw DomainError("witness set members must be positive");
        if ((t - T.front()) % static_cast<unsigned long>(d) != 0) {
            throw DomainError("witness set members must be congruent modulo " + std::to_string(d));
        }
    }

    GoodSetWitness wit;
    wit.base = b.v;
    wit.T = T;
    for (Int n = 0; n <= opts.ceiling; ++n) {
        bool all_happy = true;
        for (const Int& t : T) {
            if (!is_happy_number(t + n, b)) {
                all_happy = false;
                break;
            }
        }
        if (!all_happy) continue;
        wit.n = n;
        std::uint64_t max_height = 0;
        Int max_val = 0;
        for (const Int& t : T) {
            max_height = std::max(max_height, *height(t + n, b, Exponent(2), MapKind::Happy));
        }
        wit.k = max_height + 1;
        for (const Int& t : T) {
            Int v = t + n;
            for (std::uint64_t i = 0; i + 1 <= wit.k; ++i) { // S^0 .. S^{k-1}
                max_val = std::max(max_val, v);
                v = happy_step(v, b);
            }
        }
        wit.max_intermediate = max_val;
        wit.r = 1;
        Int pw(static_cast<unsigned long>(b.v));
        while (pw <= max_val) {
            pw *= static_cast<unsigned long>(b.v);
            ++wit.r;
        }
        return wit;
    }
    throw LimitExceeded("witness search ceiling " + opts.ceiling.get_str() + " exceeded");
}

RunCertificate build_u_attracted_run(std::uint64_t L, Base b, const Int& u, unsigned trials) {
    if (L < 1) throw DomainError("run length must be >= 1");
    if (!cycle_set(b).contains_member(u)) {
        throw DomainError("u = " + u.get_str() + " is not a cycle member in base " +
                          std::to_string(b.v));
    }
    std::uint64_t d = gcd2(b.v);
    std::vector<Int> T;
    for (std::uint64_t i = 1; i <= L; ++i) T.push_back(Int(static_cast<unsigned long>(i * d)));

    RunCertificate cert;
    cert.scheme = "u_attracted";
    cert.base = b.v;
    cert.u = u;
    cert.d = Int(static_cast<unsigned long>(d));
    cert.length = L;
    cert.witness = find_good_witness(T, b);

    const auto& wit = cert.witness;
    std::vector<TowerInt> w = shift_towers(u, wit.r, wit.k, b);
    cert.m = w[wit.k - 1] + wit.n;
    if (towerint::materializable(cert.m)) cert.m_exact = towerint::eval_exact(cert.m);

    for (const Int& t : T) cert.elements.push_back(chain_for(t, wit, wit.r, u, w, b));
    finalize(cert, trials);
    return cert;
}

RunCertificate build_even_consecutive_run(std::uint64_t L, Base b, const Int& u, unsigned trials) {
    if (L < 1) throw DomainError("run length must be >= 1");
    if (b.v % 2 == 0) {
        throw DomainError("even base: the d-consecutive construction already yields consecutive "
                          "runs (use build_u_attracted_run)");
    }
    if (u % 2 != 0) throw DomainError("this construction requires an even cycle member");
    if (!cycle_set(b).contains_member(u)) {
        throw DomainError("u = " + u.get_str() + " is not a cycle member in base " +
                          std::to_string(b.v));
    }

    // M = 2 max S(i) over 1 <= i <= L; T = {8, 10, ..., 8 + 2M}.
    Int M = 0;
    for (std::uint64_t i = 1; i <= L; ++i) {
        M = std::max(M, happy_step(Int(static_cast<unsigned long>(i)), b));
    }
    M *= 2;
    std::vector<Int> T;
    for (Int j = 0; j <= M; ++j) T.push_back(8 + 2 * j);

    RunCertificate cert;
    cert.scheme = "even_consecutive";
    cert.base = b.v;
    cert.u = u;
    cert.d = 1;
    cert.length = L;
    cert.witness = find_good_witness(T, b);

    const auto& wit = cert.witness;
    std::vector<TowerInt> w = shift_towers(u, wit.r, wit.k, b);
    cert.m = w[wit.k - 1] + wit.n;
    if (towerint::materializable(cert.m)) cert.m_exact = towerint::eval_exact(cert.m);

    // m is even (R towers preserve parity, u even, n odd); the certificate
    // carries the division by 2.
    TowerInt m_half = TowerInt::exact_div(cert.m, Int(2));

    std::uint64_t wexp = 1;
    Int pw(static_cast<unsigned long>(b.v));
    while (pw <= L) {
        pw *= static_cast<unsigned long>(b.v);
        ++wexp;
    }

    // A + h = 2 b^{m' + w} + R_{w,b}(m') + h: digits 2, m' ones, then h in a
    // w-digit field.
    for (std::uint64_t h = 1; h <= L; ++h) {
        Int hh(static_cast<unsigned long>(h));
        std::vector<RunSymbolic::Run> runs;
        runs.push_back({2, TowerInt::literal(Int(1))});
        runs.push_back({1, m_half});
        std::uint64_t hlen = digit_count(hh, b.v);
        if (wexp > hlen) {
            runs.push_back({0, TowerInt::literal(Int(static_cast<unsigned long>(wexp - hlen)))});
        }
        for (std::uint64_t dg : to_digits(hh, b).digits()) {
            runs.push_back({dg, TowerInt::literal(Int(1))});
        }
        RunSymbolic a_plus_h(b.v, std::move(runs));

        // E2(A+h) = 8 + m + 2 S(h) = t + m with t in T
        Int t = 8 + 2 * happy_step(hh, b);
        ChainElement el = chain_for(t, wit, wit.r, u, w, b);
        el.chain.insert(el.chain.begin(), a_plus_h);
        cert.elements.push_back(std::move(el));
    }
    finalize(cert, trials);
    return cert;
}

RunCertificate build_non_elated_run(std::uint64_t L, Base b, std::optional<Int> u, unsigned trials) {
    if (L < 1) throw DomainError("run length must be >= 1");
    const CycleSet& cs = cycle_set(b);
    if (smallest_cycle_member(cs, false, true) < 0) {
        throw DomainError("all integers are " + std::to_string(b.v) +
                          "-elated: the only cycle is (1)");
    }
    if (u) {
        if (*u == 1) throw DomainError("non-elated runs require a cycle member other than 1");
        if (!cs.contains_member(*u)) {
            throw DomainError("u = " + u->get_str() + " is not a cycle member in base " +
                              std::to_string(b.v));
        }
    }

    if (b.v % 2 == 0) {
        Int target = u ? *u : smallest_cycle_member(cs, false, true);
        RunCertificate cert = build_u_attracted_run(L, b, target, trials);
        cert.scheme = "non_elated";
        return cert;
    }

    Int even_u = u && *u % 2 == 0 ? *u : smallest_cycle_member(cs, true, true);
    if (!u && even_u >= 0) {
        RunCertificate cert = build_even_consecutive_run(L, b, even_u, trials);
        cert.scheme = "non_elated";
        return cert;
    }
    if (u && *u % 2 == 0) {
        RunCertificate cert = build_even_consecutive_run(L, b, *u, trials);
        cert.scheme = "non_elated";
        return cert;
    }

    // Odd base, odd u: interleave a 2-consecutive u-attracted run of length
    // L with its even gaps, which Lemma 1.3 keeps away from 1.
    Int target = *u;
    RunCertificate inner = build_u_attracted_run(L, b, target, trials);

    RunCertificate cert;
    cert.scheme = "non_elated";
    cert.base = b.v;
    cert.u = target;
    cert.d = 1;
    cert.length = 2 * L;
    cert.witness = inner.witness;
    cert.m = inner.m;
    cert.m_exact = inner.m_exact;

    const auto& wit = inner.witness;
    for (std::uint64_t i = 0; i < L; ++i) {
        cert.elements.push_back(inner.elements[i]);
        if (i + 1 == L) break;
        // even gap between t = 2(i+1) and t = 2(i+2): m + 2i + 3
        Int offset = wit.n + Int(static_cast<unsigned long>(2 * i + 3));
        std::vector<TowerInt> w = shift_towers(target, wit.r, wit.k, b);
        ChainElement gap;
        gap.kind = ChainElement::Kind::ParityNonElated;
        gap.chain.push_back(ones_block_plus_small(w[wit.k - 2], wit.r, offset, b));
        cert.elements.push_back(std::move(gap));
    }
    // trailing even neighbour completes the 2L run
    {
        Int offset = wit.n + Int(static_cast<unsigned long>(2 * L + 1));
        std::vector<TowerInt> w = shift_towers(target, wit.r, wit.k, b);
        ChainElement gap;
        gap.kind = ChainElement::Kind::ParityNonElated;
        gap.chain.push_back(ones_block_plus_small(w[wit.k - 2], wit.r, offset, b));
        cert.elements.push_back(std::move(gap));
    }
    finalize(cert, trials);
    return cert;
}

bool verify_certificate(const RunCertificate& cert, unsigned trials) {
    Base b(cert.base);
    if (cert.elements.empty()) return false;
    // Consecutive starts differ by d.
    for (std::size_t i = 0; i + 1 < cert.elements.size(); ++i) {
        TowerInt lhs = cert.elements[i + 1].chain.front().value();
        TowerInt rhs = cert.elements[i].chain.front().value() + cert.d;
        if (!towerint::equal_mod_primes(lhs, rhs, trials)) return false;
    }
    for (const auto& el : cert.elements) {
        if (!element_ok(el, cert.u, b, trials)) return false;
    }
    return true;
}

} // namespace elated
