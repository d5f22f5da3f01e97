#include "elated/cycles.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

namespace elated {

namespace {

// Table of fixed points and cycles of E_{2,b} for 2 <= b <= 10, members
// written in base b. Used as a runtime cross-check; bases outside this
// range report "no reference data".
const std::map<std::uint64_t, std::vector<std::vector<const char*>>>& reference_cycles() {
    static const std::map<std::uint64_t, std::vector<std::vector<const char*>>> table = {
        {2, {{"1"}}},
        {3, {{"1"}, {"12"}, {"20", "22", "121"}}},
        {4, {{"1"}, {"20"}}},
        {5, {{"1"}, {"13", "20"}}},
        {6, {{"1"}, {"50", "325", "310"}, {"53", "442", "400", "144"}}},
        {7, {{"1"}, {"13"}, {"22"}, {"505"}, {"2", "11"}}},
        {8, {{"1"}, {"536"}, {"660"}, {"36", "207", "152"}, {"5", "175", "113", "13", "12"}}},
        {9, {{"1"}, {"30"}, {"646"}, {"762"}}},
        {10,
         {{"1"},
          {"298"},
          {"46", "208", "136"},
          {"26", "80", "512", "150"},
          {"33", "54", "205", "58", "445", "228", "144"}}},
    };
    return table;
}

Cycle canonicalize(std::vector<Int> members) {
    auto min_it = std::min_element(members.begin(), members.end());
    std::rotate(members.begin(), min_it, members.end());
    return Cycle{std::move(members)};
}

// Follows the trajectory from `start` until a value repeats and returns the
// cycle discovered along the way.
Cycle cycle_from(const Int& start, Base b, Exponent e) {
    std::map<Int, std::size_t> pos;
    std::vector<Int> path;
    Int v = start;
    for (;;) {
        auto it = pos.find(v);
        if (it != pos.end()) {
            return canonicalize(std::vector<Int>(path.begin() + static_cast<long>(it->second), path.end()));
        }
        pos.emplace(v, path.size());
        path.push_back(v);
        v = elated_step(v, b, e);
    }
}

bool same_cycles(const CycleSet& computed, std::uint64_t base,
                 const std::vector<std::vector<const char*>>& expected) {
    std::set<std::vector<Int>> lhs, rhs;
    for (const auto& c : computed.cycles) lhs.insert(c.members);
    for (const auto& row : expected) {
        std::vector<Int> members;
        for (const char* s : row) members.push_back(parse_in_base(s, base));
        rhs.insert(canonicalize(std::move(members)).members);
    }
    return lhs == rhs;
}

struct BoundRegistry {
    std::mutex mu;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Int> bounds;
};

BoundRegistry& bound_registry() {
    static BoundRegistry r;
    return r;
}

Int descent_bound_for(Base b, Exponent e, const std::optional<Int>& override_bound) {
    if (e.v == 2) {
        // a >= b^3 implies E_{2,b}(a) < a, so every cycle is reachable from
        // a start below b^3.
        return override_bound.value_or(pow_u64(b.v, 3));
    }
    if (override_bound) return *override_bound;
    auto& reg = bound_registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.bounds.find({b.v, e.v});
    if (it == reg.bounds.end()) {
        throw DomainError("no descent bound configured for exponent " + std::to_string(e.v) +
                          " in base " + std::to_string(b.v) +
                          " (set one with set_descent_bound)");
    }
    return it->second;
}

void spot_check_bound(Base b, Exponent e, const Int& bound) {
    if (bound < 2) throw DomainError("descent bound must be >= 2");
    // Not a proof, just a tripwire against obviously wrong bounds.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xe1a7ed);
    for (int i = 0; i < 256; ++i) {
        Int a = bound + rng.get_z_range(bound * 4 + 1);
        if (elated_step(a, b, e) >= a) {
            throw DomainError("descent bound rejected: E(" + a.get_str() + ") >= a");
        }
    }
    for (Int a = bound; a < bound + 64; ++a) {
        if (elated_step(a, b, e) >= a) {
            throw DomainError("descent bound rejected: E(" + a.get_str() + ") >= a");
        }
    }
}

} // namespace

bool CycleSet::contains_member(const Int& v) const {
    for (const auto& c : cycles) {
        if (std::find(c.members.begin(), c.members.end(), v) != c.members.end()) return true;
    }
    return false;
}

void set_descent_bound(Base b, Exponent e, const Int& bound) {
    spot_check_bound(b, e, bound);
    auto& reg = bound_registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    reg.bounds[{b.v, e.v}] = bound;
}

CycleSet enumerate_cycles(Base b, Exponent e, EnumerateOptions opts) {
    Int bound = descent_bound_for(b, e, opts.descent_bound);
    if (e.v != 2 && opts.descent_bound) spot_check_bound(b, e, *opts.descent_bound);

    unsigned threads = std::max(1u, opts.threads);
    std::vector<std::set<std::vector<Int>>> found(threads);

    auto worker = [&](unsigned idx) {
        Int start = 1 + Int(idx);
        for (Int a = start; a < bound; a += static_cast<unsigned long>(threads)) {
            found[idx].insert(cycle_from(a, b, e).members);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
        for (auto& t : pool) t.join();
    }

    std::set<std::vector<Int>> merged;
    for (auto& s : found) merged.insert(s.begin(), s.end());

    CycleSet out;
    out.base = b.v;
    out.exponent = e.v;
    for (const auto& members : merged) out.cycles.push_back(Cycle{members});
    std::sort(out.cycles.begin(), out.cycles.end(),
              [](const Cycle& x, const Cycle& y) { return x.min() < y.min(); });

    if (e.v == 2) {
        auto it = reference_cycles().find(b.v);
        if (it != reference_cycles().end()) {
            out.matches_reference = same_cycles(out, b.v, it->second);
        }
    }
    return out;
}

namespace {

struct CycleContext {
    CycleSet set;
    std::map<Int, Int> member_to_min;
    // attractor memo for small values: value -> (cycle min, steps)
    std::unordered_map<std::uint64_t, std::pair<Int, std::uint64_t>> memo;
    std::uint64_t memo_limit = 0;
    std::mutex memo_mu;
};

CycleContext& context_for(Base b, Exponent e) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, std::uint64_t>, std::unique_ptr<CycleContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(b.v, e.v);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto ctx = std::make_unique<CycleContext>();
        ctx->set = enumerate_cycles(b, e);
        for (const auto& c : ctx->set.cycles) {
            for (const auto& m : c.members) ctx->member_to_min.emplace(m, c.min());
        }
        Int bound = descent_bound_for(b, e, std::nullopt);
        ctx->memo_limit = fits_u64(bound) && to_u64(bound) <= (1u << 22) ? to_u64(bound) : 0;
        it = cache.emplace(key, std::move(ctx)).first;
    }
    return *it->second;
}

} // namespace

const CycleSet& cycle_set(Base b, Exponent e) { return context_for(b, e).set; }

AttractorResult attractor(const Int& n, Base b, Exponent e) {
    if (n < 1) throw DomainError("attractor requires n >= 1");
    CycleContext& ctx = context_for(b, e);

    std::vector<Int> path;
    Int v = n;
    Int u;
    std::uint64_t tail_steps = 0;
    for (;;) {
        auto mit = ctx.member_to_min.find(v);
        if (mit != ctx.member_to_min.end()) {
            u = mit->second;
            tail_steps = 0;
            break;
        }
        if (ctx.memo_limit > 0 && fits_u64(v) && to_u64(v) < ctx.memo_limit) {
            std::lock_guard<std::mutex> lock(ctx.memo_mu);
            auto hit = ctx.memo.find(to_u64(v));
            if (hit != ctx.memo.end()) {
                u = hit->second.first;
                tail_steps = hit->second.second;
                break;
            }
        }
        path.push_back(v);
        v = elated_step(v, b, e);
    }

    if (ctx.memo_limit > 0) {
        std::lock_guard<std::mutex> lock(ctx.memo_mu);
        std::uint64_t s = tail_steps;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            ++s;
            if (fits_u64(*it) && to_u64(*it) < ctx.memo_limit) {
                ctx.memo.emplace(to_u64(*it), std::make_pair(u, s));
            }
        }
    }
    return AttractorResult{u, tail_steps + path.size()};
}

bool is_elated(const Int& n, Base b, Exponent e) { return attractor(n, b, e).u == 1; }

} // namespace elated
