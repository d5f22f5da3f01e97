#include "elated/heights.hpp"

#include <algorithm>
#include <future>
#include <mutex>

#include "elated/cache.hpp"

namespace elated {

namespace {

// Memoize only values small enough to recur; search candidates above this
// are one-shot and not worth keeping.
std::uint64_t memo_limit_for(std::uint64_t base) {
    Int b3 = pow_u64(base, 3);
    std::uint64_t floor_limit = 1u << 20;
    if (!fits_u64(b3)) return floor_limit;
    return std::max<std::uint64_t>(floor_limit, std::min<std::uint64_t>(to_u64(b3), 1u << 24));
}

} // namespace

HeightTable::HeightTable(Base b, Exponent e, MapKind kind)
    : base_(b.v), exp_(e.v), kind_(kind), memo_limit_(memo_limit_for(b.v)) {}

std::size_t HeightTable::size() const {
    std::shared_lock lock(mu_);
    return memo_.size();
}

std::optional<std::uint64_t> HeightTable::height(const Int& n) {
    if (n < 1) throw DomainError("height requires n >= 1");
    Base b(base_);
    Exponent e(exp_);

    std::vector<Int> path;
    std::map<Int, std::size_t> pos;
    Int v = n;
    std::optional<std::uint64_t> terminal;

    for (;;) {
        if (v == 1) {
            terminal = 0;
            break;
        }
        if (fits_u64(v) && to_u64(v) < memo_limit_) {
            std::shared_lock lock(mu_);
            auto it = memo_.find(to_u64(v));
            if (it != memo_.end()) {
                terminal = it->second == kNoHeight ? std::nullopt
                                                   : std::optional<std::uint64_t>(it->second);
                break;
            }
        }
        auto seen = pos.find(v);
        if (seen != pos.end()) {
            terminal = std::nullopt; // entered a cycle that avoids 1
            break;
        }
        pos.emplace(v, path.size());
        path.push_back(v);
        v = apply_step(v, b, e, kind_);
    }

    std::optional<std::uint64_t> h = terminal;
    {
        std::unique_lock lock(mu_);
        std::uint64_t steps = terminal ? *terminal : 0;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            if (terminal) ++steps;
            if (fits_u64(*it) && to_u64(*it) < memo_limit_) {
                memo_[to_u64(*it)] = terminal ? steps : kNoHeight;
                dirty_ = true;
            }
        }
        if (terminal) h = *terminal + path.size();
    }
    return h;
}

void HeightTable::load(const std::filesystem::path& file) {
    auto records = read_height_cache(file, base_, exp_, kind_);
    std::unique_lock lock(mu_);
    for (const auto& [key, value] : records) memo_[key] = value;
    dirty_ = false;
}

void HeightTable::save(const std::filesystem::path& file) const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> records;
    {
        std::shared_lock lock(mu_);
        records.assign(memo_.begin(), memo_.end());
    }
    std::sort(records.begin(), records.end());
    write_height_cache(file, base_, exp_, kind_, records);
    std::unique_lock lock(mu_);
    dirty_ = false;
}

namespace {

struct Registry {
    std::mutex mu;
    std::optional<std::filesystem::path> dir;
    std::map<std::tuple<std::uint64_t, std::uint64_t, int>, std::unique_ptr<HeightTable>> tables;
};

Registry& registry() {
    static Registry r;
    return r;
}

} // namespace

HeightTable& height_table(Base b, Exponent e, MapKind kind) {
    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto key = std::make_tuple(b.v, e.v, static_cast<int>(kind));
    auto it = reg.tables.find(key);
    if (it == reg.tables.end()) {
        auto table = std::make_unique<HeightTable>(b, e, kind);
        if (reg.dir) {
            auto file = *reg.dir / height_cache_filename(b.v, e.v, kind);
            if (std::filesystem::exists(file)) table->load(file);
        }
        it = reg.tables.emplace(key, std::move(table)).first;
    }
    return *it->second;
}

void set_cache_directory(std::optional<std::filesystem::path> dir) {
    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    reg.dir = std::move(dir);
}

std::optional<std::filesystem::path> cache_directory() {
    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    return reg.dir;
}

void flush_height_caches() {
    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    if (!reg.dir) return;
    std::filesystem::create_directories(*reg.dir);
    for (const auto& [key, table] : reg.tables) {
        if (!table->dirty()) continue;
        table->save(*reg.dir / height_cache_filename(table->base(), table->exponent(), table->kind()));
    }
}

std::optional<std::uint64_t> height(const Int& n, Base b, Exponent e, MapKind kind) {
    return height_table(b, e, kind).height(n);
}

bool is_basic(const Int& n, Base b) {
    if (n < 1) throw DomainError("is_basic requires n >= 1");
    if (n <= b.v) return false;
    DigitExpansion d = to_digits(n, b);
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (d.digits()[i] == 0) return false;
        if (i >= 2 && d.digits()[i] < d.digits()[i - 1]) return false;
    }
    return true;
}

bool is_fully_basic(const Int& n, Base b) {
    if (n < 1) throw DomainError("is_fully_basic requires n >= 1");
    DigitExpansion d = to_digits(n, b);
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (d.digits()[i] < d.digits()[i - 1]) return false;
    }
    return true;
}

CandidateStream::CandidateStream(Base b) : base_(b.v), small_(0) {}

void CandidateStream::advance_tail() {
    // Next nondecreasing tuple in lexicographic order; wraps to the next
    // leading digit, then the next length.
    std::uint64_t max_digit = base_ - 1;
    std::size_t i = tail_.size();
    while (i > 0 && tail_[i - 1] == max_digit) --i;
    if (i == 0) {
        if (++lead_ > max_digit) {
            ++length_;
            lead_ = 1;
        }
        tail_.assign(length_ - 1, 1);
        return;
    }
    std::uint64_t v = tail_[i - 1] + 1;
    for (std::size_t j = i - 1; j < tail_.size(); ++j) tail_[j] = v;
}

Int CandidateStream::next() {
    if (!phase2_) {
        small_ += 1;
        Int b2 = pow_u64(base_, 2);
        if (small_ < b2) return small_;
        phase2_ = true;
        length_ = 3;
        lead_ = 1;
        tail_.assign(length_ - 1, 1);
    } else {
        advance_tail();
    }
    // Assemble digits: leading digit, then the nondecreasing tail.
    unsigned bits_per_digit = 64 - static_cast<unsigned>(__builtin_clzll(base_ - 1));
    if (length_ * bits_per_digit <= 62) {
        std::uint64_t v = lead_;
        for (std::uint64_t d : tail_) v = v * base_ + d;
        return Int(static_cast<unsigned long>(v));
    }
    Int v(static_cast<unsigned long>(lead_));
    Int b(static_cast<unsigned long>(base_));
    for (std::uint64_t d : tail_) v = v * b + static_cast<unsigned long>(d);
    return v;
}

namespace {

// Scans the candidate stream in deterministic batches; the first candidate
// satisfying `match` (in stream order) wins regardless of thread count.
std::optional<Int> search_stream(Base b, const Int& limit, unsigned threads,
                                 const std::function<bool(const Int&)>& match) {
    CandidateStream stream(b);
    const std::size_t batch = threads > 1 ? 2048 * threads : 2048;
    std::vector<Int> values;
    values.reserve(batch);
    for (;;) {
        values.clear();
        bool exhausted = false;
        while (values.size() < batch) {
            Int v = stream.next();
            if (v > limit) {
                exhausted = true;
                break;
            }
            values.push_back(std::move(v));
        }
        if (values.empty()) return std::nullopt;
        if (threads <= 1) {
            for (const Int& v : values) {
                if (match(v)) return v;
            }
        } else {
            std::vector<char> hits(values.size(), 0);
            std::vector<std::future<void>> futs;
            std::size_t chunk = (values.size() + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                std::size_t lo = t * chunk;
                std::size_t hi = std::min(values.size(), lo + chunk);
                if (lo >= hi) break;
                futs.push_back(std::async(std::launch::async, [&, lo, hi] {
                    for (std::size_t i = lo; i < hi; ++i) hits[i] = match(values[i]) ? 1 : 0;
                }));
            }
            for (auto& f : futs) f.get();
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (hits[i]) return values[i];
            }
        }
        if (exhausted) return std::nullopt;
    }
}

EpsilonRecord minimal_of_height(std::uint64_t k, Base b, MapKind kind, const SearchOptions& opts) {
    EpsilonRecord rec;
    rec.base = b.v;
    rec.k = k;
    rec.kind = kind;
    rec.search_limit = opts.limit;
    if (k == 0) {
        rec.exact = Int(1);
    } else if (k == 1) {
        rec.exact = Int(static_cast<unsigned long>(b.v));
    } else {
        HeightTable& table = height_table(b, Exponent(2), kind);
        auto found = search_stream(b, opts.limit, opts.threads, [&](const Int& v) {
            auto h = table.height(v);
            return h && *h == k;
        });
        if (!found) {
            throw LimitExceeded("no " + std::string(kind == MapKind::Elated ? "elated" : "happy") +
                                " number of height " + std::to_string(k) + " in base " +
                                std::to_string(b.v) + " below " + opts.limit.get_str());
        }
        rec.exact = *found;
    }
    rec.trajectory = iterate(*rec.exact, b, Exponent(2), kind, Int(1)).values;
    return rec;
}

} // namespace

EpsilonRecord epsilon(std::uint64_t k, Base b, const SearchOptions& opts) {
    return minimal_of_height(k, b, MapKind::Elated, opts);
}

Int sigma(std::uint64_t k, Base b, const SearchOptions& opts) {
    return *minimal_of_height(k, b, MapKind::Happy, opts).exact;
}

std::map<std::uint64_t, Int> height_minima(Base b, MapKind kind, const Int& limit) {
    std::map<std::uint64_t, Int> minima;
    HeightTable& table = height_table(b, Exponent(2), kind);
    CandidateStream stream(b);
    for (;;) {
        Int v = stream.next();
        if (v > limit) break;
        auto h = table.height(v);
        if (h && !minima.count(*h)) minima.emplace(*h, v);
    }
    return minima;
}

EpsilonRecord epsilon_base2(std::uint64_t k) {
    if (k < 1) throw DomainError("epsilon_base2 requires k >= 1");
    using towerint::RunSymbolic;
    using towerint::TowerInt;
    EpsilonRecord rec;
    rec.base = 2;
    rec.k = k;
    rec.search_limit = 0;
    if (k == 1) {
        rec.symbolic = RunSymbolic::from_int(Int(2), 2);
        rec.exact = Int(2);
        return rec;
    }
    // epsilon_{j+1} = 2^{epsilon_j} - 1: a run of epsilon_j ones.
    TowerInt count = TowerInt::literal(Int(2));
    for (std::uint64_t j = 2; j < k; ++j) {
        count = TowerInt::pow(Int(2), count) - Int(1);
    }
    rec.symbolic = RunSymbolic(2, {{1, count}});
    if (towerint::materializable(count, 12)) {
        Int c = towerint::eval_exact(count, 12);
        if (c <= 100000) rec.exact = pow_int(Int(2), to_u64(c)) - 1;
    }
    return rec;
}

EpsilonRecord epsilon_base3(std::uint64_t k) {
    if (k < 2) throw DomainError("epsilon_base3 requires k >= 2");
    using towerint::RunSymbolic;
    using towerint::TowerInt;
    EpsilonRecord rec;
    rec.base = 3;
    rec.k = k;
    rec.search_limit = 0;
    if (k == 2) {
        rec.symbolic = RunSymbolic::from_int(Int(13), 3); // (111)_3
        rec.exact = Int(13);
        return rec;
    }
    // epsilon_{j+1} = 2*3^{(epsilon_j - 1)/4} - 1: digits 1 then a run of 2s.
    // The exact_div certificate enforces epsilon_j = 1 (mod 4) at every level.
    TowerInt eps = TowerInt::literal(Int(13));
    TowerInt twos = TowerInt::literal(Int(0));
    for (std::uint64_t j = 2; j < k; ++j) {
        twos = TowerInt::exact_div(eps - Int(1), Int(4));
        eps = Int(2) * TowerInt::pow(Int(3), twos) - Int(1);
    }
    rec.symbolic = RunSymbolic(3, {{1, TowerInt::literal(Int(1))}, {2, twos}});
    if (towerint::materializable(eps, 24)) rec.exact = towerint::eval_exact(eps, 24);
    return rec;
}

} // namespace elated
