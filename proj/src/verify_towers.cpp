#include <algorithm>
#include <map>
#include <sstream>

#include "elated/heights.hpp"
#include "elated/preimage.hpp"
#include "elated/towerint.hpp"

namespace elated::towerint {

namespace {

using elated::Base;
using elated::Exponent;

void check_congruence(TowerReport& r, const std::string& label, const TowerInt& x, const Int& m,
                      const Int& expected) {
    Int actual = eval_mod(x, m);
    r.congruences.push_back({label, m, expected, actual, actual == expected});
}

void check_equal(TowerReport& r, const std::string& label, const TowerInt& x, const TowerInt& y,
                 unsigned trials) {
    bool exact = false;
    bool ok;
    try {
        Int vx = eval_exact(x);
        Int vy = eval_exact(y);
        ok = vx == vy;
        exact = true;
    } catch (const VerificationError&) {
        ok = equal_mod_primes(x, y, trials);
    }
    r.equalities.push_back({label, exact, exact ? 0u : trials, ok});
}

void check_fact(TowerReport& r, const std::string& label, bool ok) {
    r.equalities.push_back({label, true, 0, ok});
}

// Digit multiset of a run form with literal counts.
std::map<std::uint64_t, Int> digit_multiset(const RunSymbolic& x) {
    std::map<std::uint64_t, Int> out;
    for (const auto& run : x.runs()) {
        if (run.count.kind() != TowerInt::Kind::Literal) {
            throw DomainError("digit multiset requires literal run counts");
        }
        out[run.digit] += run.count.literal_value();
    }
    return out;
}

// Lexicographic comparison of run forms with literal counts; shorter forms
// compare smaller when one is a prefix of the other.
int compare_literal_runs(const RunSymbolic& a, const RunSymbolic& b) {
    std::size_t ia = 0, ib = 0;
    Int ra = 0, rb = 0; // digits consumed within current runs
    for (;;) {
        bool ea = ia == a.runs().size();
        bool eb = ib == b.runs().size();
        if (ea && eb) return 0;
        if (ea) return -1;
        if (eb) return 1;
        std::uint64_t da = a.runs()[ia].digit;
        std::uint64_t db = b.runs()[ib].digit;
        if (da != db) return da < db ? -1 : 1;
        Int ca = a.runs()[ia].count.literal_value() - ra;
        Int cb = b.runs()[ib].count.literal_value() - rb;
        Int step = std::min(ca, cb);
        ra += step;
        rb += step;
        if (ra == a.runs()[ia].count.literal_value()) {
            ++ia;
            ra = 0;
        }
        if (rb == b.runs()[ib].count.literal_value()) {
            ++ib;
            rb = 0;
        }
    }
}

// Digits in front of the first symbolically-counted run.
std::vector<std::uint64_t> literal_prefix_digits(const RunSymbolic& x) {
    std::vector<std::uint64_t> out;
    for (const auto& run : x.runs()) {
        if (run.count.kind() != TowerInt::Kind::Literal) break;
        Int c = run.count.literal_value();
        for (Int i = 0; i < c; ++i) out.push_back(run.digit);
    }
    return out;
}

// No arrangement of {leading digit fixed} + `rest` may end in a three-digit
// suffix divisible by 8. Counts of 3 or more behave identically, so they are
// clamped.
bool no_suffix_multiple_of_8(const std::map<std::uint64_t, Int>& rest) {
    std::vector<std::pair<std::uint64_t, int>> avail;
    for (const auto& [d, c] : rest) avail.emplace_back(d, c > 3 ? 3 : static_cast<int>(to_u64(c)));
    for (std::size_t i = 0; i < avail.size(); ++i) {
        for (std::size_t j = 0; j < avail.size(); ++j) {
            for (std::size_t k = 0; k < avail.size(); ++k) {
                std::map<std::uint64_t, int> used;
                used[avail[i].first]++;
                used[avail[j].first]++;
                used[avail[k].first]++;
                bool feasible = true;
                for (const auto& [d, c] : used) {
                    int have = 0;
                    for (const auto& [dd, cc] : avail) {
                        if (dd == d) have = cc;
                    }
                    if (c > have) feasible = false;
                }
                if (!feasible) continue;
                std::uint64_t suffix = avail[i].first * 100 + avail[j].first * 10 + avail[k].first;
                if (suffix % 8 == 0) return false;
            }
        }
    }
    return true;
}

// Square sum of the non-leading digits of a prefix; the theorems quote these
// as bare constants (138, 144, 129) and the builder re-derives them.
Int tail_square_sum(const std::vector<std::uint64_t>& prefix_digits) {
    Int s = 0;
    for (std::size_t i = 1; i < prefix_digits.size(); ++i) {
        s += Int(static_cast<unsigned long>(prefix_digits[i] * prefix_digits[i]));
    }
    return s;
}

std::vector<RunSymbolic::Run> prefix_runs(const std::vector<std::uint64_t>& digits, const TowerInt& nines) {
    std::vector<RunSymbolic::Run> runs;
    for (std::uint64_t d : digits) runs.push_back({d, TowerInt::literal(Int(1))});
    runs.push_back({9, nines});
    return runs;
}

struct TowerChain {
    std::vector<std::uint64_t> prefix14{8, 5, 7, 8};
    std::vector<std::uint64_t> prefix15{7, 4, 8, 8};
    std::vector<std::uint64_t> prefix16{9, 1, 8, 8};
    Int const14, const15, const16; // derived square sums 138, 144, 129
    TowerInt n14, n15, n16;
    RunSymbolic eps14, eps15, eps16;
    TowerInt v14, v15, v16; // closed forms prefix*10^n - 1
    TowerInt e2_of_eps14;   // 837*10^13888888 - 112
    RunSymbolic e2_of_eps14_runs;

    TowerChain()
        : eps14(RunSymbolic(10, {{1, TowerInt::literal(Int(1))}})),
          eps15(eps14),
          eps16(eps14),
          e2_of_eps14_runs(eps14) {
        const14 = tail_square_sum(prefix14);
        const15 = tail_square_sum(prefix15);
        const16 = tail_square_sum(prefix16);

        // n14 = ((837*10^13888888 - 112)/8 - 8^2 - 138)/81; 138 is the square
        // sum of the non-leading prefix digits 5,7,8.
        e2_of_eps14 = Int(837) * TowerInt::pow(Int(10), TowerInt::literal(Int(13888888))) - Int(112);
        TowerInt eighth = TowerInt::exact_div(e2_of_eps14, Int(8));
        n14 = TowerInt::exact_div(eighth - Int(Int(64) + const14), Int(81));
        eps14 = RunSymbolic(10, prefix_runs(prefix14, n14));
        v14 = Int(8579) * TowerInt::pow(Int(10), n14) - Int(1);
        // 837*10^13888888 - 112 = 836 [9^13888885] 888.
        e2_of_eps14_runs = RunSymbolic(10, {{8, TowerInt::literal(Int(1))},
                                            {3, TowerInt::literal(Int(1))},
                                            {6, TowerInt::literal(Int(1))},
                                            {9, TowerInt::literal(Int(13888885))},
                                            {8, TowerInt::literal(Int(3))}});

        // n15 = (eps14/7 - 7^2 - 144)/81; 144 = 4^2 + 8^2 + 8^2.
        TowerInt seventh = TowerInt::exact_div(v14, Int(7));
        n15 = TowerInt::exact_div(seventh - Int(Int(49) + const15), Int(81));
        eps15 = RunSymbolic(10, prefix_runs(prefix15, n15));
        v15 = Int(7489) * TowerInt::pow(Int(10), n15) - Int(1);

        // n16 = (eps15/9 - 9^2 - 129)/81; 129 = 1^2 + 8^2 + 8^2.
        TowerInt ninth = TowerInt::exact_div(v15, Int(9));
        n16 = TowerInt::exact_div(ninth - Int(Int(81) + const16), Int(81));
        eps16 = RunSymbolic(10, prefix_runs(prefix16, n16));
        v16 = Int(9189) * TowerInt::pow(Int(10), n16) - Int(1);
    }
};

const TowerChain& chain() {
    static const TowerChain c;
    return c;
}

// The five basic elated numbers of height 13 below 8*10^13888891, as
// prefix*10^13888881 - 1.
const std::vector<Int>& height13_prefixes() {
    static const std::vector<Int> p = {Int("8158000000"), Int("8368890000"), Int("8377800000"),
                                       Int("8556000000"), Int("8788888889")};
    return p;
}

std::vector<Int> exact_descent_tail() {
    return iterate(Int("8999999888"), Base(10), Exponent(2), MapKind::Elated, Int(1)).values;
}

void append_height13_family(TowerReport& r, std::vector<RunSymbolic>& family, unsigned trials) {
    const Int tail_count(13888881);
    for (const Int& prefix : height13_prefixes()) {
        family.push_back(RunSymbolic::prefix_pow_minus_one(prefix, 10, TowerInt::literal(tail_count)));
    }

    // Independent route: E2(x) = 8999999888 forces the non-leading digits
    // into S(8999999888/8 - 64); the reduction gives S(561) plus q nines.
    Int a = Int("8999999888") / 8 - 64;
    check_fact(r, "preimage target a = 1124999922", a == Int("1124999922"));
    PreimageSet reduced = reduce_preimages(a, Base(10));
    check_fact(r, "reduction lands on a' = 561", reduced.a == 561);
    check_fact(r, "S(561) has 5 members", reduced.members.size() == 5);

    std::vector<RunSymbolic> derived;
    for (const auto& member : reduced.members) {
        std::vector<RunSymbolic::Run> runs = {{8, TowerInt::literal(Int(1))}};
        for (const auto& run : member.runs()) runs.push_back(run);
        derived.emplace_back(10, std::move(runs));
    }
    check_fact(r, "derived family size is 5", derived.size() == family.size());
    for (std::size_t i = 0; i < family.size() && i < derived.size(); ++i) {
        check_equal(r, "statement form matches derived form #" + std::to_string(i), family[i].value(),
                    derived[i].value(), trials);
    }

    for (std::size_t i = 0; i < family.size(); ++i) {
        TowerInt img = elated_step_symbolic(family[i]);
        check_equal(r, "E2 of height-13 number #" + std::to_string(i) + " equals 8999999888", img,
                    TowerInt::literal(Int("8999999888")), trials);
    }

    for (std::size_t i = 1; i < family.size(); ++i) {
        check_fact(r, "eps13 is smaller than family member #" + std::to_string(i),
                   compare_literal_runs(family[0], family[i]) < 0);
    }
}

void append_tail_heights(TowerReport& r, unsigned extra_steps) {
    r.exact_tail = exact_descent_tail();
    auto h = elated::height(Int("8999999888"), Base(10), Exponent(2), MapKind::Elated);
    check_fact(r, "height(8999999888) = 12", h && *h == 12);
    check_fact(r, "exact tail reaches 1 in 12 steps", r.exact_tail.size() == 13);
    r.height = 12 + extra_steps;
}

void append_eps12_class_checks(TowerReport& r) {
    // Everything equivalent to 8888999999 shares digit sum 86 = 5 (mod 9).
    check_congruence(r, "digit sum class of eps12 mod 9", TowerInt::literal(Int("8888999999")), Int(9),
                     Int(5));
    // Among the 84 numbers equivalent to eps12, exactly one is a multiple
    // of 8: 8999999888 (the value E2 must take).
    std::vector<int> rest = {8, 8, 8, 9, 9, 9, 9, 9, 9};
    std::sort(rest.begin(), rest.end());
    std::vector<Int> multiples;
    do {
        Int v = 8;
        for (int d : rest) v = v * 10 + d;
        if (v % 8 == 0) multiples.push_back(v);
    } while (std::next_permutation(rest.begin(), rest.end()));
    check_fact(r, "unique multiple of 8 equivalent to eps12 is 8999999888",
               multiples.size() == 1 && multiples[0] == Int("8999999888"));
}

TowerReport report_for_13(unsigned trials) {
    const Int tail_count(13888881);
    RunSymbolic eps13 = RunSymbolic::prefix_pow_minus_one(height13_prefixes()[0], 10,
                                                          TowerInt::literal(tail_count));
    TowerReport r{13, eps13};
    r.value_text = eps13.to_text();

    std::vector<RunSymbolic> family;
    append_height13_family(r, family, trials);
    check_fact(r, "eps13 equals 8158*10^13888887 - 1 in run form",
               compare_literal_runs(eps13, RunSymbolic::prefix_pow_minus_one(
                                               Int(8158), 10, TowerInt::literal(Int(13888887)))) == 0);
    append_eps12_class_checks(r);
    append_tail_heights(r, 1);

    r.trusted_notes.push_back(
        "completeness of the five height-13 numbers below 8*10^13888891 uses the stated "
        "leading-digit bound E2(x) <= 9(81 + 13888890*81) < 8*10^10 (case analysis)");
    r.trusted_notes.push_back(
        "uniqueness of 8888999999 as the basic height-12 number below 8*10^10 is established by "
        "the exhaustive candidate search (see the height-12 scan)");

    r.verified = std::all_of(r.congruences.begin(), r.congruences.end(),
                             [](const auto& c) { return c.ok; }) &&
                 std::all_of(r.equalities.begin(), r.equalities.end(),
                             [](const auto& e) { return e.ok; });
    return r;
}

void append_n14_construction(TowerReport& r, unsigned trials) {
    const TowerChain& c = chain();
    check_fact(r, "prefix square sum 5^2+7^2+8^2 equals stated constant 138", c.const14 == Int(138));
    check_congruence(r, "837*10^13888888 - 112 = 0 (mod 8)", c.e2_of_eps14, Int(8), Int(0));
    TowerInt eighth = TowerInt::exact_div(c.e2_of_eps14, Int(8));
    check_congruence(r, "(837*10^13888888 - 112)/8 - 202 = 0 (mod 81)", eighth - Int(202), Int(81),
                     Int(0));
    check_equal(r, "run form of eps14 equals 8579*10^n14 - 1", c.eps14.value(), c.v14, trials);
}

void append_5_4_residues(TowerReport& r) {
    const TowerChain& c = chain();
    check_congruence(r, "n14 = 2 (mod 6)", c.n14, Int(6), Int(2));
    check_congruence(r, "n14 = 26 (mod 54)", c.n14, Int(54), Int(26));
    check_congruence(r, "eps14 = 0 (mod 7)", c.v14, Int(7), Int(0));
    check_congruence(r, "eps14 = 55 (mod 81)", c.v14, Int(81), Int(55));
    check_congruence(r, "eps14/7 = 31 (mod 81)", TowerInt::exact_div(c.v14, Int(7)), Int(81), Int(31));
}

TowerReport report_for_14(unsigned trials) {
    const TowerChain& c = chain();
    TowerReport r{14, c.eps14};
    r.value_text = c.eps14.to_text();

    append_n14_construction(r, trials);
    append_5_4_residues(r);

    check_equal(r, "E2(eps14) = 837*10^13888888 - 112", elated_step_symbolic(c.eps14), c.e2_of_eps14,
                trials);
    check_equal(r, "E2(eps14) run form agrees", c.e2_of_eps14_runs.value(), c.e2_of_eps14, trials);
    check_congruence(r, "E2(eps14) = 0 (mod 8)", c.e2_of_eps14, Int(8), Int(0));

    // Leading-digit exclusions: E2(x) is equivalent to one of the five
    // height-13 numbers, none of which is divisible by 9.
    const Int tail_count(13888881);
    std::vector<Int> expected_mod9 = {Int(3), Int(5), Int(5), Int(5), Int(7)};
    for (std::size_t i = 0; i < height13_prefixes().size(); ++i) {
        RunSymbolic x = RunSymbolic::prefix_pow_minus_one(height13_prefixes()[i], 10,
                                                          TowerInt::literal(tail_count));
        check_congruence(r, "height-13 family member #" + std::to_string(i) + " mod 9", x.value(),
                         Int(9), expected_mod9[i]);
        check_fact(r, "height-13 family member #" + std::to_string(i) + " not divisible by 9",
                   expected_mod9[i] != 0);
    }
    check_fact(r, "E2(eps14) is a digit permutation of 8368890000*10^13888881 - 1",
               digit_multiset(c.e2_of_eps14_runs) ==
                   digit_multiset(RunSymbolic::prefix_pow_minus_one(Int("8368890000"), 10,
                                                                    TowerInt::literal(tail_count))));

    // Reduction route back to eps14.
    TowerInt a = TowerInt::exact_div(c.e2_of_eps14, Int(8)) - Int(64);
    PreimageSet reduced = reduce_preimages_symbolic(a, Base(10));
    check_fact(r, "reduction lands on a' = 543", reduced.a == 543);
    check_fact(r, "S(543) = {57899999}", reduced.members.size() == 1);
    if (reduced.members.size() == 1) {
        std::vector<RunSymbolic::Run> runs = {{8, TowerInt::literal(Int(1))}};
        for (const auto& run : reduced.members[0].runs()) runs.push_back(run);
        RunSymbolic rebuilt(10, std::move(runs));
        check_equal(r, "reduction reproduces eps14", rebuilt.value(), c.v14, trials);
        const TowerInt& q = reduced.members[0].runs().back().count;
        check_equal(r, "reduction exponent q = n14 - 5", q, c.n14 - Int(5), trials);
    }

    append_tail_heights(r, 2);
    check_fact(r, "E2 of the exact image equals 8999999888",
               eval_exact(elated_step_symbolic(c.e2_of_eps14_runs)) == Int("8999999888"));

    r.trusted_notes.push_back(
        "that E2(x) must equal the one multiple of 8 below 728 + 837*10^13888888 in its "
        "equivalence class follows from the stated size bounds (case analysis)");

    r.verified = std::all_of(r.congruences.begin(), r.congruences.end(),
                             [](const auto& cg) { return cg.ok; }) &&
                 std::all_of(r.equalities.begin(), r.equalities.end(),
                             [](const auto& e) { return e.ok; });
    return r;
}

TowerReport report_for_15(unsigned trials) {
    const TowerChain& c = chain();
    TowerReport r{15, c.eps15};
    r.value_text = c.eps15.to_text();

    append_5_4_residues(r);
    check_fact(r, "prefix square sum 4^2+8^2+8^2 equals stated constant 144", c.const15 == Int(144));
    check_congruence(r, "eps14/7 - 49 - 144 = 0 (mod 81)",
                     TowerInt::exact_div(c.v14, Int(7)) - Int(193), Int(81), Int(0));
    check_equal(r, "run form of eps15 equals 7489*10^n15 - 1", c.eps15.value(), c.v15, trials);

    check_equal(r, "E2(eps15) = eps14", elated_step_symbolic(c.eps15), c.v14, trials);

    // Leading digit 7: no number equivalent to eps14 is divisible by 8 or 9.
    check_congruence(r, "eps14 = 1 (mod 9), so its class avoids multiples of 9", c.v14, Int(9), Int(1));
    std::map<std::uint64_t, Int> rest = {{5, Int(1)}, {7, Int(1)}, {8, Int(1)}, {9, Int(4)}};
    check_fact(r, "no arrangement of eps14's digits ends in a multiple of 8",
               no_suffix_multiple_of_8(rest));

    // Reduction route: a = eps14/7 - 49 = 549 (mod 81), S(549) = {48899999}.
    TowerInt a = TowerInt::exact_div(c.v14, Int(7)) - Int(49);
    check_congruence(r, "a = eps14/7 - 49 = 549 = 63 (mod 81)", a, Int(81), Int(63));
    PreimageSet reduced = reduce_preimages_symbolic(a, Base(10));
    check_fact(r, "reduction lands on a' = 549", reduced.a == 549);
    check_fact(r, "S(549) = {48899999}", reduced.members.size() == 1);
    if (reduced.members.size() == 1) {
        std::vector<RunSymbolic::Run> runs = {{7, TowerInt::literal(Int(1))}};
        for (const auto& run : reduced.members[0].runs()) runs.push_back(run);
        RunSymbolic rebuilt(10, std::move(runs));
        check_equal(r, "reduction reproduces eps15", rebuilt.value(), c.v15, trials);
        const TowerInt& q = reduced.members[0].runs().back().count;
        check_equal(r, "reduction exponent q = n15 - 5", q, c.n15 - Int(5), trials);
    }

    append_tail_heights(r, 3);
    r.trusted_notes.push_back(
        "that E2(x) = eps14 exactly (rather than a larger class member) follows from the stated "
        "bound E2(x) <= 693 + eps14 and the digit-position gap inside the class");

    r.verified = std::all_of(r.congruences.begin(), r.congruences.end(),
                             [](const auto& cg) { return cg.ok; }) &&
                 std::all_of(r.equalities.begin(), r.equalities.end(),
                             [](const auto& e) { return e.ok; });
    return r;
}

TowerReport report_for_16(unsigned trials) {
    const TowerChain& c = chain();
    TowerReport r{16, c.eps16};
    r.value_text = c.eps16.to_text();

    const Int m38x7 = Int(6561) * 7; // 3^8 * 7 = 45927
    check_congruence(r, "10^1458 = 1 (mod 3^8*7)",
                     TowerInt::pow(Int(10), TowerInt::literal(Int(1458))), m38x7, Int(1));
    check_congruence(r, "n14 = 566 (mod 1458)", c.n14, Int(1458), Int(566));
    check_congruence(r, "10^n14 = 4447 (mod 3^8*7)", TowerInt::pow(Int(10), c.n14), m38x7, Int(4447));
    check_congruence(r, "eps14 = 31402 (mod 3^8*7)", c.v14, m38x7, Int(31402));
    check_congruence(r, "eps14/7 = 4486 (mod 3^8)", TowerInt::exact_div(c.v14, Int(7)), Int(6561),
                     Int(4486));
    check_congruence(r, "81*n15 = 4293 (mod 3^8)", Int(81) * c.n15, Int(6561), Int(4293));
    check_congruence(r, "n15 = 53 (mod 3^4)", c.n15, Int(81), Int(53));
    check_congruence(r, "10^81 = 1 (mod 3^6)", TowerInt::pow(Int(10), TowerInt::literal(Int(81))),
                     Int(729), Int(1));
    check_congruence(r, "eps15 = 432 (mod 3^6)", c.v15, Int(729), Int(432));
    check_congruence(r, "eps15 = 0 (mod 9)", c.v15, Int(9), Int(0));
    check_congruence(r, "eps15/9 = 48 (mod 3^4)", TowerInt::exact_div(c.v15, Int(9)), Int(81), Int(48));
    check_fact(r, "prefix square sum 1^2+8^2+8^2 equals stated constant 129", c.const16 == Int(129));
    check_congruence(r, "eps15/9 - 81 - 129 = 0 (mod 81)",
                     TowerInt::exact_div(c.v15, Int(9)) - Int(210), Int(81), Int(0));
    check_equal(r, "run form of eps16 equals 9189*10^n16 - 1", c.eps16.value(), c.v16, trials);

    check_equal(r, "E2(eps16) = eps15", elated_step_symbolic(c.eps16), c.v15, trials);

    // Reduction route: a = eps15/9 - 81 = 534 (mod 81); S(534) has two
    // members and eps16 comes from the smaller one.
    TowerInt a = TowerInt::exact_div(c.v15, Int(9)) - Int(81);
    check_congruence(r, "a = eps15/9 - 81 = 534 = 48 (mod 81)", a, Int(81), Int(48));
    PreimageSet reduced = reduce_preimages_symbolic(a, Base(10));
    check_fact(r, "reduction lands on a' = 534", reduced.a == 534);
    check_fact(r, "S(534) has two members", reduced.members.size() == 2);
    if (reduced.members.size() == 2) {
        std::vector<RunSymbolic> candidates;
        for (const auto& member : reduced.members) {
            std::vector<RunSymbolic::Run> runs = {{9, TowerInt::literal(Int(1))}};
            for (const auto& run : member.runs()) runs.push_back(run);
            candidates.emplace_back(10, std::move(runs));
        }
        check_equal(r, "smaller reduction candidate is eps16", candidates[0].value(), c.v16, trials);
        auto p0 = literal_prefix_digits(candidates[0]);
        auto p1 = literal_prefix_digits(candidates[1]);
        check_fact(r, "918899999... precedes 947899999...",
                   std::lexicographical_compare(p0.begin(), p0.end(), p1.begin(), p1.end()));
        const TowerInt& q = reduced.members[0].runs().back().count;
        check_equal(r, "reduction exponent q = n16 - 5", q, c.n16 - Int(5), trials);
    }

    append_tail_heights(r, 4);
    r.trusted_notes.push_back(
        "leading digit 9 follows from the stated bound E2(x) <= 776 + 8*eps15/9 < eps15 for "
        "leading digits below 9 (case analysis)");
    r.trusted_notes.push_back(
        "that E2(x) = eps15 exactly follows from the stated bound E2(x) <= 1026 + eps15 and the "
        "digit-position gap inside the class");

    r.verified = std::all_of(r.congruences.begin(), r.congruences.end(),
                             [](const auto& cg) { return cg.ok; }) &&
                 std::all_of(r.equalities.begin(), r.equalities.end(),
                             [](const auto& e) { return e.ok; });
    return r;
}

} // namespace

TowerReport verify_epsilon_tower(unsigned k, unsigned trials) {
    switch (k) {
        case 13:
            return report_for_13(trials);
        case 14:
            return report_for_14(trials);
        case 15:
            return report_for_15(trials);
        case 16:
            return report_for_16(trials);
        default:
            throw DomainError("tower verification covers heights 13 through 16");
    }
}

} // namespace elated::towerint
