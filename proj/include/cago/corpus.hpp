#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cago/ca.hpp"
#include "cago/errors.hpp"
#include "cago/group.hpp"
#include "cago/probes.hpp"
#include "cago/symbolic1d.hpp"

// Executable fixtures: the worked examples that the test suites and the demo
// command replay through the public operations.

namespace cago {

// xor with the right-hand neighbor; elementary rule 102
inline LocalRule xor_rule102() {
    Group z = Group::free_abelian(1);
    Neighborhood n({GroupElement::identity(z), GroupElement::point(z, {1})});
    return LocalRule(Alphabet(2), std::move(n), {0, 1, 1, 0});
}

// majority over the disk D_1 of F_2: output 1 iff at least three of the five
// window cells are 1
inline LocalRule majority_f2() {
    Group f2 = Group::free_group(2);
    auto d1 = disk(f2, 1).elements;
    std::vector<std::uint8_t> table(32);
    for (int i = 0; i < 32; ++i) table[i] = __builtin_popcount(static_cast<unsigned>(i)) >= 3;
    return LocalRule(Alphabet(2), Neighborhood(d1), std::move(table));
}

inline SFT1D golden_mean() { return SFT1D(Alphabet(2), {{1, 1}}); }

namespace detail_f2 {

inline GroupElement parent(const GroupElement& g) {
    auto letters = g.data();
    letters.pop_back();
    return GroupElement::word(g.group(), letters);
}

// the non-cancelling one-letter extensions, in letter order a, A, b, B;
// three of them for g != 1, four for the identity
inline std::vector<GroupElement> children(const GroupElement& g) {
    std::vector<GroupElement> out;
    const Group& gr = g.group();
    std::int32_t last = g.data().empty() ? 0 : g.data().back();
    for (int i = 0; i < gr.rank(); ++i)
        for (std::int32_t l : {static_cast<std::int32_t>(i + 1), static_cast<std::int32_t>(-(i + 1))}) {
            if (l == -last) continue;
            auto letters = g.data();
            letters.push_back(l);
            out.push_back(GroupElement::word(gr, letters));
        }
    return out;
}

}  // namespace detail_f2

// A preimage e of c under the majority rule with the exact-agreement
// property: at every g in D_n, exactly three of the five cells e(g), e(ga),
// e(ga^-1), e(gb), e(gb^-1) carry the value c(g). Built ring by ring: the
// three outer neighbors of each boundary element always suffice to reach a
// count of three, whatever the two already-fixed cells contribute.
inline Pattern critical_preimage(const Pattern& c_pattern) {
    const Group& f2 = c_pattern.group();
    if (f2.kind() != Group::Kind::free || f2.rank() != 2)
        throw GroupMismatchError("critical_preimage works on F_2");
    int depth = 0;
    for (const auto& g : c_pattern.support()) depth = std::max(depth, g.word_length());
    auto dd = disk(f2, depth).elements;
    if (!(c_pattern.support() == dd))
        throw Error(Diag::parse, "critical_preimage needs a pattern on a full disk");
    if (depth < 1) throw Error(Diag::parse, "critical_preimage needs depth >= 1");

    const GroupElement id = GroupElement::identity(f2);
    auto c = [&](const GroupElement& g) { return c_pattern.at(g); };
    std::vector<std::uint8_t> e_values(dd.size(), 0);
    auto idx = [&](const GroupElement& g) {
        auto it = std::lower_bound(dd.begin(), dd.end(), g, LengthLexLess{});
        return static_cast<size_t>(it - dd.begin());
    };
    auto e = [&](const GroupElement& g) -> std::uint8_t& { return e_values[idx(g)]; };

    // root: reuse c on D_1 when it already has exactly three agreements with
    // c(1); otherwise two of the four neighbors in canonical order agree
    auto d1 = disk(f2, 1).elements;
    int agree = 0;
    for (const auto& g : d1) agree += c(g) == c(id);
    if (agree == 3) {
        for (const auto& g : d1) e(g) = c(g);
    } else {
        e(id) = c(id);
        for (size_t i = 1; i < d1.size(); ++i)
            e(d1[i]) = i <= 2 ? c(id) : static_cast<std::uint8_t>(1 - c(id));
    }

    for (int m = 1; m < depth; ++m) {
        for (const auto& g : dd) {
            if (g.word_length() != m) continue;
            int fixed = (e(g) == c(g)) + (e(detail_f2::parent(g)) == c(g));
            int need = 3 - fixed;  // 1..3, always achievable with three children
            auto kids = detail_f2::children(g);
            for (size_t i = 0; i < kids.size(); ++i)
                e(kids[i]) = static_cast<int>(i) < need ? c(g)
                                                        : static_cast<std::uint8_t>(1 - c(g));
        }
    }
    return Pattern::make(dd, e_values);
}

// exactly-three agreement counts of a candidate preimage, checkable on D_{depth-1}
inline bool is_critical_preimage(const Pattern& e, const Pattern& c, int check_radius) {
    const Group& f2 = e.group();
    auto targets = disk(f2, check_radius).elements;
    auto maj = majority_f2();
    auto image = apply_pattern(maj, e, targets);
    for (const auto& g : targets) {
        if (image.at(g) != c.at(g)) return false;
        int agree = 0;
        for (size_t j = 0; j < maj.neighborhood().size(); ++j)
            agree += e.at(g * maj.neighborhood().at(j)) == c.at(g);
        if (agree != 3) return false;
    }
    return true;
}

// The configuration of the majority counterexample, generated to fixed depth:
// 0 at the identity, a and b; 1 at their inverses; below that, the three
// children of every element carry 0, 1 and the parent's value, in generator
// order, so each point has longer neighbors of both values.
inline Pattern adversarial_configuration_f2(int depth, const Caps& caps = {}) {
    Group f2 = Group::free_group(2);
    if (depth < 1) throw Error(Diag::parse, "adversarial configuration needs depth >= 1");
    auto dd = disk(f2, depth, caps).elements;
    std::vector<std::uint8_t> values(dd.size(), 0);
    auto idx = [&](const GroupElement& g) {
        auto it = std::lower_bound(dd.begin(), dd.end(), g, LengthLexLess{});
        return static_cast<size_t>(it - dd.begin());
    };
    values[idx(GroupElement::parse(f2, "a"))] = 0;
    values[idx(GroupElement::parse(f2, "b"))] = 0;
    values[idx(GroupElement::parse(f2, "A"))] = 1;
    values[idx(GroupElement::parse(f2, "B"))] = 1;
    for (int m = 1; m < depth; ++m) {
        for (const auto& g : dd) {
            if (g.word_length() != m) continue;
            auto kids = detail_f2::children(g);
            values[idx(kids[0])] = 0;
            values[idx(kids[1])] = 1;
            values[idx(kids[2])] = values[idx(g)];
        }
    }
    return Pattern::make(dd, values);
}

inline bool mixed_neighbor_condition_holds(const Pattern& c, int depth) {
    for (const auto& g : c.support()) {
        int m = g.word_length();
        if (m < 1 || m >= depth) continue;
        bool has0 = false, has1 = false;
        for (const auto& k : detail_f2::children(g)) {
            if (c.at(k) == 0) has0 = true;
            if (c.at(k) == 1) has1 = true;
        }
        if (!has0 || !has1) return false;
    }
    return true;
}

struct NonPostSurjWitness {
    Pattern c;          // adversarial configuration on D_depth
    Pattern e;          // critical preimage agreeing with c on D_1
    Pattern c_changed;  // c with the identity flipped
    int depth = 4;
};

inline NonPostSurjWitness non_postsurj_witness_f2(int depth = 4, const Caps& caps = {}) {
    auto c = adversarial_configuration_f2(depth, caps);
    auto e = critical_preimage(c);
    Group f2 = Group::free_group(2);
    GroupElement id = GroupElement::identity(f2);
    auto cprime = Pattern::make(c.support(), c.values())
                      .overridden(Pattern::make({id}, {static_cast<std::uint8_t>(1 - c.at(id))}));
    return {c, e, cprime, depth};
}

// Exhaustive scan: every patch of e on D_{patch_radius} whose image matches
// the changed configuration on D_{compare_radius}; the counterexample admits
// none. Returns the number of matching patches.
inline std::uint64_t witness_correction_count(const NonPostSurjWitness& w, int patch_radius = 2,
                                              int compare_radius = 3, const Caps& caps = {}) {
    Group f2 = Group::free_group(2);
    auto maj = majority_f2();
    auto patch_disk = disk(f2, patch_radius, caps).elements;
    auto targets = disk(f2, compare_radius, caps).elements;
    std::uint64_t cand =
        checked_pow(2, patch_disk.size(), caps.enumeration, "witness correction scan");

    ApplyPlan plan(maj, w.e.support(), targets);
    std::vector<std::uint8_t> vals(w.e.values());
    std::vector<std::uint8_t> want(targets.size());
    for (size_t t = 0; t < targets.size(); ++t) want[t] = w.c_changed.at(targets[t]);

    // patch cells are the first |D_patch| positions of the support
    std::uint64_t matches = 0;
    for (std::uint64_t q = 0; q < cand; ++q) {
        std::uint64_t rem = q;
        for (size_t i = patch_disk.size(); i-- > 0;) {
            vals[i] = static_cast<std::uint8_t>(rem % 2);
            rem /= 2;
        }
        bool ok = true;
        for (size_t t = 0; ok && t < targets.size(); ++t) ok = plan.eval(t, vals.data()) == want[t];
        if (ok) ++matches;
    }
    return matches;
}

struct CutPasteWindow {
    std::int64_t start = 0;                // leftmost cell of the window
    std::vector<std::uint8_t> values;      // window contents of c'
    std::int64_t patch_start = 0;          // where p sits
    size_t patch_length = 0;
    bool unchanged = false;                // p already agreed with c
};

// Realize p inside a configuration asymptotic to the periodic c, bridging
// with words of the strong-irreducibility length on both sides; the returned
// window plus margins is factor-checked, and outside the bridged region c'
// equals c.
inline CutPasteWindow cut_and_paste_demo(const SFT1D& sft, const std::vector<std::uint8_t>& c_word,
                                         const std::vector<std::uint8_t>& p,
                                         std::int64_t p_start = 0, const Caps& caps = {}) {
    if (c_word.empty() || p.empty()) throw Error(Diag::parse, "cut-and-paste needs nonempty words");
    int ell = 1;
    for (const auto& f : sft.forbidden) ell = std::max<int>(ell, f.size());
    const std::int64_t period = static_cast<std::int64_t>(c_word.size());
    auto c_at = [&](std::int64_t x) {
        return c_word[static_cast<size_t>(((x % period) + period) % period)];
    };

    // both inputs must be admissible
    {
        std::vector<std::uint8_t> rep;
        for (int i = 0; i < 3 + (ell + static_cast<int>(period)) / static_cast<int>(period); ++i)
            rep.insert(rep.end(), c_word.begin(), c_word.end());
        if (!sft_word_admissible(sft, rep, caps))
            throw Error(Diag::parse, "periodic configuration is not admissible");
        if (!sft_word_admissible(sft, p, caps))
            throw Error(Diag::parse, "pattern is not admissible");
    }

    auto sr = strong_irreducibility_constant(sft, 8, caps);
    if (!sr.r) throw Error(Diag::parse, "subshift has no small strong-irreducibility constant");
    const int r = *sr.r;
    const std::int64_t margin = ell - 1 + period;
    const std::int64_t start = p_start - r - margin;
    const std::int64_t stop = p_start + static_cast<std::int64_t>(p.size()) + r + margin;

    CutPasteWindow out;
    out.start = start;
    out.patch_start = p_start;
    out.patch_length = p.size();

    // p may already agree with c; then c' = c
    bool agrees = true;
    for (size_t i = 0; agrees && i < p.size(); ++i)
        agrees = p[i] == c_at(p_start + static_cast<std::int64_t>(i));
    auto clean = [&](const std::vector<std::uint8_t>& w) {
        for (const auto& f : sft.forbidden)
            for (size_t i = 0; f.size() <= w.size() && i + f.size() <= w.size(); ++i)
                if (std::equal(f.begin(), f.end(), w.begin() + i)) return false;
        return true;
    };
    if (agrees) {
        out.unchanged = true;
        for (std::int64_t x = start; x < stop; ++x) out.values.push_back(c_at(x));
        return out;
    }

    std::uint64_t bridge_count = checked_pow(sft.alphabet.size, 2 * r, caps.enumeration, "bridges");
    std::vector<std::uint8_t> window(static_cast<size_t>(stop - start));
    for (std::uint64_t bi = 0; bi < bridge_count; ++bi) {
        std::uint64_t rem = bi;
        std::vector<std::uint8_t> bridge(2 * r);
        for (size_t i = bridge.size(); i-- > 0;) {
            bridge[i] = static_cast<std::uint8_t>(rem % sft.alphabet.size);
            rem /= sft.alphabet.size;
        }
        for (std::int64_t x = start; x < stop; ++x) {
            std::uint8_t v;
            if (x < p_start - r)
                v = c_at(x);
            else if (x < p_start)
                v = bridge[static_cast<size_t>(x - (p_start - r))];
            else if (x < p_start + static_cast<std::int64_t>(p.size()))
                v = p[static_cast<size_t>(x - p_start)];
            else if (x < p_start + static_cast<std::int64_t>(p.size()) + r)
                v = bridge[static_cast<size_t>(r + x - p_start - static_cast<std::int64_t>(p.size()))];
            else
                v = c_at(x);
            window[static_cast<size_t>(x - start)] = v;
        }
        if (clean(window)) {
            out.values = window;
            return out;
        }
    }
    throw InternalError("cut-and-paste found no bridge at the strong-irreducibility constant");
}

// ---------------------------------------------------------------------------
// scripted example fixtures, replayed by tests and the demo command

struct Assertion {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
    std::string how;  // what kind of check backs the expectation
};

struct NamedExample {
    std::string id;
    std::string summary;
    std::vector<Assertion> assertions;
    bool all_pass() const {
        return std::all_of(assertions.begin(), assertions.end(),
                           [](const Assertion& a) { return a.pass; });
    }
};

namespace detail_examples {

inline void check(NamedExample& ex, const std::string& name, const std::string& expected,
                  const std::string& actual, const std::string& how) {
    ex.assertions.push_back({name, expected, actual, expected == actual, how});
}

inline std::string yesno(bool b) { return b ? "yes" : "no"; }

}  // namespace detail_examples

inline NamedExample run_example_xor102(const Caps& caps = {}) {
    using detail_examples::check;
    using detail_examples::yesno;
    NamedExample ex{"xor102", "xor with the right neighbor: surjective but not post-surjective", {}};
    auto rule = xor_rule102();
    check(ex, "f(0,0)", "0", std::to_string(rule.table()[0]), "table identity");
    check(ex, "f(0,1)", "1", std::to_string(rule.table()[1]), "table identity");
    check(ex, "surjective", "yes", yesno(decide_surjective(rule, caps).surjective),
          "exact de Bruijn decision");
    check(ex, "postsurjective", "no",
          yesno(decide_postsurjective_1d(rule, caps).post_surjective),
          "exact decision via reversibility");
    check(ex, "preinjective", "yes", yesno(decide_preinjective(rule, caps).preinjective),
          "exact pair-graph decision");
    check(ex, "balanced", "yes", yesno(decide_balanced_1d(rule, 3, caps).balanced),
          "exact decision plus counting to n=3");
    return ex;
}

inline NamedExample run_example_majority_f2(const Caps& caps = {}) {
    using detail_examples::check;
    using detail_examples::yesno;
    NamedExample ex{"majority-f2", "majority on F_2: surjective, not pre-injective, not balanced",
                    {}};
    auto maj = majority_f2();
    std::vector<std::uint8_t> all1{1, 1, 1, 1, 1};
    check(ex, "f(1,1,1,1,1)", "1", std::to_string(maj.apply(all1)), "threshold identity");
    std::vector<std::uint8_t> three{1, 1, 1, 0, 0};
    check(ex, "f(1,1,1,0,0)", "1", std::to_string(maj.apply(three)), "threshold identity");
    std::vector<std::uint8_t> two{1, 1, 0, 0, 0};
    check(ex, "f(1,1,0,0,0)", "0", std::to_string(maj.apply(two)), "threshold identity");

    auto erasable = find_mutually_erasable(maj, 0, caps);
    check(ex, "mutually erasable at m=0", "yes",
          erasable.status == ProbeStatus::yes ? "yes" : "no", "bounded search with certificate");

    Group f2 = Group::free_group(2);
    auto d1 = disk(f2, 1, caps).elements;
    auto d2 = disk(f2, 2, caps).elements;
    auto c0 = count_preimages(maj, Pattern::from_index(d1, 0, 2), d2, caps);
    auto c1 = count_preimages(maj, Pattern::make(d1, {1, 0, 0, 0, 0}), d2, caps);
    check(ex, "count(all-0 on D1 -> D2)", "13105", std::to_string(c0.count),
          "exhaustive over 2^17");
    check(ex, "count(center-1 on D1 -> D2)", "2161", std::to_string(c1.count),
          "exhaustive over 2^17");
    check(ex, "unbalanced witness", "yes", yesno(c0.count != c1.count),
          "two patterns, different counts");

    auto w = non_postsurj_witness_f2(4, caps);
    check(ex, "mixed-neighbor condition on D4", "yes",
          yesno(mixed_neighbor_condition_holds(w.c, w.depth)), "direct scan");
    check(ex, "critical preimage on D3", "yes", yesno(is_critical_preimage(w.e, w.c, 3)),
          "agreement counts");
    check(ex, "corrections with diff in D2", "0",
          std::to_string(witness_correction_count(w, 2, 3, caps)), "exhaustive 2^17 patch scan");
    return ex;
}

inline NamedExample run_example_golden_mean(const Caps& caps = {}) {
    using detail_examples::check;
    NamedExample ex{"golden-mean", "golden mean shift: Fibonacci language counts", {}};
    auto gm = golden_mean();
    check(ex, "count(n=1)", "2", std::to_string(sft_language_count(gm, 1, caps)),
          "transfer-matrix count");
    check(ex, "count(n=3)", "5", std::to_string(sft_language_count(gm, 3, caps)),
          "transfer-matrix count");
    check(ex, "count(n=4)", "8", std::to_string(sft_language_count(gm, 4, caps)),
          "transfer-matrix count");
    check(ex, "word 11 admissible", "no",
          sft_word_admissible(gm, {1, 1}, caps) ? "yes" : "no", "definition");
    auto sr = strong_irreducibility_constant(gm, 5, caps);
    check(ex, "strong irreducibility constant", "1", sr.r ? std::to_string(*sr.r) : "unknown",
          "all node pairs bridge");
    bool fib = true;
    for (int n = 3; n <= 15; ++n)
        fib = fib && sft_language_count(gm, n, caps) ==
                         sft_language_count(gm, n - 1, caps) + sft_language_count(gm, n - 2, caps);
    check(ex, "Fibonacci recurrence 3..15", "yes", fib ? "yes" : "no", "recount");
    return ex;
}

inline NamedExample run_example_cut_and_paste(const Caps& caps = {}) {
    using detail_examples::check;
    NamedExample ex{"cut-and-paste", "splicing an admissible pattern into the golden mean shift",
                    {}};
    auto gm = golden_mean();
    auto win = cut_and_paste_demo(gm, {0, 1}, {0, 0}, 0, caps);
    bool clean = true;
    for (size_t i = 0; i + 1 < win.values.size(); ++i)
        clean = clean && !(win.values[i] == 1 && win.values[i + 1] == 1);
    check(ex, "window has no forbidden factor", "yes", clean ? "yes" : "no", "factor scan");
    check(ex, "pattern realized", "yes",
          (win.values[static_cast<size_t>(win.patch_start - win.start)] == 0 &&
           win.values[static_cast<size_t>(win.patch_start - win.start + 1)] == 0)
              ? "yes"
              : "no",
          "window readback");
    auto same = cut_and_paste_demo(gm, {0, 1}, {0, 1}, 0, caps);
    check(ex, "matching pattern leaves c unchanged", "yes", same.unchanged ? "yes" : "no",
          "short-circuit");
    SFT1D full(Alphabet(2), {});
    auto fs = cut_and_paste_demo(full, {0}, {1, 1}, 0, caps);
    check(ex, "full shift overwrites directly", "yes",
          (fs.values[static_cast<size_t>(fs.patch_start - fs.start)] == 1) ? "yes" : "no",
          "no constraints");
    return ex;
}

}  // namespace cago
