#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cago/ca.hpp"
#include "cago/corpus.hpp"
#include "cago/probes.hpp"
#include "cago/sofic.hpp"
#include "cago/symbolic1d.hpp"

// The acceptance suite: one entry per criterion, every bound and expected
// value pinned here. Each criterion reports pass/fail with a detail line and
// its wall time, and fails if it exceeds its time budget.

namespace cago {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    std::int64_t millis = 0;
    std::int64_t budget_millis = 0;
};

namespace detail_suite {

struct Checker {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += "FAILED: " + what;
        }
    }
};

inline LocalRule eca(std::uint32_t code) {
    Group z = Group::free_abelian(1);
    Neighborhood n({GroupElement::point(z, {-1}), GroupElement::identity(z),
                    GroupElement::point(z, {1})});
    return LocalRule::from_wolfram(Alphabet(2), std::move(n), code);
}

template <typename F>
CriterionResult timed(int index, const std::string& name, std::int64_t budget_ms, F&& body) {
    CriterionResult res;
    res.index = index;
    res.name = name;
    res.budget_millis = budget_ms;
    Checker c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail += std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    res.millis = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    if (res.millis >= budget_ms) {
        c.ok = false;
        c.detail += "; over time budget";
    }
    res.pass = c.ok;
    res.detail = c.detail.empty() ? "ok" : c.detail;
    return res;
}

}  // namespace detail_suite

// 1. rule 102 profile, exact decisions plus exhaustive counting
inline CriterionResult criterion_rule102_profile() {
    using namespace detail_suite;
    return timed(1, "rule 102 profile", 5000, [](Checker& c) {
        auto rule = xor_rule102();
        c.expect(decide_surjective(rule).surjective, "surjective = yes");
        c.expect(!decide_injective_periodic(rule).reversible, "injective = no");
        c.expect(decide_preinjective(rule).preinjective, "pre-injective = yes");
        c.expect(!decide_reversible(rule).reversible, "reversible = no");
        c.expect(!decide_postsurjective_1d(rule).post_surjective, "post-surjective = no");
        auto bal = decide_balanced_1d(rule, 3);
        c.expect(bal.balanced && !bal.deviation, "balanced = yes up to n=3");
        Group z = Group::free_abelian(1);
        for (int n = 0; n <= 3; ++n) {
            auto E = disk(z, n).elements;
            auto M = disk(z, n + 1).elements;
            std::mt19937_64 rng(1000 + n);
            auto p = Pattern::from_index(E, rng() % (std::uint64_t{1} << E.size()), 2);
            auto pc = count_preimages(rule, p, M);
            c.expect(pc.count == 4 && pc.expected == 4,
                     "pattern on D_" + std::to_string(n) + " has exactly 4 preimages on D_" +
                         std::to_string(n + 1));
        }
    });
}

// 2. elementary-rule sweep: the equivalences hold with zero disagreements
inline CriterionResult criterion_elementary_sweep() {
    using namespace detail_suite;
    return timed(2, "elementary-rule sweep (256 rules)", 120000, [](Checker& c) {
        int disagreements = 0;
        for (std::uint32_t code = 0; code < 256; ++code) {
            auto rule = eca(code);
            bool surj = decide_surjective(rule).surjective;
            bool preinj = decide_preinjective(rule).preinjective;
            bool bal = decide_balanced_1d(rule, 2).balanced;
            bool rev = decide_reversible(rule).reversible;
            bool post = decide_postsurjective_1d(rule).post_surjective;
            if (surj != preinj || surj != bal || rev != post) ++disagreements;
        }
        c.expect(disagreements == 0,
                 "zero disagreements, found " + std::to_string(disagreements));
    });
}

// 3. inverse synthesis by patching matches the independent 1d synthesis
inline CriterionResult criterion_inverse_synthesis() {
    using namespace detail_suite;
    return timed(3, "inverse synthesis (rules 170, 15)", 30000, [](Checker& c) {
        Group z = Group::free_abelian(1);
        auto identity = LocalRule::identity(z, Alphabet(2));
        for (std::uint32_t code : {170u, 15u}) {
            auto rule = eca(code);
            auto patch = synthesize_inverse_patch(rule);
            c.expect(patch.status == ProbeStatus::yes,
                     "rule " + std::to_string(code) + " synthesis succeeds");
            if (patch.status != ProbeStatus::yes) continue;
            c.expect(same_global_map(compose(*patch.inverse, rule), identity) &&
                         same_global_map(compose(rule, *patch.inverse), identity),
                     "rule " + std::to_string(code) + " composition is the identity");
            auto oracle = decide_reversible(rule);
            c.expect(oracle.inverse && minimized(*patch.inverse) == minimized(*oracle.inverse),
                     "rule " + std::to_string(code) + " matches the independent synthesis");
        }
    });
}

// 4. balancedness bijection on D_2 pattern pairs
inline CriterionResult criterion_bijection() {
    using namespace detail_suite;
    return timed(4, "balancedness bijection (rules 170, 15)", 60000, [](Checker& c) {
        Group z = Group::free_abelian(1);
        auto d2 = disk(z, 2).elements;
        std::mt19937_64 rng(4242);
        for (std::uint32_t code : {170u, 15u}) {
            auto rule = eca(code);
            auto inv = *decide_reversible(rule).inverse;
            for (int i = 0; i < 50; ++i) {
                auto p1 = Pattern::from_index(d2, rng() % 32, 2);
                auto p2 = Pattern::from_index(d2, rng() % 32, 2);
                auto rep = balancedness_bijection(rule, inv, p1, p2);
                if (!(rep.q1_size == 4 && rep.q2_size == 4 && rep.expected == 4 && rep.bijection)) {
                    c.expect(false, "rule " + std::to_string(code) + " pair " + std::to_string(i));
                    return;
                }
            }
        }
    });
}

// 5. majority on F_2: erasable pair, unbalanced counts, critical preimages,
//    and the no-correction scan
inline CriterionResult criterion_majority_f2() {
    using namespace detail_suite;
    return timed(5, "majority on F_2", 300000, [](Checker& c) {
        auto maj = majority_f2();
        auto erasable = find_mutually_erasable(maj, 0);
        c.expect(erasable.status == ProbeStatus::yes && erasable.m_found == 0,
                 "mutually erasable at m = 0");

        Group f2 = Group::free_group(2);
        auto d1 = disk(f2, 1).elements;
        auto d2 = disk(f2, 2).elements;
        auto c0 = count_preimages(maj, Pattern::from_index(d1, 0, 2), d2);
        auto c1 = count_preimages(maj, Pattern::make(d1, {1, 0, 0, 0, 0}), d2);
        c.expect(c0.count == 13105 && c1.count == 2161 && c0.count != c1.count,
                 "two D_1 patterns with different preimage counts on D_2");

        std::mt19937_64 rng(2024);
        bool critical_ok = true;
        for (int trial = 0; trial < 100 && critical_ok; ++trial) {
            int n = 1 + static_cast<int>(rng() % 2);
            auto dd = disk(f2, n + 1).elements;
            std::vector<std::uint8_t> values(dd.size());
            for (auto& v : values) v = static_cast<std::uint8_t>(rng() % 2);
            auto pat = Pattern::make(dd, values);
            critical_ok = is_critical_preimage(critical_preimage(pat), pat, n);
        }
        c.expect(critical_ok, "critical preimage verifies on 100 seeded random patterns");

        auto w = non_postsurj_witness_f2(4);
        c.expect(mixed_neighbor_condition_holds(w.c, 4), "mixed-neighbor condition on D_4");
        c.expect(is_critical_preimage(w.e, w.c, 3), "witness preimage critical on D_3");
        c.expect(witness_correction_count(w, 2, 3) == 0,
                 "no correction with diff in D_2 (2^17 patch scan)");
    });
}

// 6. golden mean language counts
inline CriterionResult criterion_golden_mean() {
    using namespace detail_suite;
    return timed(6, "golden mean shift", 5000, [](Checker& c) {
        auto gm = golden_mean();
        std::vector<std::uint64_t> fib{1, 1};
        for (int i = 2; i < 18; ++i) fib.push_back(fib[i - 1] + fib[i - 2]);
        for (int n = 1; n <= 15; ++n) {
            if (sft_language_count(gm, n) != fib[n + 1]) {
                c.expect(false, "count(" + std::to_string(n) + ") = f_" + std::to_string(n + 2));
                return;
            }
        }
        for (int n = 3; n <= 15; ++n)
            c.expect(sft_language_count(gm, n) ==
                         sft_language_count(gm, n - 1) + sft_language_count(gm, n - 2),
                     "Fibonacci recurrence at n = " + std::to_string(n));
        auto sr = strong_irreducibility_constant(gm, 5);
        c.expect(sr.r && *sr.r == 1, "strong irreducibility constant = 1");
    });
}

// 7. sofic subsystem
inline CriterionResult criterion_sofic() {
    using namespace detail_suite;
    return timed(7, "sofic subsystem", 60000, [](Checker& c) {
        Group z = Group::free_abelian(1);
        for (int r = 0; r <= 4; ++r)
            for (int n = 2 * r + 2; n <= 20; ++n) {
                auto approx = torus_approximation(1, n, r);
                auto verdict = verify_approximation(approx.graph, approx.u, r, z, 1.0);
                if (!verdict.ok) {
                    c.expect(false, "torus n=" + std::to_string(n) + " r=" + std::to_string(r));
                    return;
                }
            }

        auto c12 = cycle_graph(12);
        std::vector<std::uint32_t> all(12);
        for (std::uint32_t i = 0; i < 12; ++i) all[i] = i;
        auto w = greedy_packing(c12, all, 1, z);
        c.expect(w.size() == 4, "greedy packing |W| = 4 on C_12");
        c.expect(w.size() * 2 * disk(z, 2).elements.size() >= 12, "|W| >= |V| / (2 |D_2|)");

        auto c8 = cycle_graph(8);
        std::vector<std::uint32_t> all8(8);
        for (std::uint32_t i = 0; i < 8; ++i) all8[i] = i;
        auto shift = LocalRule(Alphabet(2), Neighborhood({GroupElement::point(z, {1})}), {0, 1});
        auto const0 = LocalRule(Alphabet(2), Neighborhood({GroupElement::identity(z)}), {0, 0});
        c.expect(phi_image_count(c8, all8, shift).distinct == 256, "phi(shift on C_8) = 256");
        c.expect(phi_image_count(c8, all8, xor_rule102()).distinct == 128,
                 "phi(rule 102 on C_8) = 128");
        c.expect(phi_image_count(c8, all8, const0).distinct == 1, "phi(constant-0) = 1");

        c.expect(counting_feasibility(2, 5, 17, 1e-3).feasible,
                 "feasibility true at eps = 1e-3");
        c.expect(!counting_feasibility(2, 5, 17, 1.0).feasible, "feasibility false at eps = 1");
    });
}

// 8. property suites on >= 1000 seeded random instances
inline CriterionResult criterion_property_suites() {
    using namespace detail_suite;
    return timed(8, "property suites (1000+ seeded instances)", 60000, [](Checker& c) {
        std::mt19937_64 rng(777);
        Group z = Group::free_abelian(1);
        Group f2 = Group::free_group(2);
        Alphabet b2(2);

        c.expect(disk(f2, 2).elements.size() == 17, "|D_2(F_2)| = 17");

        auto rule = xor_rule102();
        auto random_config = [&](const Group& g) {
            auto cfg = PatchedConfiguration::uniform(g, b2, static_cast<std::uint8_t>(rng() % 2));
            int flips = static_cast<int>(rng() % 5);
            for (int i = 0; i < flips; ++i) {
                if (g.kind() == Group::Kind::free_abelian) {
                    cfg = cfg.with_value(
                        GroupElement::point(g, {static_cast<std::int32_t>(rng() % 11) - 5}),
                        static_cast<std::uint8_t>(rng() % 2));
                } else {
                    auto d = disk(g, 2).elements;
                    cfg = cfg.with_value(d[rng() % d.size()], static_cast<std::uint8_t>(rng() % 2));
                }
            }
            return cfg;
        };

        int instances = 0;
        for (int i = 0; i < 400; ++i) {
            // metric axioms on both groups
            for (const Group& g : {z, f2}) {
                auto rand_elem = [&]() {
                    if (g.kind() == Group::Kind::free_abelian)
                        return GroupElement::point(g, {static_cast<std::int32_t>(rng() % 21) - 10});
                    auto d = disk(g, 3).elements;
                    return d[rng() % d.size()];
                };
                auto a = rand_elem(), b = rand_elem(), x = rand_elem();
                if (distance(a, b) != distance(b, a) ||
                    distance(a, b) > distance(a, x) + distance(x, b) ||
                    distance(x * a, x * b) != distance(a, b)) {
                    c.expect(false, "metric axioms, instance " + std::to_string(i));
                    return;
                }
                ++instances;
            }
            // equivariance and diff bound over Z
            auto cfg = random_config(z);
            auto g = GroupElement::point(z, {static_cast<std::int32_t>(rng() % 9) - 4});
            if (!(apply_global(rule, translate(cfg, g)) == translate(apply_global(rule, cfg), g))) {
                c.expect(false, "equivariance, instance " + std::to_string(i));
                return;
            }
            ++instances;
            auto cfg2 = cfg.with_value(
                GroupElement::point(z, {static_cast<std::int32_t>(rng() % 11) - 5}),
                static_cast<std::uint8_t>(rng() % 2));
            std::uint64_t delta = 0, img_delta = 0;
            for (const auto& [k, v] : cfg.diff())
                if (cfg2.at(k) != v) ++delta;
            for (const auto& [k, v] : cfg2.diff())
                if (cfg.at(k) != v && !cfg.diff().count(k)) ++delta;
            auto i1 = apply_global(rule, cfg), i2 = apply_global(rule, cfg2);
            for (const auto& [k, v] : i1.diff())
                if (i2.at(k) != v) ++img_delta;
            for (const auto& [k, v] : i2.diff())
                if (i1.at(k) != v && !i1.diff().count(k)) ++img_delta;
            if (img_delta > delta * rule.neighborhood().size()) {
                c.expect(false, "diff bound, instance " + std::to_string(i));
                return;
            }
            ++instances;
            // locality: pattern application agrees with the global map
            std::vector<GroupElement> window, targets;
            for (int x = -4; x <= 4; ++x) window.push_back(GroupElement::point(z, {x}));
            for (int x = -3; x <= 3; ++x) targets.push_back(GroupElement::point(z, {x}));
            auto q = apply_pattern(rule, cfg.restricted(window), targets);
            auto img = apply_global(rule, cfg);
            for (const auto& t : targets)
                if (q.at(t) != img.at(t)) {
                    c.expect(false, "locality, instance " + std::to_string(i));
                    return;
                }
            ++instances;
        }
        c.expect(instances >= 1000, "ran " + std::to_string(instances) + " instances");
    });
}

inline std::vector<CriterionResult> run_acceptance() {
    return {criterion_rule102_profile(), criterion_elementary_sweep(),
            criterion_inverse_synthesis(), criterion_bijection(),
            criterion_majority_f2(),      criterion_golden_mean(),
            criterion_sofic(),            criterion_property_suites()};
}

inline std::string format_acceptance_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.index << ": " << r.name << " ("
       << r.millis << " ms)";
    if (!r.pass) os << " -- " << r.detail;
    return os.str();
}

}  // namespace cago
