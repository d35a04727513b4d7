#include "cago/probes.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace cago;

namespace {

const Group Z = Group::free_abelian(1);
const Alphabet B2(2);

GroupElement zp(std::int32_t x) { return GroupElement::point(Z, {x}); }

LocalRule eca(std::uint32_t code) {
    return LocalRule::from_wolfram(B2, Neighborhood({zp(-1), zp(0), zp(1)}), code);
}

LocalRule xor_right() { return LocalRule(B2, Neighborhood({zp(0), zp(1)}), {0, 1, 1, 0}); }

LocalRule majority_f2() {
    auto f2 = Group::free_group(2);
    std::vector<std::uint8_t> table(32);
    for (int i = 0; i < 32; ++i) table[i] = __builtin_popcount(i) >= 3;
    return LocalRule(B2, Neighborhood(disk(f2, 1).elements), table);
}

// Independent preimage-count oracle: plain neighbor-index maps and bit loops,
// no ApplyPlan machinery.
std::uint64_t brute_count(const LocalRule& rule, const Pattern& p,
                          const std::vector<GroupElement>& window) {
    std::vector<GroupElement> M = window;
    std::sort(M.begin(), M.end(), LengthLexLess{});
    std::map<std::string, size_t> pos;
    for (size_t i = 0; i < M.size(); ++i) pos[M[i].to_string()] = i;
    std::vector<std::vector<size_t>> rows;
    for (const auto& t : p.support()) {
        std::vector<size_t> row;
        for (size_t j = 0; j < rule.neighborhood().size(); ++j)
            row.push_back(pos.at((t * rule.neighborhood().at(j)).to_string()));
        rows.push_back(row);
    }
    std::uint64_t count = 0;
    std::vector<std::uint8_t> vals(M.size());
    for (std::uint64_t q = 0; q < (std::uint64_t{1} << M.size()); ++q) {
        for (size_t i = 0; i < M.size(); ++i) vals[i] = (q >> i) & 1;
        bool hit = true;
        for (size_t t = 0; hit && t < rows.size(); ++t) {
            std::uint64_t idx = 0;
            for (size_t j = 0; j < rows[t].size(); ++j) idx = idx * 2 + vals[rows[t][j]];
            hit = rule.table()[idx] == p.values()[t];
        }
        if (hit) ++count;
    }
    return count;
}

}  // namespace

TEST(Probes, CountPreimagesXorOnD1) {
    auto rule = xor_right();
    auto d1 = disk(Z, 1).elements;
    auto d2 = disk(Z, 2).elements;
    for (std::uint64_t i = 0; i < 8; ++i) {
        auto p = Pattern::from_index(d1, i, 2);
        auto res = count_preimages(rule, p, d2);
        EXPECT_EQ(res.expected, 4u);
        EXPECT_EQ(res.count, 4u);
    }
}

TEST(Probes, CountPreimagesMajorityD0) {
    auto maj = majority_f2();
    auto f2 = maj.group();
    auto p = Pattern::make({GroupElement::identity(f2)}, {0});
    auto res = count_preimages(maj, p, disk(f2, 1).elements);
    // 5-cell words with at most two ones: 1 + 5 + 10
    EXPECT_EQ(res.count, 16u);
    EXPECT_EQ(res.expected, 16u);
}

TEST(Probes, CountPreimagesIdentity) {
    auto id = LocalRule::identity(Z, B2);
    auto d1 = disk(Z, 1).elements;
    auto p = Pattern::from_index(d1, 5, 2);
    auto res = count_preimages(id, p, d1);
    EXPECT_EQ(res.count, 1u);
    EXPECT_EQ(res.expected, 1u);
}

TEST(Probes, CountPreimagesMajorityD1Frozen) {
    // the two D_1 patterns with different counts on D_2 (exhaustive over 2^17)
    auto maj = majority_f2();
    auto f2 = maj.group();
    auto d1 = disk(f2, 1).elements;
    auto d2 = disk(f2, 2).elements;
    auto all0 = Pattern::from_index(d1, 0, 2);
    auto center1 = Pattern::make(d1, {1, 0, 0, 0, 0});
    auto c0 = count_preimages(maj, all0, d2);
    auto c1 = count_preimages(maj, center1, d2);
    EXPECT_EQ(c0.expected, 4096u);
    EXPECT_EQ(c0.count, 13105u);
    EXPECT_EQ(c1.count, 2161u);
    EXPECT_NE(c0.count, c1.count);
    // cross-check against the independent oracle
    EXPECT_EQ(brute_count(maj, all0, d2), 13105u);
    EXPECT_EQ(brute_count(maj, center1, d2), 2161u);
}

TEST(Probes, CountPreimagesWindowViolation) {
    auto rule = xor_right();
    auto d1 = disk(Z, 1).elements;
    auto p = Pattern::from_index(d1, 3, 2);
    EXPECT_THROW(count_preimages(rule, p, d1), SupportError);  // E*N not inside M
}

TEST(Probes, CheckBalancedXor) {
    auto res = check_balanced(xor_right(), 3);
    EXPECT_EQ(res.status, ProbeStatus::yes);
    EXPECT_EQ(res.n_max, 3);
}

TEST(Probes, CheckBalancedIdentity) {
    EXPECT_EQ(check_balanced(LocalRule::identity(Z, B2), 4).status, ProbeStatus::yes);
}

TEST(Probes, CheckBalancedMajorityF2No) {
    auto res = check_balanced(majority_f2(), 1);
    EXPECT_EQ(res.status, ProbeStatus::no);
    ASSERT_TRUE(res.deviation.has_value());
    EXPECT_NE(res.deviation->count, res.deviation->expected);
    // deviation certificate re-verifies through count_preimages
    auto recount = count_preimages(majority_f2(), res.deviation->pattern, res.deviation->window);
    EXPECT_EQ(recount.count, res.deviation->count);
}

TEST(Probes, ErasableMajorityF2AtM0) {
    auto res = find_mutually_erasable(majority_f2(), 0);
    EXPECT_EQ(res.status, ProbeStatus::yes);
    EXPECT_EQ(res.m_found, 0);
    ASSERT_TRUE(res.pair.has_value());
    const auto& [p1, p2] = *res.pair;
    // the first witness in length-lex order: all-0 on D_2 against 1 at center
    EXPECT_EQ(p1.index(2), 0u);
    EXPECT_EQ(p2.at(GroupElement::identity(p2.group())), 1);
    EXPECT_EQ(p2.index(2), std::uint64_t{1} << 16);
    EXPECT_TRUE(verify_mutually_erasable(majority_f2(), p1, p2));
}

TEST(Probes, ErasableRule0) {
    auto res = find_mutually_erasable(eca(0), 1);
    EXPECT_EQ(res.status, ProbeStatus::yes);
    EXPECT_EQ(res.m_found, 0);
}

TEST(Probes, ErasableShiftNo) {
    auto res = find_mutually_erasable(eca(170), 2);
    EXPECT_EQ(res.status, ProbeStatus::no);
    EXPECT_FALSE(res.pair.has_value());
}

TEST(Probes, VerifyErasableRejectsBogusPair) {
    auto rule = xor_right();
    auto d1 = disk(Z, 1).elements;
    auto p1 = Pattern::from_index(d1, 0, 2);
    auto p2 = Pattern::from_index(d1, 1, 2);
    EXPECT_FALSE(verify_mutually_erasable(rule, p1, p2));
}

TEST(Probes, PostSurjectivityShift) {
    auto res = post_surjectivity_probe(eca(170));
    EXPECT_EQ(res.status, ProbeStatus::yes);
    EXPECT_EQ(res.estimated_n, 1);
    EXPECT_FALSE(res.failing_instance.has_value());
    for (const auto& inst : res.instances) {
        ASSERT_TRUE(inst.corrected_e.has_value());
        EXPECT_EQ(apply_global(eca(170), *inst.corrected_e), inst.changed_image);
    }
}

TEST(Probes, PostSurjectivityRule102No) {
    auto res = post_surjectivity_probe(eca(102));
    EXPECT_EQ(res.status, ProbeStatus::no);
    ASSERT_TRUE(res.failing_instance.has_value());
}

TEST(Probes, PostSurjectivityRule15) {
    auto res = post_surjectivity_probe(eca(15));
    EXPECT_EQ(res.status, ProbeStatus::yes);
    EXPECT_GE(res.estimated_n, 0);
    EXPECT_LE(res.estimated_n, 2);
}

TEST(Probes, InverseSynthesisShift) {
    auto res = synthesize_inverse_patch(eca(170));
    ASSERT_EQ(res.status, ProbeStatus::yes);
    ASSERT_TRUE(res.inverse.has_value());
    auto shift_right = LocalRule(B2, Neighborhood({zp(-1)}), {0, 1});
    EXPECT_TRUE(same_global_map(*res.inverse, shift_right));
}

TEST(Probes, InverseSynthesisRule15MatchesSymbolicOracle) {
    auto res = synthesize_inverse_patch(eca(15));
    ASSERT_EQ(res.status, ProbeStatus::yes);
    auto oracle = decide_reversible(eca(15));
    ASSERT_TRUE(oracle.inverse.has_value());
    EXPECT_TRUE(same_global_map(*res.inverse, *oracle.inverse));
    EXPECT_EQ(minimized(*res.inverse), minimized(*oracle.inverse));
}

TEST(Probes, InverseSynthesisRule102Aborts) {
    auto res = synthesize_inverse_patch(eca(102));
    EXPECT_EQ(res.status, ProbeStatus::no);
    EXPECT_NE(res.abort_reason.find("post-surjectivity"), std::string::npos);
}

TEST(Probes, InverseSynthesisBasePointIndependence) {
    // h(p) must not depend on the base point: recompute the table at g != 1
    auto rule = eca(170);
    auto res = synthesize_inverse_patch(rule);
    ASSERT_EQ(res.status, ProbeStatus::yes);
    const auto& inv = *res.inverse;
    auto u = PatchedConfiguration::uniform(Z, B2, 0);
    auto v = apply_global(rule, u);
    for (const GroupElement& base : {zp(2), zp(-3)}) {
        std::vector<GroupElement> shifted;
        for (const auto& e : inv.neighborhood().elements()) shifted.push_back(base * e);
        for (std::uint64_t pi = 0; pi < inv.table().size(); ++pi) {
            // paste p at base, solve, read at base
            auto pat = Pattern::from_index(inv.neighborhood().elements(), pi, 2);
            std::vector<std::uint8_t> vals(pat.values());
            std::vector<GroupElement> sup = shifted;
            auto y = v.overridden(Pattern::make(sup, vals));
            std::optional<PatchedConfiguration> found;
            for (int rad = 0; rad <= 4 && !found; ++rad) {
                auto Dr = disk(Z, rad).elements;
                std::vector<GroupElement> moved;
                for (const auto& d : Dr) moved.push_back(base * d);
                std::sort(moved.begin(), moved.end(), LengthLexLess{});
                for (std::uint64_t q = 0; q < (std::uint64_t{1} << moved.size()); ++q) {
                    auto x = u.overridden(Pattern::from_index(moved, q, 2));
                    if (apply_global(rule, x) == y) {
                        found = x;
                        break;
                    }
                }
            }
            ASSERT_TRUE(found.has_value());
            EXPECT_EQ(found->at(base), inv.table()[pi]) << "base " << base.to_string();
        }
    }
}

TEST(Probes, BijectionShiftOnD2) {
    auto rule = eca(170);
    auto inv = *decide_reversible(rule).inverse;
    auto d2 = disk(Z, 2).elements;
    std::mt19937_64 rng(42);
    for (int i = 0; i < 10; ++i) {
        auto p1 = Pattern::from_index(d2, rng() % 32, 2);
        auto p2 = Pattern::from_index(d2, rng() % 32, 2);
        auto rep = balancedness_bijection(rule, inv, p1, p2);
        EXPECT_EQ(rep.q1_size, 4u);
        EXPECT_EQ(rep.q2_size, 4u);
        EXPECT_EQ(rep.expected, 4u);
        EXPECT_TRUE(rep.bijection);
    }
}

TEST(Probes, BijectionSamePatternIsIdentity) {
    auto rule = eca(15);
    auto inv = *decide_reversible(rule).inverse;
    auto d2 = disk(Z, 2).elements;
    auto p = Pattern::from_index(d2, 11, 2);
    auto rep = balancedness_bijection(rule, inv, p, p);
    EXPECT_TRUE(rep.bijection);
    EXPECT_TRUE(rep.roundtrip_identity);
}

TEST(Probes, BijectionRejectsBadInverse) {
    auto rule = eca(170);
    auto not_inverse = eca(15);
    auto d2 = disk(Z, 2).elements;
    auto p = Pattern::from_index(d2, 3, 2);
    EXPECT_THROW(balancedness_bijection(rule, not_inverse, p, p), Error);
}

TEST(Probes, CompositionOfBalancedStaysBalanced) {
    // composition lemma at the bounded level
    auto F = xor_right();
    auto H = eca(170);
    ASSERT_EQ(check_balanced(F, 2).status, ProbeStatus::yes);
    ASSERT_EQ(check_balanced(H, 2).status, ProbeStatus::yes);
    EXPECT_EQ(check_balanced(compose(F, H), 2).status, ProbeStatus::yes);
}

TEST(Probes, CheckBalancedOnZ2) {
    // xor with the right neighbor, lifted to Z^2: balanced counts on disks
    auto z2 = Group::free_abelian(2);
    Neighborhood n({GroupElement::point(z2, {0, 0}), GroupElement::point(z2, {1, 0})});
    LocalRule rule(B2, n, {0, 1, 1, 0});
    auto res = check_balanced(rule, 1);
    EXPECT_EQ(res.status, ProbeStatus::yes);
}

TEST(Probes, ErasableUnknownOffZ) {
    // shift on Z^2 has no erasable pair; off Z there is no oracle upgrade
    auto z2 = Group::free_abelian(2);
    LocalRule shift(B2, Neighborhood({GroupElement::point(z2, {1, 0})}), {0, 1});
    auto res = find_mutually_erasable(shift, 0);
    EXPECT_EQ(res.status, ProbeStatus::unknown);
    EXPECT_NE(res.note.find("bound exhausted"), std::string::npos);
}

TEST(Probes, PostSurjectivityProbeOnZ2) {
    // shift on Z^2: every instance corrects at N = 1; off Z the status stays
    // unknown with positive evidence
    auto z2 = Group::free_abelian(2);
    LocalRule shift(B2, Neighborhood({GroupElement::point(z2, {1, 0})}), {0, 1});
    ProbeOptions opts;
    opts.n_max = 2;
    auto res = post_surjectivity_probe(shift, opts);
    EXPECT_EQ(res.status, ProbeStatus::unknown);
    EXPECT_FALSE(res.failing_instance.has_value());
    EXPECT_EQ(res.estimated_n, 1);
    EXPECT_NE(res.note.find("positive evidence"), std::string::npos);
}

TEST(Probes, CapExceededSurfacesAsError) {
    auto maj = majority_f2();
    Caps caps;
    caps.enumeration = 1 << 10;
    auto f2 = maj.group();
    auto d1 = disk(f2, 1).elements;
    EXPECT_THROW(
        count_preimages(maj, Pattern::from_index(d1, 0, 2), disk(f2, 2).elements, caps),
        CapExceededError);
}

TEST(Probes, SoundnessSweepAgainstExactOracles) {
    // every probe verdict that the 1d oracles can decide exactly must agree
    ProbeOptions opts;
    opts.n_max = 3;
    for (std::uint32_t code = 0; code < 256; ++code) {
        auto rule = eca(code);
        bool preinj = decide_preinjective(rule).preinjective;
        auto erasable = find_mutually_erasable(rule, 1);
        ASSERT_NE(erasable.status, ProbeStatus::unknown) << "rule " << code;
        EXPECT_EQ(erasable.status == ProbeStatus::no, preinj) << "rule " << code;
        if (erasable.pair) {
            EXPECT_TRUE(verify_mutually_erasable(rule, erasable.pair->first, erasable.pair->second))
                << "rule " << code;
        }

        bool postsurj = decide_postsurjective_1d(rule).post_surjective;
        auto probe = post_surjectivity_probe(rule, opts);
        EXPECT_EQ(probe.status == ProbeStatus::yes, postsurj) << "rule " << code;

        bool balanced = decide_balanced_1d(rule, 1).balanced;
        auto bal = check_balanced(rule, 1);
        if (balanced) {
            EXPECT_EQ(bal.status, ProbeStatus::yes) << "rule " << code;
        }
        if (bal.status == ProbeStatus::no) {
            EXPECT_FALSE(balanced) << "rule " << code;
        }
    }
}
