#include "cago/ca.hpp"

#include <gtest/gtest.h>

#include <random>

#include "cago/rule_io.hpp"

using namespace cago;

namespace {

const Group Z = Group::free_abelian(1);
const Alphabet B2(2);

GroupElement zp(std::int32_t x) { return GroupElement::point(Z, {x}); }

LocalRule xor_rule() {
    return LocalRule(B2, Neighborhood({zp(0), zp(1)}), {0, 1, 1, 0});
}

LocalRule shift_rule(int offset) {
    return LocalRule(B2, Neighborhood({zp(offset)}), {0, 1});
}

LocalRule constant_rule(std::uint8_t v) {
    return LocalRule(B2, Neighborhood({zp(0)}), {v, v});
}

// number of points where two same-background configurations differ
size_t diff_count(const PatchedConfiguration& a, const PatchedConfiguration& b) {
    size_t n = 0;
    for (const auto& [g, v] : a.diff())
        if (b.at(g) != v) ++n;
    for (const auto& [g, v] : b.diff())
        if (a.at(g) != v && !a.diff().count(g)) ++n;
    return n;
}

PatchedConfiguration random_config(const Group& g, std::mt19937_64& rng, int spread = 5) {
    auto c = PatchedConfiguration::uniform(g, B2, static_cast<std::uint8_t>(rng() % 2));
    std::uniform_int_distribution<int> coord(-spread, spread);
    int flips = static_cast<int>(rng() % 6);
    for (int i = 0; i < flips; ++i) {
        GroupElement x = g.kind() == Group::Kind::free_abelian
                             ? GroupElement::point(g, {static_cast<std::int32_t>(coord(rng))})
                             : disk(g, 2).elements[rng() % 17];
        c = c.with_value(x, static_cast<std::uint8_t>(rng() % 2));
    }
    return c;
}

}  // namespace

TEST(Ca, TranslateIdentity) {
    auto c = PatchedConfiguration::uniform(Z, B2, 0).with_value(zp(0), 1);
    EXPECT_EQ(translate(c, GroupElement::identity(Z)), c);
}

TEST(Ca, TranslateMovesDiff) {
    auto c = PatchedConfiguration::uniform(Z, B2, 0).with_value(zp(0), 1);
    auto t = translate(c, zp(3));
    EXPECT_EQ(t.at(zp(-3)), 1);  // result(x) = c(3 + x)
    EXPECT_EQ(t.diff().size(), 1u);
}

TEST(Ca, TranslateActionLaw) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto c = random_config(Z, rng);
        auto g = zp(static_cast<std::int32_t>(rng() % 7) - 3);
        auto h = zp(static_cast<std::int32_t>(rng() % 7) - 3);
        EXPECT_EQ(translate(translate(c, g), h), translate(c, g * h));
    }
}

TEST(Ca, TranslatePeriodic) {
    auto c = PatchedConfiguration::periodic(B2, {0, 1});
    auto t = translate(c, zp(1));
    EXPECT_EQ(t.at(zp(0)), c.at(zp(1)));
    EXPECT_EQ(t.at(zp(5)), c.at(zp(6)));
}

TEST(Ca, ApplyPatternXor) {
    auto p = Pattern::make({zp(0), zp(1), zp(2)}, {1, 1, 0});
    auto q = apply_pattern(xor_rule(), p, {zp(0), zp(1)});
    EXPECT_EQ(q.values(), (std::vector<std::uint8_t>{0, 1}));
}

TEST(Ca, ApplyPatternConstantAndIdentity) {
    auto p = Pattern::make({zp(0), zp(1)}, {1, 0});
    auto q = apply_pattern(constant_rule(0), p, {zp(0), zp(1)});
    EXPECT_EQ(q.values(), (std::vector<std::uint8_t>{0, 0}));
    auto r = apply_pattern(LocalRule::identity(Z, B2), p, {zp(1)});
    EXPECT_EQ(r.at(zp(1)), 0);
}

TEST(Ca, ApplyPatternSupportViolation) {
    auto p = Pattern::make({zp(0), zp(1)}, {1, 1});
    EXPECT_THROW(apply_pattern(xor_rule(), p, {zp(1)}), SupportError);
}

TEST(Ca, ApplyGlobalXorSingleFlip) {
    auto c = PatchedConfiguration::uniform(Z, B2, 0).with_value(zp(0), 1);
    auto img = apply_global(xor_rule(), c);
    EXPECT_EQ(std::get<PatchedConfiguration::Uniform>(img.background()).state, 0);
    EXPECT_EQ(img.diff().size(), 2u);
    EXPECT_EQ(img.at(zp(-1)), 1);
    EXPECT_EQ(img.at(zp(0)), 1);
}

TEST(Ca, ApplyGlobalIdentity) {
    std::mt19937_64 rng(5);
    auto id = LocalRule::identity(Z, B2);
    for (int i = 0; i < 50; ++i) {
        auto c = random_config(Z, rng);
        EXPECT_EQ(apply_global(id, c), c);
    }
}

TEST(Ca, ApplyGlobalPeriodicBackground) {
    auto c = PatchedConfiguration::periodic(B2, {0, 1, 1});
    auto img = apply_global(xor_rule(), c);
    // xor of (0,1,1) cyclic: word (1,0,1) up to phase
    for (int x = -5; x <= 5; ++x) {
        EXPECT_EQ(img.at(zp(x)), static_cast<std::uint8_t>(c.at(zp(x)) ^ c.at(zp(x + 1))));
    }
}

TEST(Ca, UniformBackgroundMapsUniform) {
    auto f2 = Group::free_group(2);
    auto d1 = disk(f2, 1).elements;
    // majority over D_1
    std::vector<std::uint8_t> table(32);
    for (int i = 0; i < 32; ++i) table[i] = __builtin_popcount(i) >= 3 ? 1 : 0;
    LocalRule maj(B2, Neighborhood(d1), table);
    for (std::uint8_t u : {0, 1}) {
        auto c = PatchedConfiguration::uniform(f2, B2, u);
        auto img = apply_global(maj, c);
        EXPECT_EQ(std::get<PatchedConfiguration::Uniform>(img.background()).state, u);
        EXPECT_TRUE(img.diff().empty());
    }
}

TEST(Ca, Equivariance) {
    std::mt19937_64 rng(7);
    auto rule = xor_rule();
    for (int i = 0; i < 200; ++i) {
        auto c = random_config(Z, rng);
        auto g = zp(static_cast<std::int32_t>(rng() % 9) - 4);
        EXPECT_EQ(apply_global(rule, translate(c, g)), translate(apply_global(rule, c), g));
    }
}

TEST(Ca, LocalityPatternMatchesGlobal) {
    std::mt19937_64 rng(9);
    auto rule = xor_rule();
    std::vector<GroupElement> window;
    for (int x = -4; x <= 4; ++x) window.push_back(zp(x));
    std::vector<GroupElement> targets;
    for (int x = -3; x <= 3; ++x) targets.push_back(zp(x));
    for (int i = 0; i < 200; ++i) {
        auto c = random_config(Z, rng, 3);
        auto p = c.restricted(window);
        auto q = apply_pattern(rule, p, targets);
        auto img = apply_global(rule, c);
        for (const auto& t : targets) EXPECT_EQ(q.at(t), img.at(t));
    }
}

TEST(Ca, DiffBound) {
    std::mt19937_64 rng(11);
    auto rule = xor_rule();
    for (int i = 0; i < 200; ++i) {
        auto c = random_config(Z, rng);
        auto c2 = c;
        int flips = 1 + static_cast<int>(rng() % 4);
        for (int f = 0; f < flips; ++f)
            c2 = c2.with_value(zp(static_cast<std::int32_t>(rng() % 11) - 5),
                               static_cast<std::uint8_t>(rng() % 2));
        size_t delta = diff_count(c, c2);
        size_t img_delta = diff_count(apply_global(rule, c), apply_global(rule, c2));
        EXPECT_LE(img_delta, delta * rule.neighborhood().size());
    }
}

TEST(Ca, ComposeIdentityLeft) {
    auto r = xor_rule();
    EXPECT_TRUE(same_global_map(compose(LocalRule::identity(Z, B2), r), r));
    EXPECT_TRUE(same_global_map(compose(r, LocalRule::identity(Z, B2)), r));
}

TEST(Ca, ComposeShifts) {
    auto sl = shift_rule(1), sr = shift_rule(-1);
    EXPECT_TRUE(same_global_map(compose(sl, sr), LocalRule::identity(Z, B2)));
}

TEST(Ca, ComposeXorXor) {
    auto c = compose(xor_rule(), xor_rule());
    EXPECT_EQ(c.neighborhood().size(), 3u);  // {0,1,2}
    auto min = minimized(c);
    ASSERT_EQ(min.neighborhood().size(), 2u);  // x_i xor x_{i+2}
    EXPECT_EQ(min.neighborhood().at(0), zp(0));
    EXPECT_EQ(min.neighborhood().at(1), zp(2));
    EXPECT_EQ(min.table(), (std::vector<std::uint8_t>{0, 1, 1, 0}));
}

TEST(Ca, ComposeMatchesSequentialApplication) {
    std::mt19937_64 rng(13);
    auto F = xor_rule();
    auto H = shift_rule(1);
    auto FH = compose(F, H);
    for (int i = 0; i < 100; ++i) {
        auto c = random_config(Z, rng);
        EXPECT_EQ(apply_global(FH, c), apply_global(F, apply_global(H, c)));
    }
}

TEST(Ca, ComposeAssociativeOnSamples) {
    auto a = xor_rule(), b = shift_rule(1), c = shift_rule(-1);
    EXPECT_TRUE(same_global_map(compose(compose(a, b), c), compose(a, compose(b, c))));
}

TEST(Ca, ComposeAlphabetMismatch) {
    LocalRule t3(Alphabet(3), Neighborhood({zp(0)}), {0, 1, 2});
    EXPECT_THROW(compose(xor_rule(), t3), ParseError);
}

TEST(Ca, MinimizedConstant) {
    LocalRule c0(B2, Neighborhood({zp(-1), zp(0), zp(1)}), {0, 0, 0, 0, 0, 0, 0, 0});
    auto min = minimized(c0);
    EXPECT_EQ(min.neighborhood().size(), 1u);
    EXPECT_TRUE(min.neighborhood().at(0).is_identity());
    EXPECT_EQ(min.table(), (std::vector<std::uint8_t>{0, 0}));
}

TEST(Ca, WolframExpansion) {
    auto w102 = LocalRule::from_wolfram(B2, Neighborhood({zp(-1), zp(0), zp(1)}), 102);
    // rule 102 is xor of center and right neighbor
    EXPECT_TRUE(same_global_map(w102, xor_rule()));
    auto w170 = LocalRule::from_wolfram(B2, Neighborhood({zp(-1), zp(0), zp(1)}), 170);
    EXPECT_TRUE(same_global_map(w170, shift_rule(1)));
}

TEST(Ca, RestrictZ2LineToZ) {
    auto z2 = Group::free_abelian(2);
    Neighborhood n({GroupElement::point(z2, {0, 0}), GroupElement::point(z2, {1, 0})});
    LocalRule r(B2, n, {0, 1, 1, 0});
    auto res = restrict_rule(r);
    EXPECT_TRUE(res.changed);
    EXPECT_EQ(res.group.spec(), "Z");
    EXPECT_TRUE(same_global_map(res.rule, xor_rule()));
}

TEST(Ca, RestrictF2PowersOfAToZ) {
    auto f2 = Group::free_group(2);
    Neighborhood n({GroupElement::identity(f2), GroupElement::parse(f2, "a")});
    LocalRule r(B2, n, {0, 1, 1, 0});
    auto res = restrict_rule(r);
    EXPECT_TRUE(res.changed);
    EXPECT_EQ(res.group.spec(), "Z");
    EXPECT_TRUE(same_global_map(res.rule, xor_rule()));
}

TEST(Ca, RestrictFullGroupUnchanged) {
    auto res = restrict_rule(xor_rule());
    EXPECT_FALSE(res.changed);
    auto f2 = Group::free_group(2);
    Neighborhood n({GroupElement::parse(f2, "a"), GroupElement::parse(f2, "b")});
    LocalRule r(B2, n, {0, 1, 1, 0});
    EXPECT_FALSE(restrict_rule(r).changed);
}

TEST(Ca, RestrictSublatticeIndex2) {
    // neighborhood {0, 2} in Z spans 2Z; restriction renames 2 -> 1
    LocalRule r(B2, Neighborhood({zp(0), zp(2)}), {0, 1, 1, 0});
    auto res = restrict_rule(r);
    EXPECT_TRUE(res.changed);
    EXPECT_TRUE(same_global_map(res.rule, xor_rule()));
}

TEST(Ca, RestrictRank2Sublattice) {
    // {(1,1), (2,0)} spans an index-2 sublattice of Z^2; the rule is
    // rewritten in basis coordinates, table unchanged
    auto z2 = Group::free_abelian(2);
    Neighborhood n({GroupElement::point(z2, {0, 0}), GroupElement::point(z2, {1, 1}),
                    GroupElement::point(z2, {2, 0})});
    LocalRule r(B2, n, std::vector<std::uint8_t>{0, 1, 1, 0, 0, 1, 1, 0});
    auto res = restrict_rule(r);
    EXPECT_TRUE(res.changed);
    EXPECT_EQ(res.group.spec(), "Z^2");
    EXPECT_EQ(res.rule.table(), r.table());
    EXPECT_EQ(res.rule.neighborhood().size(), 3u);
    // the rewritten neighbors still span an index-1 lattice in the new basis
    auto again = restrict_rule(res.rule);
    EXPECT_FALSE(again.changed);
}

TEST(Ca, PatternIndexRoundTrip) {
    auto sup = disk(Z, 2).elements;
    for (std::uint64_t i = 0; i < 32; ++i) {
        auto p = Pattern::from_index(sup, i, 2);
        EXPECT_EQ(p.index(2), i);
    }
}

TEST(Ca, PeriodicCanonicalization) {
    auto c = PatchedConfiguration::periodic(B2, {0, 1, 0, 1});
    EXPECT_EQ(std::get<PatchedConfiguration::Periodic1D>(c.background()).word.size(), 2u);
    auto u = PatchedConfiguration::periodic(B2, {1, 1, 1});
    EXPECT_TRUE(std::holds_alternative<PatchedConfiguration::Uniform>(u.background()));
}

TEST(Ca, RuleFileRoundTrip) {
    auto r = xor_rule();
    auto text = serialize_rule(r);
    EXPECT_EQ(parse_rule(text), r);
    EXPECT_EQ(serialize_rule(parse_rule(text)), text);

    std::string wolfram_text =
        "cago-rule v1\ngroup Z\nalphabet 2\nneighborhood (-1) (0) (1)\nwolfram 102\n";
    auto w = parse_rule(wolfram_text);
    EXPECT_TRUE(same_global_map(w, r));

    auto f2 = Group::free_group(2);
    std::vector<std::uint8_t> table(32);
    for (int i = 0; i < 32; ++i) table[i] = __builtin_popcount(i) >= 3;
    LocalRule maj(B2, Neighborhood(disk(f2, 1).elements), table);
    EXPECT_EQ(parse_rule(serialize_rule(maj)), maj);
}

TEST(Ca, RuleFileErrors) {
    EXPECT_THROW(parse_rule(""), ParseError);
    EXPECT_THROW(parse_rule("cago-rule v1\ngroup Z\nalphabet 2\n"), ParseError);
    EXPECT_THROW(parse_rule("cago-rule v1\ngroup Z\nalphabet 2\nneighborhood (0)\ntable 9 9\n"),
                 ParseError);
}

TEST(Ca, PatternLiteralRoundTrip) {
    auto f2 = Group::free_group(2);
    auto p = Pattern::make({GroupElement::identity(f2), GroupElement::parse(f2, "aB")}, {1, 0});
    auto s = pattern_to_string(p);
    EXPECT_EQ(parse_pattern(f2, B2, s), p);
    auto z2 = Group::free_abelian(2);
    auto q = Pattern::make({GroupElement::point(z2, {0, 0}), GroupElement::point(z2, {1, -1})},
                           {0, 1});
    EXPECT_EQ(parse_pattern(z2, B2, pattern_to_string(q)), q);
}
