#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cago/ca.hpp"
#include "cago/errors.hpp"
#include "cago/group.hpp"
#include "cago/symbolic1d.hpp"

// Bounded-window probes over any supported group. Searches never claim a
// universal verdict beyond their bound unless an exact oracle (Z) or an exact
// check (table composition) upgrades them; every upgrade is recorded in the
// result note. Candidates are enumerated in length-lexicographic pattern
// order and the first witness is returned.

namespace cago {

enum class ProbeStatus { yes, no, unknown };

inline const char* to_string(ProbeStatus s) {
    switch (s) {
        case ProbeStatus::yes: return "yes";
        case ProbeStatus::no: return "no";
        default: return "unknown";
    }
}

struct ProbeOptions {
    std::uint8_t base_state = 0;  // the uniform configuration fixed by the patching argument
    int witness_radius = 1;       // diff radius of the patched witness set
    int n_max = 4;                // correction-radius bound
    int erasable_m_max = 2;
    int patch_radius_max = 5;  // escalation bound for the preimage patch search
    std::uint64_t sample_seed = 1;
    int sample_count = 32;
};

struct PreimageCount {
    Pattern pattern;
    std::vector<GroupElement> window;
    std::uint64_t count = 0;
    std::uint64_t expected = 0;
};

// Exact number of q : M -> S with q ->_f p, by exhaustive enumeration.
inline PreimageCount count_preimages(const LocalRule& rule, const Pattern& p,
                                     const std::vector<GroupElement>& window,
                                     const Caps& caps = {}) {
    const int s = rule.alphabet().size;
    std::vector<GroupElement> M = window;
    std::sort(M.begin(), M.end(), LengthLexLess{});
    std::uint64_t cand = checked_pow(s, M.size(), caps.enumeration, "preimage count");
    std::uint64_t images = checked_pow(s, p.size(), std::uint64_t{1} << 62, "preimage count");
    ApplyPlan plan(rule, M, p.support());
    std::uint64_t count = 0;
    std::vector<std::uint8_t> q(M.size(), 0);
    do {
        bool hit = true;
        for (size_t t = 0; hit && t < p.size(); ++t)
            hit = plan.eval(t, q.data()) == p.values()[t];
        if (hit) ++count;
    } while (next_assignment(q, s));
    return {p, M, count, cand / images};
}

struct BalanceProbeResult {
    ProbeStatus status = ProbeStatus::unknown;
    int n_max = 0;  // bound the confirmation ran to
    std::optional<PreimageCount> deviation;
};

// Disk form of the balance property: every pattern on D_n must have exactly
// |S|^{|D_{n+r}|-|D_n|} preimages on D_{n+r}. Confirmation is bounded (status
// yes means: verified up to n_max); a deviation is an exact No certificate.
inline BalanceProbeResult check_balanced(const LocalRule& rule, int n_max, const Caps& caps = {}) {
    const int s = rule.alphabet().size;
    const int r = rule.radius();
    const Group& g = rule.group();
    for (int n = 0; n <= n_max; ++n) {
        auto E = disk(g, n, caps).elements;
        auto M = disk(g, n + r, caps).elements;
        std::uint64_t cand = checked_pow(s, M.size(), caps.enumeration, "balance check");
        std::uint64_t images = checked_pow(s, E.size(), caps.enumeration, "balance check");
        std::uint64_t expected = cand / images;
        ApplyPlan plan(rule, M, E);
        std::vector<std::uint64_t> hist(images, 0);
        std::vector<std::uint8_t> q(M.size(), 0);
        do {
            std::uint64_t img = 0;
            for (size_t t = 0; t < E.size(); ++t) img = img * s + plan.eval(t, q.data());
            ++hist[img];
        } while (next_assignment(q, s));
        for (std::uint64_t img = 0; img < images; ++img) {
            if (hist[img] == expected) continue;
            return {ProbeStatus::no, n,
                    PreimageCount{Pattern::from_index(E, img, s), M, hist[img], expected}};
        }
    }
    return {ProbeStatus::yes, n_max, std::nullopt};
}

// Exact finite check of mutual erasability: for every cell whose neighborhood
// meets the difference set, the rule output must not distinguish the two
// patterns under any completion of window cells outside the support.
inline bool verify_mutually_erasable(const LocalRule& rule, const Pattern& p1, const Pattern& p2,
                                     const Caps& caps = {}) {
    if (!(p1.support() == p2.support()) || p1 == p2) return false;
    const int s = rule.alphabet().size;
    const size_t m = rule.neighborhood().size();

    std::vector<GroupElement> diff_cells;
    for (size_t i = 0; i < p1.size(); ++i)
        if (p1.values()[i] != p2.values()[i]) diff_cells.push_back(p1.support()[i]);

    std::vector<GroupElement> affected;
    for (const auto& d : diff_cells)
        for (size_t j = 0; j < m; ++j) affected.push_back(d * rule.neighborhood().at(j).inverse());
    std::sort(affected.begin(), affected.end(), LengthLexLess{});
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

    std::vector<std::uint8_t> a1(m), a2(m);
    for (const auto& x : affected) {
        std::vector<size_t> free_pos;
        std::vector<std::optional<size_t>> idx(m);
        for (size_t j = 0; j < m; ++j) {
            idx[j] = p1.find(x * rule.neighborhood().at(j));
            if (!idx[j]) free_pos.push_back(j);
        }
        std::uint64_t combos =
            checked_pow(s, free_pos.size(), caps.enumeration, "erasability boundary");
        std::vector<std::uint8_t> fill(free_pos.size(), 0);
        for (std::uint64_t c = 0; c < combos; ++c) {
            for (size_t j = 0; j < m; ++j) {
                if (idx[j]) {
                    a1[j] = p1.values()[*idx[j]];
                    a2[j] = p2.values()[*idx[j]];
                }
            }
            for (size_t fj = 0; fj < free_pos.size(); ++fj) a1[free_pos[fj]] = a2[free_pos[fj]] = fill[fj];
            if (rule.apply(a1) != rule.apply(a2)) return false;
            next_assignment(fill, s);
        }
    }
    return true;
}

struct ErasableProbeResult {
    ProbeStatus status = ProbeStatus::unknown;
    std::optional<std::pair<Pattern, Pattern>> pair;
    int m_found = -1;
    int bound = 0;
    std::string note;
};

// Search for two mutually erasable patterns on D_{m+2R} agreeing outside D_m,
// the shape produced by a pre-injectivity failure with difference set in D_m.
// For such pairs every affected cell has its whole neighborhood inside
// D_{m+2R}, so erasability reduces to image equality on D_{m+R}. On Z an
// exhausted bound is settled exactly by the pair-graph oracle.
inline ErasableProbeResult find_mutually_erasable(const LocalRule& rule, int m_max,
                                                  const Caps& caps = {}) {
    const int s = rule.alphabet().size;
    const int R = rule.radius();
    const Group& g = rule.group();

    for (int m = 0; m <= m_max; ++m) {
        auto A = disk(g, m + 2 * R, caps).elements;
        size_t inner = disk(g, m, caps).elements.size();  // prefix of A in length-lex order
        auto targets = disk(g, m + R, caps).elements;
        ApplyPlan plan(rule, A, targets);

        std::uint64_t inner_count = checked_pow(s, inner, caps.enumeration, "erasable search");
        std::uint64_t outer_count =
            checked_pow(s, A.size() - inner, caps.enumeration, "erasable search");
        checked_pow(s, A.size(), caps.enumeration, "erasable search");

        std::vector<std::uint8_t> digits(A.size(), 0);
        std::vector<std::uint8_t> image1(targets.size());
        for (std::uint64_t i1 = 0; i1 < inner_count; ++i1) {
            std::uint64_t rem = i1;
            for (size_t i = inner; i-- > 0;) {
                digits[i] = static_cast<std::uint8_t>(rem % s);
                rem /= s;
            }
            std::fill(digits.begin() + inner, digits.end(), 0);
            for (std::uint64_t o = 0; o < outer_count; ++o) {
                for (size_t t = 0; t < targets.size(); ++t) image1[t] = plan.eval(t, digits.data());
                std::vector<std::uint8_t> alt(digits);
                for (std::uint64_t i2 = i1 + 1; i2 < inner_count; ++i2) {
                    std::uint64_t rem2 = i2;
                    for (size_t i = inner; i-- > 0;) {
                        alt[i] = static_cast<std::uint8_t>(rem2 % s);
                        rem2 /= s;
                    }
                    bool equal = true;
                    for (size_t t = 0; equal && t < targets.size(); ++t)
                        equal = plan.eval(t, alt.data()) == image1[t];
                    if (equal) {
                        auto p1 = Pattern::make(A, digits);
                        auto p2 = Pattern::make(A, alt);
                        if (!verify_mutually_erasable(rule, p1, p2, caps))
                            throw InternalError("erasable pair failed its own verification");
                        return {ProbeStatus::yes, std::make_pair(p1, p2), m, m_max, ""};
                    }
                }
                // advance the outer digits
                for (size_t i = digits.size(); i-- > inner;) {
                    if (++digits[i] < s) break;
                    digits[i] = 0;
                }
            }
        }
    }

    if (rule.group() == Group::free_abelian(1)) {
        auto oracle = decide_preinjective(rule, caps);
        if (oracle.preinjective)
            return {ProbeStatus::no, std::nullopt, -1, m_max,
                    "exact: 1d pair-graph oracle shows pre-injectivity"};
        // the oracle found a pair beyond the bounded search; return it as
        // patterns on an interval
        Group z = Group::free_abelian(1);
        std::vector<GroupElement> support;
        for (size_t i = 0; i < oracle.word_u.size(); ++i)
            support.push_back(GroupElement::point(z, {static_cast<std::int32_t>(i)}));
        auto p1 = Pattern::make(support, oracle.word_u);
        auto p2 = Pattern::make(support, oracle.word_v);
        if (!verify_mutually_erasable(rule, p1, p2, caps))
            throw InternalError("oracle erasable pair failed verification");
        return {ProbeStatus::yes, std::make_pair(p1, p2), -1, m_max,
                "pair from the exact 1d oracle (beyond the bounded search)"};
    }
    return {ProbeStatus::unknown, std::nullopt, -1, m_max, "bound exhausted; group not Z"};
}

struct PostSurjInstance {
    PatchedConfiguration witness_e;
    PatchedConfiguration changed_image;           // c' = F(e) flipped at the identity
    int corrected_n = -1;                         // smallest N with a correction, or -1
    std::optional<PatchedConfiguration> corrected_e;
};

struct PostSurjProbeResult {
    ProbeStatus status = ProbeStatus::unknown;
    int estimated_n = -1;  // smallest N that covered every tested instance
    int bound = 0;
    std::vector<PostSurjInstance> instances;
    std::optional<size_t> failing_instance;
    std::string note;
};

// For each witness e and each single-site change c' of c = F(e) at the
// identity, search a preimage e' of c' with diff(e, e') inside D_N for
// ascending N. On Z the final verdict is the exact reversibility oracle; the
// probe data estimates the correction radius.
inline PostSurjProbeResult post_surjectivity_probe(const LocalRule& rule,
                                                   const ProbeOptions& opts = {},
                                                   const Caps& caps = {}) {
    const int s = rule.alphabet().size;
    const Group& g = rule.group();
    const GroupElement id = GroupElement::identity(g);
    PostSurjProbeResult out;
    out.bound = opts.n_max;

    std::vector<PatchedConfiguration> witnesses;
    auto wdisk = disk(g, opts.witness_radius, caps).elements;
    std::uint64_t patches = checked_pow(s, wdisk.size(), caps.enumeration, "witness set");
    for (int b = 0; b < s; ++b) {
        auto base = PatchedConfiguration::uniform(g, rule.alphabet(), static_cast<std::uint8_t>(b));
        for (std::uint64_t q = 0; q < patches; ++q) {
            auto e = base.overridden(Pattern::from_index(wdisk, q, s));
            if (std::find(witnesses.begin(), witnesses.end(), e) == witnesses.end())
                witnesses.push_back(e);
        }
    }

    for (const auto& e : witnesses) {
        auto c = apply_global(rule, e);
        for (int t = 0; t < s; ++t) {
            if (t == c.at(id)) continue;
            auto cprime = c.with_value(id, static_cast<std::uint8_t>(t));
            PostSurjInstance inst{e, cprime, -1, std::nullopt};
            for (int N = 0; N <= opts.n_max && inst.corrected_n < 0; ++N) {
                auto Dn = disk(g, N, caps).elements;
                std::uint64_t cand = checked_pow(s, Dn.size(), caps.enumeration, "correction search");
                for (std::uint64_t q = 0; q < cand; ++q) {
                    auto eprime = e.overridden(Pattern::from_index(Dn, q, s));
                    if (apply_global(rule, eprime) == cprime) {
                        inst.corrected_n = N;
                        inst.corrected_e = eprime;
                        break;
                    }
                }
            }
            if (inst.corrected_n < 0 && !out.failing_instance)
                out.failing_instance = out.instances.size();
            out.estimated_n = std::max(out.estimated_n, inst.corrected_n);
            out.instances.push_back(std::move(inst));
        }
    }

    if (g == Group::free_abelian(1)) {
        auto oracle = decide_postsurjective_1d(rule, caps);
        out.status = oracle.post_surjective ? ProbeStatus::yes : ProbeStatus::no;
        out.note = "exact: " + oracle.upgrade;
        if (oracle.post_surjective && out.failing_instance)
            throw InternalError("oracle says post-surjective but an instance failed the bound");
    } else {
        out.status = ProbeStatus::unknown;
        out.note = out.failing_instance
                       ? "negative evidence: an instance admits no correction within the bound"
                       : "positive evidence only; post-surjectivity is universally quantified";
    }
    return out;
}

struct InverseSynthesisResult {
    ProbeStatus status = ProbeStatus::unknown;
    std::optional<LocalRule> inverse;
    std::string abort_reason;
    int estimated_n = -1;
    int patch_radius_used = -1;
    // two distinct preimages found during patching (pre-injectivity failure)
    std::optional<std::pair<PatchedConfiguration, PatchedConfiguration>> nonunique;
};

// Inverse synthesis by patching: fix a uniform u and v = F(u); for every
// pattern p on D_{N+R}, paste p into v at the identity, find the unique
// preimage asymptotic to u, and read the inverse's output at the identity.
// The candidate is then verified exactly: both compositions with the rule
// must equal the identity rule, on any group.
inline InverseSynthesisResult synthesize_inverse_patch(const LocalRule& rule,
                                                       const ProbeOptions& opts = {},
                                                       const Caps& caps = {}) {
    InverseSynthesisResult out;
    auto erasable = find_mutually_erasable(rule, opts.erasable_m_max, caps);
    if (erasable.status == ProbeStatus::yes) {
        out.status = ProbeStatus::no;
        out.abort_reason = "pre-injectivity prerequisite fails: mutually erasable patterns exist";
        return out;
    }

    auto post = post_surjectivity_probe(rule, opts, caps);
    if (post.status == ProbeStatus::no || post.failing_instance) {
        out.status = ProbeStatus::no;
        out.abort_reason = "post-surjectivity prerequisite fails";
        return out;
    }
    out.estimated_n = post.estimated_n;

    const int s = rule.alphabet().size;
    const Group& g = rule.group();
    const GroupElement id = GroupElement::identity(g);
    const int R = rule.radius();
    auto Ninv = disk(g, post.estimated_n + R, caps).elements;  // = M^-1, disks are symmetric

    auto u = PatchedConfiguration::uniform(g, rule.alphabet(), opts.base_state);
    auto v = apply_global(rule, u);

    std::uint64_t pat_count = checked_pow(s, Ninv.size(), caps.enumeration, "inverse patch table");
    std::vector<std::uint8_t> h(pat_count, 0);
    for (std::uint64_t pi = 0; pi < pat_count; ++pi) {
        auto y = v.overridden(Pattern::from_index(Ninv, pi, s));
        std::optional<PatchedConfiguration> found;
        bool solved = false;
        for (int rad = 0; rad <= opts.patch_radius_max && !solved; ++rad) {
            auto Dr = disk(g, rad, caps).elements;
            std::uint64_t cand = checked_pow(s, Dr.size(), caps.enumeration, "preimage patch");
            for (std::uint64_t q = 0; q < cand; ++q) {
                auto x = u.overridden(Pattern::from_index(Dr, q, s));
                if (!(apply_global(rule, x) == y)) continue;
                if (found && !(*found == x)) {
                    out.status = ProbeStatus::no;
                    out.abort_reason = "non-unique preimage: pre-injectivity failure";
                    out.nonunique = std::make_pair(*found, x);
                    return out;
                }
                if (!found) found = x;
            }
            if (found) {
                h[pi] = found->at(id);
                out.patch_radius_used = std::max(out.patch_radius_used, rad);
                solved = true;
            }
        }
        if (!solved) {
            out.status = ProbeStatus::unknown;
            out.abort_reason = "no preimage found within the patch radius bound";
            return out;
        }
    }

    LocalRule inverse(rule.alphabet(), Neighborhood(Ninv), std::move(h));
    auto identity = LocalRule::identity(g, rule.alphabet());
    if (!same_global_map(compose(inverse, rule), identity) ||
        !same_global_map(compose(rule, inverse), identity)) {
        out.status = ProbeStatus::unknown;
        out.abort_reason = "candidate inverse failed the exact composition check";
        return out;
    }

    // sampled round-trips on patched configurations
    std::mt19937_64 rng(opts.sample_seed);
    auto d2 = disk(g, 2, caps).elements;
    for (int i = 0; i < opts.sample_count; ++i) {
        auto c = PatchedConfiguration::uniform(g, rule.alphabet(),
                                               static_cast<std::uint8_t>(rng() % s));
        int flips = static_cast<int>(rng() % 4);
        for (int f = 0; f < flips; ++f)
            c = c.with_value(d2[rng() % d2.size()], static_cast<std::uint8_t>(rng() % s));
        if (!(apply_global(inverse, apply_global(rule, c)) == c) ||
            !(apply_global(rule, apply_global(inverse, c)) == c))
            throw InternalError("inverse failed a sampled round-trip after exact checks");
    }

    out.status = ProbeStatus::yes;
    out.inverse = std::move(inverse);
    return out;
}

struct BijectionReport {
    std::uint64_t q1_size = 0;
    std::uint64_t q2_size = 0;
    std::uint64_t expected = 0;  // |S|^{|D_{n+r}| - |D_n|}
    bool roundtrip_identity = false;
    bool bijection = false;
    int n = 0;
    int r = 0;
};

// The balancedness bijection between preimage sets: extend q1 by the fixed
// state, apply F, splice p2 into D_n, apply the inverse, restrict to D_{n+r}.
// Checks T21 o T12 = id on Q1 and |Q1| = |Q2|.
inline BijectionReport balancedness_bijection(const LocalRule& rule, const LocalRule& inverse,
                                              const Pattern& p1, const Pattern& p2,
                                              std::uint8_t fixed_state = 0, const Caps& caps = {}) {
    const Group& g = rule.group();
    const int s = rule.alphabet().size;
    const int r = std::max(rule.radius(), inverse.radius());

    auto identity = LocalRule::identity(g, rule.alphabet());
    if (!same_global_map(compose(inverse, rule), identity) ||
        !same_global_map(compose(rule, inverse), identity))
        throw Error(Diag::parse, "balancedness_bijection: inverse fails the round-trip check");

    int n = 0;
    for (const auto& e : p1.support()) n = std::max(n, e.word_length());
    auto Dn = disk(g, n, caps).elements;
    if (!(p1.support() == Dn) || !(p2.support() == Dn))
        throw Error(Diag::parse, "patterns must live on a full disk D_n");
    if (n < r) throw Error(Diag::parse, "need n >= r so D_r covers both neighborhoods");

    auto Dnr = disk(g, n + r, caps).elements;
    std::uint64_t cand = checked_pow(s, Dnr.size(), caps.enumeration, "bijection preimages");

    auto preimages = [&](const Pattern& p) {
        std::vector<std::uint64_t> out;
        ApplyPlan plan(rule, Dnr, Dn);
        std::vector<std::uint8_t> q(Dnr.size(), 0);
        std::uint64_t qi = 0;
        do {
            bool hit = true;
            for (size_t t = 0; hit && t < Dn.size(); ++t)
                hit = plan.eval(t, q.data()) == p.values()[t];
            if (hit) out.push_back(qi);
            ++qi;
        } while (next_assignment(q, s));
        return out;
    };

    auto Q1 = preimages(p1);
    auto Q2 = preimages(p2);
    std::set<std::uint64_t> q2_set(Q2.begin(), Q2.end());

    auto transport = [&](std::uint64_t qidx, const Pattern& target) {
        auto q = Pattern::from_index(Dnr, qidx, s);
        auto e1 = PatchedConfiguration::uniform(g, rule.alphabet(), fixed_state).overridden(q);
        auto c1 = apply_global(rule, e1);
        auto c2 = c1.overridden(target);
        auto e2 = apply_global(inverse, c2);
        return e2.restricted(Dnr).index(s);
    };

    BijectionReport rep;
    rep.n = n;
    rep.r = r;
    rep.q1_size = Q1.size();
    rep.q2_size = Q2.size();
    rep.expected = cand / checked_pow(s, Dn.size(), caps.enumeration, "bijection preimages");
    rep.roundtrip_identity = true;
    std::set<std::uint64_t> image;
    for (auto q1 : Q1) {
        std::uint64_t q2 = transport(q1, p2);
        if (!q2_set.count(q2)) {
            rep.roundtrip_identity = false;
            break;
        }
        image.insert(q2);
        if (transport(q2, p1) != q1) {
            rep.roundtrip_identity = false;
            break;
        }
    }
    rep.bijection =
        rep.roundtrip_identity && image.size() == Q1.size() && Q1.size() == Q2.size();
    return rep;
}

}  // namespace cago
