#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cago/ca.hpp"
#include "cago/errors.hpp"
#include "cago/group.hpp"

// Exact decision procedures for CA over Z, built on the de Bruijn graph of the
// rule: nodes are state words of length w-1, the edge for (u, a) appends a and
// is labeled by the rule output on the window u.a. Bi-infinite label sequences
// of bi-infinite paths are exactly the images of the global map. All verdicts
// come with machine-checkable certificates.

namespace cago {

// Rule normalized to the contiguous window {0..width-1}; the original map is
// recovered by translating images back by `offset` (the smallest neighbor).
// Verdicts are shift-invariant, so decisions run on the normalized form;
// synthesized inverses get the offset reapplied.
struct Window1D {
    int s = 2;
    int width = 1;
    std::int64_t offset = 0;
    std::vector<std::uint8_t> table;  // s^width entries, leftmost cell most significant

    std::uint64_t nodes() const {
        std::uint64_t n = 1;
        for (int i = 0; i + 1 < width; ++i) n *= s;
        return n;
    }
};

inline Window1D normalize_1d(const LocalRule& rule, const Caps& caps = {}) {
    if (!(rule.group() == Group::free_abelian(1)))
        throw GroupMismatchError("1d decision procedures need a rule over Z");
    const size_t m = rule.neighborhood().size();
    std::int64_t lo = rule.neighborhood().at(0).data()[0], hi = lo;
    for (size_t j = 1; j < m; ++j) {
        std::int64_t o = rule.neighborhood().at(j).data()[0];
        lo = std::min(lo, o);
        hi = std::max(hi, o);
    }
    Window1D w;
    w.s = rule.alphabet().size;
    w.width = static_cast<int>(hi - lo + 1);
    w.offset = lo;
    std::uint64_t n = checked_pow(w.s, w.width, caps.enumeration, "1d window table");
    w.table.resize(n);
    std::vector<std::uint8_t> window(w.width, 0), args(m);
    std::uint64_t idx = 0;
    do {
        for (size_t j = 0; j < m; ++j)
            args[j] = window[rule.neighborhood().at(j).data()[0] - lo];
        w.table[idx++] = rule.apply(args);
    } while (next_assignment(window, w.s));
    return w;
}

namespace detail {

struct BitsetHash {
    size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

inline std::vector<std::uint8_t> node_word(std::uint64_t node, int len, int s) {
    std::vector<std::uint8_t> w(len);
    for (int i = len; i-- > 0;) {
        w[i] = static_cast<std::uint8_t>(node % s);
        node /= s;
    }
    return w;
}

}  // namespace detail

struct SurjectivityResult {
    bool surjective = false;
    std::vector<std::uint8_t> orphan;  // shortest word with no preimage, when not surjective
    std::uint64_t subsets_explored = 0;
};

// Subset construction over the de Bruijn graph starting from the full node
// set; an output word is reachable iff it labels some path, and the shortest
// word reaching the empty set is the shortest orphan.
inline SurjectivityResult decide_surjective(const LocalRule& rule, const Caps& caps = {}) {
    Window1D w = normalize_1d(rule, caps);
    const int s = w.s;
    const std::uint64_t nodes = w.nodes();
    check_cap(nodes, caps.subset_states, "de Bruijn node count");
    const size_t words = static_cast<size_t>((nodes + 63) / 64);

    std::vector<std::uint64_t> full(words, 0);
    for (std::uint64_t u = 0; u < nodes; ++u) full[u / 64] |= std::uint64_t{1} << (u % 64);

    std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, detail::BitsetHash> seen;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> parent;  // (state id, symbol)
    std::deque<std::vector<std::uint64_t>> queue;
    seen.emplace(full, 0);
    parent.push_back({0, 0});
    queue.push_back(full);

    while (!queue.empty()) {
        auto q = queue.front();
        queue.pop_front();
        std::uint32_t qid = seen.at(q);
        for (int b = 0; b < s; ++b) {
            std::vector<std::uint64_t> next(words, 0);
            bool empty = true;
            for (std::uint64_t u = 0; u < nodes; ++u) {
                if (!(q[u / 64] >> (u % 64) & 1)) continue;
                for (int a = 0; a < s; ++a) {
                    if (w.table[u * s + a] != b) continue;
                    std::uint64_t v = (u * s + a) % nodes;
                    next[v / 64] |= std::uint64_t{1} << (v % 64);
                    empty = false;
                }
            }
            if (empty) {
                // reconstruct the orphan: path symbols plus this failing symbol
                std::vector<std::uint8_t> orphan{static_cast<std::uint8_t>(b)};
                std::uint32_t at = qid;
                while (at != 0) {
                    orphan.push_back(parent[at].second);
                    at = parent[at].first;
                }
                std::reverse(orphan.begin(), orphan.end());
                return {false, std::move(orphan), seen.size()};
            }
            if (!seen.count(next)) {
                std::uint32_t nid = static_cast<std::uint32_t>(parent.size());
                check_cap(nid, caps.subset_states, "subset construction states");
                seen.emplace(next, nid);
                parent.push_back({qid, static_cast<std::uint8_t>(b)});
                queue.push_back(std::move(next));
            }
        }
    }
    return {true, {}, seen.size()};
}

struct PreinjectivityResult {
    bool preinjective = false;
    // when not pre-injective: a mutually erasable word pair, same length,
    // sharing their first and last width-1 symbols, with equal images
    std::vector<std::uint8_t> word_u, word_v;
};

// Pair-graph search: a path of equal-label edge pairs from a shared node back
// to a shared node, with some step writing different symbols, is exactly a
// pair of distinct asymptotic configurations with equal images.
inline PreinjectivityResult decide_preinjective(const LocalRule& rule, const Caps& caps = {}) {
    Window1D w = normalize_1d(rule, caps);
    const int s = w.s;
    const std::uint64_t nodes = w.nodes();
    check_cap(nodes * nodes * 2, caps.subset_states, "pair graph");

    const std::uint64_t nstates = nodes * nodes * 2;
    std::vector<std::int64_t> parent(nstates, -1);
    std::vector<std::pair<std::uint8_t, std::uint8_t>> via(nstates);
    std::vector<char> visited(nstates, 0);
    std::deque<std::uint64_t> queue;

    auto encode = [&](std::uint64_t p, std::uint64_t q, bool touched) {
        return (p * nodes + q) * 2 + (touched ? 1 : 0);
    };

    for (std::uint64_t d = 0; d < nodes; ++d) {
        std::uint64_t st = encode(d, d, false);
        visited[st] = 1;
        parent[st] = -static_cast<std::int64_t>(d) - 1;  // root marker, remembers start node
        queue.push_back(st);
    }
    while (!queue.empty()) {
        std::uint64_t st = queue.front();
        queue.pop_front();
        bool touched = st & 1;
        std::uint64_t pq = st / 2;
        std::uint64_t p = pq / nodes, q = pq % nodes;
        for (int a = 0; a < s; ++a) {
            for (int b = 0; b < s; ++b) {
                if (w.table[p * s + a] != w.table[q * s + b]) continue;
                std::uint64_t p2 = (p * s + a) % nodes;
                std::uint64_t q2 = (q * s + b) % nodes;
                bool t2 = touched || a != b;
                std::uint64_t st2 = encode(p2, q2, t2);
                if (visited[st2]) continue;
                visited[st2] = 1;
                parent[st2] = static_cast<std::int64_t>(st);
                via[st2] = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)};
                if (p2 == q2 && t2) {
                    std::vector<std::uint8_t> u, v;
                    std::uint64_t at = st2;
                    while (parent[at] >= 0) {
                        u.push_back(via[at].first);
                        v.push_back(via[at].second);
                        at = static_cast<std::uint64_t>(parent[at]);
                    }
                    std::reverse(u.begin(), u.end());
                    std::reverse(v.begin(), v.end());
                    std::uint64_t root = static_cast<std::uint64_t>(-parent[at] - 1);
                    auto prefix = detail::node_word(root, w.width - 1, s);
                    u.insert(u.begin(), prefix.begin(), prefix.end());
                    v.insert(v.begin(), prefix.begin(), prefix.end());
                    return {false, std::move(u), std::move(v)};
                }
                queue.push_back(st2);
            }
        }
    }
    return {true, {}, {}};
}

struct ReversibilityResult {
    bool reversible = false;
    std::optional<LocalRule> inverse;
    // when not reversible: two distinct periodic configurations, equal images
    std::vector<std::uint8_t> periodic_u, periodic_v;
};

namespace detail {

// Exact inverse synthesis for a reversible normalized rule: find the smallest
// window (width W at alignment A) on which the image determines the center
// cell, by exhausting all generating words. Well-definedness of the extracted
// table is equivalent to H(F(c)) = c for the candidate H.
inline std::optional<LocalRule> synthesize_inverse_1d(const LocalRule& rule, const Window1D& w,
                                                      const Caps& caps, int max_width = 14) {
    const int s = w.s;
    for (int W = 1; W <= max_width; ++W) {
        std::uint64_t gen_count;
        try {
            gen_count = checked_pow(s, W + w.width - 1, caps.enumeration, "inverse synthesis");
        } catch (const CapExceededError&) {
            break;
        }
        std::uint64_t table_size = 1;
        for (int i = 0; i < W; ++i) table_size *= s;
        for (int negA = 0; negA <= W + w.width - 2; ++negA) {
            std::vector<std::int16_t> h(table_size, -1);
            bool ok = true;
            std::vector<std::uint8_t> x(W + w.width - 1, 0);
            for (std::uint64_t xi = 0; ok && xi < gen_count; ++xi) {
                std::uint64_t rem = xi;
                for (size_t i = x.size(); i-- > 0;) {
                    x[i] = static_cast<std::uint8_t>(rem % s);
                    rem /= s;
                }
                std::uint64_t y = 0;
                for (int t = 0; t < W; ++t) {
                    std::uint64_t win = 0;
                    for (int j = 0; j < w.width; ++j) win = win * s + x[t + j];
                    y = y * s + w.table[win];
                }
                std::uint8_t center = x[negA];
                if (h[y] < 0)
                    h[y] = center;
                else if (h[y] != center)
                    ok = false;
            }
            if (!ok) continue;
            for (auto v : h)
                if (v < 0) throw InternalError("inverse synthesis: unreached image window");
            std::vector<GroupElement> neigh;
            Group z = Group::free_abelian(1);
            for (int t = 0; t < W; ++t)
                neigh.push_back(GroupElement::point(
                    z, {static_cast<std::int32_t>(-negA + t - w.offset)}));
            std::vector<std::uint8_t> ht(h.begin(), h.end());
            return LocalRule(rule.alphabet(), Neighborhood(std::move(neigh)), std::move(ht));
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Reversibility over Z decided as injectivity on periodic configurations: the
// global map identifies two distinct periodic configurations iff the
// equal-label pair graph has a cycle writing two different symbols somewhere.
inline ReversibilityResult decide_reversible(const LocalRule& rule, const Caps& caps = {}) {
    Window1D w = normalize_1d(rule, caps);
    const int s = w.s;
    const std::uint64_t nodes = w.nodes();
    check_cap(nodes * nodes, caps.subset_states, "pair graph");
    const std::uint64_t np = nodes * nodes;

    // adjacency of the equal-label pair graph
    std::vector<std::vector<std::uint32_t>> adj(np);
    for (std::uint64_t p = 0; p < nodes; ++p)
        for (std::uint64_t q = 0; q < nodes; ++q)
            for (int a = 0; a < s; ++a)
                for (int b = 0; b < s; ++b) {
                    if (w.table[p * s + a] != w.table[q * s + b]) continue;
                    std::uint64_t p2 = (p * s + a) % nodes, q2 = (q * s + b) % nodes;
                    adj[p * nodes + q].push_back(static_cast<std::uint32_t>(p2 * nodes + q2));
                }

    // reachability closure per node pair is affordable at these sizes; find an
    // a!=b edge lying on a cycle (target reaches source)
    auto reaches = [&](std::uint32_t from, std::uint32_t to) {
        std::vector<char> vis(np, 0);
        std::deque<std::uint32_t> dq{from};
        vis[from] = 1;
        while (!dq.empty()) {
            auto x = dq.front();
            dq.pop_front();
            if (x == to) return true;
            for (auto y : adj[x])
                if (!vis[y]) {
                    vis[y] = 1;
                    dq.push_back(y);
                }
        }
        return false;
    };

    for (std::uint64_t p = 0; p < nodes; ++p)
        for (std::uint64_t q = 0; q < nodes; ++q)
            for (int a = 0; a < s; ++a)
                for (int b = 0; b < s; ++b) {
                    if (a == b || w.table[p * s + a] != w.table[q * s + b]) continue;
                    std::uint64_t p2 = (p * s + a) % nodes, q2 = (q * s + b) % nodes;
                    std::uint32_t src = static_cast<std::uint32_t>(p * nodes + q);
                    std::uint32_t dst = static_cast<std::uint32_t>(p2 * nodes + q2);
                    if (!reaches(dst, src)) continue;
                    // shortest path dst -> src plus this edge closes the cycle
                    std::vector<std::int64_t> par(np, -1);
                    std::vector<std::pair<std::uint8_t, std::uint8_t>> via(np);
                    std::deque<std::uint32_t> dq{dst};
                    std::vector<char> vis(np, 0);
                    vis[dst] = 1;
                    while (!dq.empty()) {
                        auto x = dq.front();
                        dq.pop_front();
                        if (x == src) break;
                        std::uint64_t xp = x / nodes, xq = x % nodes;
                        for (int aa = 0; aa < s; ++aa)
                            for (int bb = 0; bb < s; ++bb) {
                                if (w.table[xp * s + aa] != w.table[xq * s + bb]) continue;
                                std::uint32_t y = static_cast<std::uint32_t>(
                                    ((xp * s + aa) % nodes) * nodes + ((xq * s + bb) % nodes));
                                if (vis[y]) continue;
                                vis[y] = 1;
                                par[y] = x;
                                via[y] = {static_cast<std::uint8_t>(aa),
                                          static_cast<std::uint8_t>(bb)};
                                dq.push_back(y);
                            }
                    }
                    std::vector<std::uint8_t> cu{static_cast<std::uint8_t>(a)};
                    std::vector<std::uint8_t> cv{static_cast<std::uint8_t>(b)};
                    std::uint32_t at = src;
                    while (at != dst && par[at] >= 0) {
                        cu.push_back(via[at].first);
                        cv.push_back(via[at].second);
                        at = static_cast<std::uint32_t>(par[at]);
                    }
                    std::reverse(cu.begin() + 1, cu.end());
                    std::reverse(cv.begin() + 1, cv.end());
                    return ReversibilityResult{false, std::nullopt, std::move(cu), std::move(cv)};
                }

    auto inverse = detail::synthesize_inverse_1d(rule, w, caps);
    if (!inverse) throw InternalError("reversible rule but inverse synthesis hit its width cap");
    // exact verification: both compositions are the identity map
    Group z = Group::free_abelian(1);
    if (!same_global_map(compose(*inverse, rule), LocalRule::identity(z, rule.alphabet())) ||
        !same_global_map(compose(rule, *inverse), LocalRule::identity(z, rule.alphabet())))
        throw InternalError("synthesized inverse failed exact composition check");
    return {true, std::move(inverse), {}, {}};
}

inline ReversibilityResult decide_injective_periodic(const LocalRule& rule, const Caps& caps = {}) {
    return decide_reversible(rule, caps);
}

struct PostSurjectivity1DResult {
    bool post_surjective = false;
    ReversibilityResult reversibility;
    // Z is sofic, so post-surjectivity coincides with reversibility
    std::string upgrade = "postsurjective == reversible on Z (sofic equivalence)";
};

inline PostSurjectivity1DResult decide_postsurjective_1d(const LocalRule& rule,
                                                         const Caps& caps = {}) {
    auto rev = decide_reversible(rule, caps);
    return {rev.reversible, std::move(rev)};
}

struct IntervalPreimageCount {
    // counted pattern: on the disk D_n in disk order, or (for an orphan-based
    // witness) on the interval [0..len) in position order
    std::vector<std::uint8_t> pattern_word;
    bool orphan_support = false;
    int n = 0;
    std::uint64_t count = 0;
    std::uint64_t expected = 0;
};

struct Balanced1DResult {
    bool balanced = false;
    int n_checked = -1;
    std::optional<IntervalPreimageCount> deviation;  // populated when a counting witness exists
    SurjectivityResult surjectivity;
};

// Balance over Z coincides with surjectivity (Z is amenable); the verdict is
// decide_surjective's, cross-checked by exhaustive preimage counting on disks
// D_n for n <= n_max. A disagreement between the two routes is a bug and
// throws.
inline Balanced1DResult decide_balanced_1d(const LocalRule& rule, int n_max = 3,
                                           const Caps& caps = {}) {
    auto surj = decide_surjective(rule, caps);
    Balanced1DResult out;
    out.balanced = surj.surjective;
    out.surjectivity = surj;
    const int s = rule.alphabet().size;
    const int r = rule.radius();
    Group z = Group::free_abelian(1);

    for (int n = 0; n <= n_max; ++n) {
        auto E = disk(z, n, caps).elements;
        auto M = disk(z, n + r, caps).elements;
        std::uint64_t cand = checked_pow(s, M.size(), caps.enumeration, "balance counting");
        std::uint64_t images = checked_pow(s, E.size(), caps.enumeration, "balance counting");
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
            auto pat = Pattern::from_index(E, img, s);
            out.deviation = IntervalPreimageCount{pat.values(), false, n, hist[img], expected};
            if (surj.surjective)
                throw InternalError("surjective 1d rule with unbalanced counts: bug");
            out.n_checked = n;
            return out;
        }
        out.n_checked = n;
    }

    if (!surj.surjective && !out.deviation) {
        // certify through the orphan: a pattern with zero preimages
        const auto& orphan = surj.orphan;
        std::int64_t lo = rule.neighborhood().at(0).data()[0], hi = lo;
        for (const auto& e : rule.neighborhood().elements()) {
            lo = std::min<std::int64_t>(lo, e.data()[0]);
            hi = std::max<std::int64_t>(hi, e.data()[0]);
        }
        std::vector<GroupElement> E, M;
        for (size_t i = 0; i < orphan.size(); ++i)
            E.push_back(GroupElement::point(z, {static_cast<std::int32_t>(i)}));
        for (std::int64_t x = lo; x < static_cast<std::int64_t>(orphan.size()) + hi; ++x)
            M.push_back(GroupElement::point(z, {static_cast<std::int32_t>(x)}));
        std::sort(M.begin(), M.end(), LengthLexLess{});
        std::sort(E.begin(), E.end(), LengthLexLess{});
        auto target = Pattern::make(E, orphan);  // sorted jointly
        ApplyPlan plan(rule, M, target.support());
        std::uint64_t count = 0;
        std::uint64_t cand = checked_pow(s, M.size(), caps.enumeration, "orphan recount");
        (void)cand;
        std::vector<std::uint8_t> q(M.size(), 0);
        do {
            bool hit = true;
            for (size_t t = 0; hit && t < target.size(); ++t)
                hit = plan.eval(t, q.data()) == target.values()[t];
            if (hit) ++count;
        } while (next_assignment(q, s));
        if (count != 0) throw InternalError("orphan certificate failed recount");
        std::uint64_t images = checked_pow(s, E.size(), caps.enumeration, "orphan recount");
        std::uint64_t total = checked_pow(s, M.size(), caps.enumeration, "orphan recount");
        out.deviation = IntervalPreimageCount{orphan, true, static_cast<int>(orphan.size()), 0,
                                              total / images};
    }
    return out;
}

// ---------------------------------------------------------------------------
// 1D shifts of finite type

struct SFT1D {
    Alphabet alphabet;
    std::vector<std::vector<std::uint8_t>> forbidden;

    SFT1D(Alphabet a, std::vector<std::vector<std::uint8_t>> f)
        : alphabet(a), forbidden(std::move(f)) {
        for (const auto& w : forbidden) {
            if (w.empty()) throw ParseError("forbidden words must be nonempty");
            for (auto v : w)
                if (v >= alphabet.size) throw ParseError("forbidden word letter out of alphabet");
        }
    }
};

namespace detail {

// Transfer graph of an SFT: nodes are words of length ell-1, edges are clean
// ell-windows, trimmed to the bi-extendable core. Walk words are exactly the
// (globally) admissible words of length >= ell-1.
class SftAutomaton {
public:
    explicit SftAutomaton(const SFT1D& sft, const Caps& caps = {}) : s_(sft.alphabet.size) {
        ell_ = 1;
        for (const auto& w : sft.forbidden) ell_ = std::max(ell_, static_cast<int>(w.size()));
        nodes_ = checked_pow(s_, ell_ - 1, caps.subset_states, "sft node count");
        alive_.assign(nodes_, 1);
        edge_.assign(nodes_ * s_, 0);

        std::vector<std::uint8_t> win(ell_);
        for (std::uint64_t u = 0; u < nodes_; ++u) {
            auto uw = node_word(u, ell_ - 1, s_);
            if (!clean(uw, sft)) alive_[u] = 0;
            for (int a = 0; a < s_; ++a) {
                std::copy(uw.begin(), uw.end(), win.begin());
                win[ell_ - 1] = static_cast<std::uint8_t>(a);
                edge_[u * s_ + a] = clean(win, sft);
            }
        }
        trim();
    }

    int states() const { return s_; }
    int ell() const { return ell_; }
    std::uint64_t nodes() const { return nodes_; }
    bool alive(std::uint64_t u) const { return alive_[u]; }
    bool edge(std::uint64_t u, int a) const {
        return alive_[u] && edge_[u * s_ + a] && alive_[target(u, a)];
    }
    std::uint64_t target(std::uint64_t u, int a) const { return (u * s_ + a) % nodes_; }

    bool any_alive() const {
        return std::any_of(alive_.begin(), alive_.end(), [](char c) { return c != 0; });
    }

    std::vector<std::uint8_t> word_of(std::uint64_t u) const { return node_word(u, ell_ - 1, s_); }

private:
    static bool clean(const std::vector<std::uint8_t>& w, const SFT1D& sft) {
        for (const auto& f : sft.forbidden) {
            if (f.size() > w.size()) continue;
            for (size_t i = 0; i + f.size() <= w.size(); ++i)
                if (std::equal(f.begin(), f.end(), w.begin() + i)) return false;
        }
        return true;
    }

    void trim() {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<char> has_out(nodes_, 0), has_in(nodes_, 0);
            for (std::uint64_t u = 0; u < nodes_; ++u) {
                if (!alive_[u]) continue;
                for (int a = 0; a < s_; ++a) {
                    if (!edge_[u * s_ + a]) continue;
                    std::uint64_t v = target(u, a);
                    if (!alive_[v]) continue;
                    has_out[u] = 1;
                    has_in[v] = 1;
                }
            }
            for (std::uint64_t u = 0; u < nodes_; ++u) {
                if (alive_[u] && (!has_out[u] || !has_in[u])) {
                    alive_[u] = 0;
                    changed = true;
                }
            }
        }
    }

    int s_;
    int ell_;
    std::uint64_t nodes_;
    std::vector<char> alive_;
    std::vector<char> edge_;
};

}  // namespace detail

// Is the word (globally) admissible: does it appear in some configuration?
inline bool sft_word_admissible(const SFT1D& sft, const std::vector<std::uint8_t>& word,
                                const Caps& caps = {}) {
    detail::SftAutomaton aut(sft, caps);
    const int k = aut.ell() - 1;
    if (static_cast<int>(word.size()) < k) {
        for (std::uint64_t u = 0; u < aut.nodes(); ++u) {
            if (!aut.alive(u)) continue;
            auto w = aut.word_of(u);
            for (size_t i = 0; i + word.size() <= w.size(); ++i)
                if (std::equal(word.begin(), word.end(), w.begin() + i)) return true;
        }
        return false;
    }
    std::uint64_t at = 0;
    for (int i = 0; i < k; ++i) at = at * aut.states() + word[i];
    if (!aut.alive(at)) return false;
    for (size_t i = k; i < word.size(); ++i) {
        if (!aut.edge(at, word[i])) return false;
        at = aut.target(at, word[i]);
    }
    return true;
}

// Exact count of admissible words of length n.
inline std::uint64_t sft_language_count(const SFT1D& sft, int n, const Caps& caps = {}) {
    if (n < 0) throw ParseError("word length must be >= 0");
    if (n == 0) return 1;
    if (n > 62) throw CapExceededError("sft_language_count limited to n <= 62");
    detail::SftAutomaton aut(sft, caps);
    if (!aut.any_alive()) return 0;
    const int k = aut.ell() - 1;
    if (n >= k) {
        std::vector<std::uint64_t> ways(aut.nodes(), 0);
        for (std::uint64_t u = 0; u < aut.nodes(); ++u) ways[u] = aut.alive(u) ? 1 : 0;
        for (int step = 0; step < n - k; ++step) {
            std::vector<std::uint64_t> next(aut.nodes(), 0);
            for (std::uint64_t u = 0; u < aut.nodes(); ++u) {
                if (!ways[u]) continue;
                for (int a = 0; a < aut.states(); ++a)
                    if (aut.edge(u, a)) next[aut.target(u, a)] += ways[u];
            }
            ways.swap(next);
        }
        std::uint64_t total = 0;
        for (auto x : ways) total += x;
        return total;
    }
    // short words: distinct n-factors of the alive node words
    std::set<std::vector<std::uint8_t>> words;
    for (std::uint64_t u = 0; u < aut.nodes(); ++u) {
        if (!aut.alive(u)) continue;
        auto w = aut.word_of(u);
        for (size_t i = 0; i + n <= w.size(); ++i)
            words.insert(std::vector<std::uint8_t>(w.begin() + i, w.begin() + i + n));
    }
    return words.size();
}

// Admissible words of length n in lexicographic order.
inline std::vector<std::vector<std::uint8_t>> sft_enumerate(const SFT1D& sft, int n,
                                                            const Caps& caps = {}) {
    if (n < 1) throw ParseError("word length must be >= 1");
    std::uint64_t count = sft_language_count(sft, n, caps);
    check_cap(count, caps.enumeration, "sft_enumerate");
    detail::SftAutomaton aut(sft, caps);
    std::vector<std::vector<std::uint8_t>> out;
    const int k = aut.ell() - 1;
    if (n < k) {
        std::set<std::vector<std::uint8_t>> words;
        for (std::uint64_t u = 0; u < aut.nodes(); ++u) {
            if (!aut.alive(u)) continue;
            auto w = aut.word_of(u);
            for (size_t i = 0; i + n <= w.size(); ++i)
                words.insert(std::vector<std::uint8_t>(w.begin() + i, w.begin() + i + n));
        }
        return {words.begin(), words.end()};
    }
    std::vector<std::uint8_t> word;
    std::function<void(std::uint64_t, int)> walk = [&](std::uint64_t u, int remaining) {
        if (remaining == 0) {
            out.push_back(word);
            return;
        }
        for (int a = 0; a < aut.states(); ++a) {
            if (!aut.edge(u, a)) continue;
            word.push_back(static_cast<std::uint8_t>(a));
            walk(aut.target(u, a), remaining - 1);
            word.pop_back();
        }
    };
    for (std::uint64_t u = 0; u < aut.nodes(); ++u) {
        if (!aut.alive(u)) continue;
        word = aut.word_of(u);
        walk(u, n - k);
    }
    return out;
}

struct StrongIrreducibilityResult {
    std::optional<int> r;  // smallest bridging length <= r_max, or nullopt (Unknown)
    int r_max = 0;
};

// Smallest r <= r_max such that any two admissible words bridge with a word of
// length exactly r. Right/left extension behavior of a word is captured by its
// terminal/initial node, so checking all alive node pairs suffices. The full
// shift has constant 1 by convention.
inline StrongIrreducibilityResult strong_irreducibility_constant(const SFT1D& sft, int r_max,
                                                                 const Caps& caps = {}) {
    if (sft.forbidden.empty()) return {1, r_max};
    detail::SftAutomaton aut(sft, caps);
    if (!aut.any_alive()) throw Error(Diag::parse, "empty SFT language");
    const std::uint64_t n = aut.nodes();

    std::vector<std::uint64_t> alive_nodes;
    for (std::uint64_t u = 0; u < n; ++u)
        if (aut.alive(u)) alive_nodes.push_back(u);

    // pred[b]: nodes from which spelling word_of(b) is a valid walk (ending at b)
    std::vector<std::vector<char>> pred(n, std::vector<char>(n, 0));
    for (auto b : alive_nodes) {
        auto wb = aut.word_of(b);
        for (auto c : alive_nodes) {
            std::uint64_t at = c;
            bool ok = true;
            for (auto a : wb) {
                if (!aut.edge(at, a)) {
                    ok = false;
                    break;
                }
                at = aut.target(at, a);
            }
            if (ok) pred[b][c] = 1;
        }
    }

    // reach[a][c]: c reachable from a in exactly r steps
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (auto a : alive_nodes) reach[a][a] = 1;
    for (int r = 1; r <= r_max; ++r) {
        std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
        for (auto a : alive_nodes)
            for (std::uint64_t u = 0; u < n; ++u) {
                if (!reach[a][u]) continue;
                for (int l = 0; l < aut.states(); ++l)
                    if (aut.edge(u, l)) next[a][aut.target(u, l)] = 1;
            }
        reach.swap(next);
        bool all = true;
        for (auto a : alive_nodes) {
            for (auto b : alive_nodes) {
                bool bridged = false;
                for (std::uint64_t c = 0; c < n && !bridged; ++c)
                    bridged = reach[a][c] && pred[b][c];
                if (!bridged) {
                    all = false;
                    break;
                }
            }
            if (!all) break;
        }
        if (all) return {r, r_max};
    }
    return {std::nullopt, r_max};
}

}  // namespace cago
