#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cago/ca.hpp"
#include "cago/errors.hpp"
#include "cago/group.hpp"

// Labeled graphs and (r, epsilon)-approximations of Z^d and F_k, with the
// packing and counting machinery of the sofic argument. Input graphs are
// required to be deterministically labeled and symmetric: Cayley balls are,
// so any vertex violating this would fail the ball check anyway, and
// determinism makes the rooted-isomorphism test a single traversal.

namespace cago {

// Labels are the symmetric generating set in canonical order: label 2i is
// generator i (letter 'a'+i), label 2i+1 its inverse ('A'+i).
class LabeledGraph {
public:
    LabeledGraph(std::uint32_t vertices, int generator_count)
        : generators_(generator_count), edges_(static_cast<size_t>(vertices) * generator_count * 2, -1) {
        if (generator_count < 1 || generator_count > 26)
            throw ParseError("labeled graph needs 1..26 generators");
    }

    std::uint32_t vertex_count() const {
        return static_cast<std::uint32_t>(edges_.size() / (generators_ * 2));
    }
    int generator_count() const { return generators_; }
    int label_count() const { return generators_ * 2; }

    static int inverse_label(int label) { return label ^ 1; }

    char label_char(int label) const {
        return static_cast<char>((label % 2 == 0 ? 'a' : 'A') + label / 2);
    }
    int parse_label(char c) const {
        if (c >= 'a' && c < 'a' + generators_) return 2 * (c - 'a');
        if (c >= 'A' && c < 'A' + generators_) return 2 * (c - 'A') + 1;
        throw ParseError(std::string("unknown edge label: ") + c);
    }

    // Adds (v, label, w) and the symmetric (w, label^-1, v); rejects
    // nondeterministic labelings.
    void add_edge(std::uint32_t v, int label, std::uint32_t w) {
        set_one(v, label, w);
        set_one(w, inverse_label(label), v);
    }

    std::int64_t target(std::uint32_t v, int label) const {
        return edges_[static_cast<size_t>(v) * label_count() + label];
    }

    // vertices within graph distance r of v
    std::vector<std::uint32_t> ball(std::uint32_t v, int r) const {
        std::vector<std::int32_t> dist(vertex_count(), -1);
        std::deque<std::uint32_t> q{v};
        dist[v] = 0;
        std::vector<std::uint32_t> out{v};
        while (!q.empty()) {
            auto x = q.front();
            q.pop_front();
            if (dist[x] == r) continue;
            for (int l = 0; l < label_count(); ++l) {
                auto t = target(x, l);
                if (t < 0 || dist[t] >= 0) continue;
                dist[t] = dist[x] + 1;
                out.push_back(static_cast<std::uint32_t>(t));
                q.push_back(static_cast<std::uint32_t>(t));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void set_one(std::uint32_t v, int label, std::uint32_t w) {
        auto& slot = edges_[static_cast<size_t>(v) * label_count() + label];
        if (slot >= 0 && slot != static_cast<std::int64_t>(w))
            throw ParseError("nondeterministic labeling at vertex " + std::to_string(v));
        slot = w;
    }

    int generators_;
    std::vector<std::int64_t> edges_;
};

// group element times a single label
inline GroupElement apply_label(const GroupElement& g, int label) {
    const Group& gr = g.group();
    GroupElement gen = GroupElement::generator(gr, label / 2);
    return label % 2 == 0 ? g * gen : g * gen.inverse();
}

namespace detail {

// Forced rooted mapping of the Cayley disk D_r into the graph at v; labels
// are deterministic, so the isomorphism, if any, is unique. Returns the
// vertex for each disk element, or nothing if the balls differ.
inline std::optional<std::vector<std::uint32_t>> ball_map(const LabeledGraph& graph,
                                                          std::uint32_t v, const Group& group,
                                                          const Disk& d) {
    if (graph.generator_count() != group.generator_count()) return std::nullopt;
    const auto& elems = d.elements;
    auto find = [&](const GroupElement& g) -> std::int64_t {
        auto it = std::lower_bound(elems.begin(), elems.end(), g, LengthLexLess{});
        if (it == elems.end() || !(*it == g)) return -1;
        return it - elems.begin();
    };

    std::vector<std::int64_t> phi(elems.size(), -1);
    std::set<std::uint32_t> used;
    phi[0] = v;  // identity first in disk order
    used.insert(v);
    for (size_t i = 0; i < elems.size(); ++i) {
        // disk order is a BFS order, so phi[i] is set when we get here
        std::uint32_t u = static_cast<std::uint32_t>(phi[i]);
        for (int l = 0; l < graph.label_count(); ++l) {
            GroupElement h = apply_label(elems[i], l);
            std::int64_t hi = find(h);
            std::int64_t w = graph.target(u, l);
            if (hi >= 0) {
                if (w < 0) return std::nullopt;  // missing Cayley edge
                if (phi[hi] < 0) {
                    if (used.count(static_cast<std::uint32_t>(w))) return std::nullopt;
                    phi[hi] = w;
                    used.insert(static_cast<std::uint32_t>(w));
                } else if (phi[hi] != w) {
                    return std::nullopt;  // identification mismatch
                }
            } else {
                // no Cayley edge leaves the disk here; an edge into the mapped
                // ball would be an extra edge the disk does not have
                if (w >= 0 && used.count(static_cast<std::uint32_t>(w))) return std::nullopt;
            }
        }
    }
    std::vector<std::uint32_t> out(phi.size());
    for (size_t i = 0; i < phi.size(); ++i) out[i] = static_cast<std::uint32_t>(phi[i]);
    return out;
}

}  // namespace detail

// Is the radius-r neighborhood of v isomorphic to D_{S,r} as a labeled graph?
// Radius 0 carries no edges, so it always matches.
inline bool ball_isomorphic(const LabeledGraph& graph, std::uint32_t v, int r, const Group& group,
                            const Caps& caps = {}) {
    if (r == 0) return true;
    Disk d = disk(group, r, caps);
    return detail::ball_map(graph, v, group, d).has_value();
}

struct SoficApproximation {
    LabeledGraph graph;
    std::vector<std::uint32_t> u;  // marked subset U
    int r = 0;
    double epsilon = 1.0;
};

struct ApproxVerdict {
    bool ok = false;
    std::optional<std::uint32_t> offending_vertex;  // ball check failure
    std::uint64_t u_size = 0;
    std::uint64_t v_size = 0;
    std::string note;
};

// Both clauses of the approximation definition: every u in U has its r-ball
// isomorphic to the Cayley disk, and |U| > (1 - epsilon)|V|.
inline ApproxVerdict verify_approximation(const LabeledGraph& graph,
                                          const std::vector<std::uint32_t>& u, int r,
                                          const Group& group, double epsilon,
                                          const Caps& caps = {}) {
    ApproxVerdict out;
    out.u_size = u.size();
    out.v_size = graph.vertex_count();
    Disk d = disk(group, std::max(r, 0), caps);
    for (auto vert : u) {
        if (r > 0 && !detail::ball_map(graph, vert, group, d)) {
            out.offending_vertex = vert;
            out.note = "ball at vertex " + std::to_string(vert) + " is not D_" + std::to_string(r);
            return out;
        }
    }
    if (!(static_cast<double>(u.size()) > (1.0 - epsilon) * static_cast<double>(out.v_size))) {
        out.note = "|U| = " + std::to_string(u.size()) + " fails |U| > (1-eps)|V|";
        return out;
    }
    out.ok = true;
    return out;
}

// (Z/n)^d torus with the standard generators; a verified (r, eps)-approximation
// of Z^d with U = V whenever n >= 2r+2.
inline SoficApproximation torus_approximation(int d, int n, int r, const Caps& caps = {}) {
    if (d < 1) throw ParseError("torus dimension must be >= 1");
    if (n < 2 * r + 2)
        throw ParseError("torus needs n >= 2r+2, got n=" + std::to_string(n) +
                         " r=" + std::to_string(r));
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) {
        count *= static_cast<std::uint64_t>(n);
        check_cap(count, caps.disk_elements, "torus vertex count");
    }
    LabeledGraph g(static_cast<std::uint32_t>(count), d);
    std::vector<std::uint64_t> stride(d, 1);
    for (int i = 1; i < d; ++i) stride[i] = stride[i - 1] * n;
    for (std::uint64_t v = 0; v < count; ++v) {
        for (int i = 0; i < d; ++i) {
            std::uint64_t coord = (v / stride[i]) % n;
            std::uint64_t w = v - coord * stride[i] + ((coord + 1) % n) * stride[i];
            g.add_edge(static_cast<std::uint32_t>(v), 2 * i, static_cast<std::uint32_t>(w));
        }
    }
    std::vector<std::uint32_t> u(count);
    for (std::uint64_t v = 0; v < count; ++v) u[v] = static_cast<std::uint32_t>(v);
    auto verdict = verify_approximation(g, u, r, Group::free_abelian(d), 1.0, caps);
    if (!verdict.ok) throw InternalError("torus approximation failed verification: " + verdict.note);
    return {std::move(g), std::move(u), r, 1.0};
}

struct PermutationApproxReport {
    LabeledGraph graph;
    std::vector<std::uint32_t> u;  // vertices passing the ball check at r
    int r = 0;
    double measured_epsilon = 1.0;
    std::uint64_t seed = 0;
};

// Each generator of F_k realized as a uniform random permutation of n
// vertices (deterministic per seed). U is measured, not promised: the report
// carries the observed epsilon and makes no soficity claim beyond it.
inline PermutationApproxReport permutation_approximation(int k, int n, int r, std::uint64_t seed,
                                                         const Caps& caps = {}) {
    if (n < 1) throw ParseError("permutation approximation needs n >= 1");
    Group fk = Group::free_group(k);
    LabeledGraph g(static_cast<std::uint32_t>(n), k);
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> perm(n);
    for (int i = 0; i < k; ++i) {
        for (int v = 0; v < n; ++v) perm[v] = static_cast<std::uint32_t>(v);
        // Fisher-Yates with the raw engine; avoids distribution differences
        for (int v = n - 1; v > 0; --v)
            std::swap(perm[v], perm[rng() % static_cast<std::uint64_t>(v + 1)]);
        for (int v = 0; v < n; ++v) g.add_edge(static_cast<std::uint32_t>(v), 2 * i, perm[v]);
    }
    PermutationApproxReport rep{std::move(g), {}, r, 1.0, seed};
    Disk d = disk(fk, std::max(r, 0), caps);
    for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(n); ++v)
        if (r == 0 || detail::ball_map(rep.graph, v, fk, d)) rep.u.push_back(v);
    rep.measured_epsilon = 1.0 - static_cast<double>(rep.u.size()) / static_cast<double>(n);
    return rep;
}

// Greedy packing in ascending vertex order: W subseteq U, pairwise disjoint
// l-balls, maximal under insertion. If |U| >= |V|/2 the packing bound
// |W| >= |V| / (2 |D_2l|) must hold and is asserted.
inline std::vector<std::uint32_t> greedy_packing(const LabeledGraph& graph,
                                                 const std::vector<std::uint32_t>& u, int ell,
                                                 const Group& group, const Caps& caps = {}) {
    Disk d2l = disk(group, 2 * ell, caps);
    for (auto v : u)
        if (ell > 0 && !detail::ball_map(graph, v, group, d2l))
            throw Error(Diag::parse,
                        "greedy_packing precondition: vertex " + std::to_string(v) +
                            " lacks a D_" + std::to_string(2 * ell) + " ball");
    std::vector<char> occupied(graph.vertex_count(), 0);
    std::vector<std::uint32_t> w;
    std::vector<std::uint32_t> sorted_u = u;
    std::sort(sorted_u.begin(), sorted_u.end());
    for (auto v : sorted_u) {
        auto ball = graph.ball(v, ell);
        bool free = std::none_of(ball.begin(), ball.end(), [&](auto x) { return occupied[x]; });
        if (!free) continue;
        for (auto x : ball) occupied[x] = 1;
        w.push_back(v);
    }
    if (2 * u.size() >= graph.vertex_count()) {
        std::uint64_t bound_num = graph.vertex_count();
        std::uint64_t bound_den = 2 * d2l.elements.size();
        if (static_cast<std::uint64_t>(w.size()) * bound_den < bound_num)
            throw InternalError("packing bound violated: bug");
    }
    return w;
}

struct PhiImageCount {
    std::uint64_t distinct = 0;
    bool exact = true;
    std::uint64_t patterns_enumerated = 0;
};

// |phi(S^V)| where phi(p) = q on U is the rule applied inside the graph.
// Exact enumeration while s^|V| fits the cap; otherwise seeded sampling,
// clearly labeled non-exact (a lower bound on the image size).
inline PhiImageCount phi_image_count(const LabeledGraph& graph,
                                     const std::vector<std::uint32_t>& u, const LocalRule& rule,
                                     const Caps& caps = {}, std::uint64_t sample_seed = 0,
                                     std::uint64_t sample_count = 1 << 16) {
    const int s = rule.alphabet().size;
    const int R = rule.radius();
    const Group& group = rule.group();
    Disk dR = disk(group, R, caps);

    // vertex realizing each neighbor of each marked vertex
    std::vector<std::uint32_t> rows(u.size() * rule.neighborhood().size());
    for (size_t ui = 0; ui < u.size(); ++ui) {
        auto map = detail::ball_map(graph, u[ui], group, dR);
        if (R > 0 && !map)
            throw Error(Diag::parse, "phi needs the rule-radius ball at every marked vertex");
        for (size_t j = 0; j < rule.neighborhood().size(); ++j) {
            const auto& nb = rule.neighborhood().at(j);
            auto it = std::lower_bound(dR.elements.begin(), dR.elements.end(), nb, LengthLexLess{});
            size_t pos = static_cast<size_t>(it - dR.elements.begin());
            rows[ui * rule.neighborhood().size() + j] = R > 0 ? (*map)[pos] : u[ui];
        }
    }

    const size_t m = rule.neighborhood().size();
    std::vector<std::uint8_t> vals(graph.vertex_count(), 0);
    std::vector<std::uint8_t> args(m);
    auto image_of = [&]() {
        std::uint64_t img = 0;
        for (size_t ui = 0; ui < u.size(); ++ui) {
            for (size_t j = 0; j < m; ++j) args[j] = vals[rows[ui * m + j]];
            img = img * s + rule.apply(args);
        }
        return img;
    };

    PhiImageCount out;
    try {
        checked_pow(s, graph.vertex_count(), caps.enumeration, "phi enumeration");
    } catch (const CapExceededError&) {
        // sampling mode: a seeded lower bound on the image size
        out.exact = false;
        std::set<std::uint64_t> images;
        std::mt19937_64 rng(sample_seed);
        for (std::uint64_t i = 0; i < sample_count; ++i) {
            for (auto& v : vals) v = static_cast<std::uint8_t>(rng() % s);
            images.insert(image_of());
        }
        out.patterns_enumerated = sample_count;
        out.distinct = images.size();
        return out;
    }
    // in exact mode |U| <= |V| keeps the image space within the cap
    std::uint64_t image_space = checked_pow(s, u.size(), caps.enumeration, "phi image space");
    std::vector<bool> seen(image_space, false);
    do {
        std::uint64_t img = image_of();
        if (!seen[img]) {
            seen[img] = true;
            ++out.distinct;
        }
        ++out.patterns_enumerated;
    } while (next_assignment(vals, s));
    return out;
}

struct FeasibilityResult {
    bool feasible = false;
    double log_margin = 0.0;  // natural log of s^eps (1 - s^-|D_r|)^(1/(2|D_2r|))
};

// The counting argument's epsilon condition, evaluated in log space with an
// underflow-safe branch for very large disks.
inline FeasibilityResult counting_feasibility(int s, std::uint64_t size_dr, std::uint64_t size_d2r,
                                              double epsilon) {
    if (s < 2 || size_dr < 1 || size_d2r < 1 || epsilon <= 0)
        throw ParseError("counting_feasibility needs s >= 2, sizes >= 1, epsilon > 0");
    const double ln_s = std::log(static_cast<double>(s));
    const double big = static_cast<double>(size_dr) * ln_s;
    FeasibilityResult out;
    if (big < 500.0) {
        double x = std::exp(-big);  // s^-|D_r|
        out.log_margin = epsilon * ln_s + std::log1p(-x) / (2.0 * static_cast<double>(size_d2r));
        out.feasible = out.log_margin < 0.0;
        return out;
    }
    // log1p(-x) ~ -x underflows; compare eps ln s against x / (2|D_2r|) in logs
    double lhs_log = std::log(epsilon * ln_s);
    double rhs_log = -big - std::log(2.0 * static_cast<double>(size_d2r));
    out.feasible = lhs_log < rhs_log;
    out.log_margin = epsilon * ln_s;  // the dominating positive term when infeasible
    if (out.feasible) out.log_margin = -std::exp(rhs_log);
    return out;
}

// ln of the chain bound (s^|D_r| - 1)^|W| * s^(|V| - |W||D_r|) for report tables.
inline double counting_chain_log(int s, std::uint64_t size_dr, std::uint64_t v_size,
                                 std::uint64_t w_size) {
    const double ln_s = std::log(static_cast<double>(s));
    const double big = static_cast<double>(size_dr) * ln_s;
    double ln_term = big + (big < 500.0 ? std::log1p(-std::exp(-big)) : 0.0);
    return static_cast<double>(w_size) * ln_term +
           (static_cast<double>(v_size) - static_cast<double>(w_size) * static_cast<double>(size_dr)) *
               ln_s;
}

// Graph file, line oriented:
//
//   cago-graph v1
//   group Z
//   vertices 12
//   edge 0 a 1
//
// Only generator-labeled edges are listed; the symmetric inverse edges are
// implied. Serialization is canonical (edges sorted by vertex then label).

inline std::string serialize_graph(const LabeledGraph& g, const Group& group) {
    std::string out = "cago-graph v1\n";
    out += "group " + group.spec() + "\n";
    out += "vertices " + std::to_string(g.vertex_count()) + "\n";
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        for (int l = 0; l < g.label_count(); l += 2) {
            auto t = g.target(v, l);
            if (t >= 0)
                out += "edge " + std::to_string(v) + " " + std::string(1, g.label_char(l)) + " " +
                       std::to_string(t) + "\n";
        }
    return out;
}

inline std::pair<LabeledGraph, Group> parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::optional<Group> group;
    std::optional<LabeledGraph> graph;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) {
            if (t[0] == '#') break;
            toks.push_back(t);
        }
        if (toks.empty()) continue;
        if (!header) {
            if (toks.size() != 2 || toks[0] != "cago-graph" || toks[1] != "v1")
                throw ParseError("graph file must start with 'cago-graph v1'");
            header = true;
            continue;
        }
        if (toks[0] == "group") {
            if (toks.size() != 2) throw ParseError("group line needs one spec token");
            group = Group::parse_spec(toks[1]);
        } else if (toks[0] == "vertices") {
            if (!group) throw ParseError("vertices line before group line");
            graph.emplace(static_cast<std::uint32_t>(std::atoi(toks[1].c_str())),
                          group->generator_count());
        } else if (toks[0] == "edge") {
            if (!graph) throw ParseError("edge line before vertices line");
            if (toks.size() != 4 || toks[2].size() != 1) throw ParseError("bad edge line: " + line);
            std::uint32_t v = static_cast<std::uint32_t>(std::atoi(toks[1].c_str()));
            std::uint32_t w = static_cast<std::uint32_t>(std::atoi(toks[3].c_str()));
            if (v >= graph->vertex_count() || w >= graph->vertex_count())
                throw ParseError("edge endpoint out of range: " + line);
            graph->add_edge(v, graph->parse_label(toks[2][0]), w);
        } else {
            throw ParseError("unknown graph-file key: " + toks[0]);
        }
    }
    if (!graph || !group) throw ParseError("graph file missing header lines");
    return {std::move(*graph), *group};
}

// n-cycle over Z's generator
inline LabeledGraph cycle_graph(int n) {
    if (n < 1) throw ParseError("cycle needs n >= 1");
    LabeledGraph g(static_cast<std::uint32_t>(n), 1);
    for (int v = 0; v < n; ++v)
        g.add_edge(static_cast<std::uint32_t>(v), 0, static_cast<std::uint32_t>((v + 1) % n));
    return g;
}

}  // namespace cago
