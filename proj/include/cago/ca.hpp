#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cago/errors.hpp"
#include "cago/group.hpp"

namespace cago {

struct Alphabet {
    int size = 2;  // states are 0..size-1

    Alphabet() = default;
    explicit Alphabet(int s) : size(s) {
        if (s < 2) throw ParseError("alphabet needs at least two states");
        if (s > 255) throw ParseError("alphabet limited to 255 states");
    }
    bool operator==(const Alphabet&) const = default;
};

// Advance an s-ary digit vector to the next assignment in lexicographic order
// (last digit least significant). Returns false after the last assignment.
inline bool next_assignment(std::vector<std::uint8_t>& digits, int s) {
    for (size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < s) return true;
        digits[i] = 0;
    }
    return false;
}

// Ordered list of distinct group elements; the rule table is indexed by this
// declared order.
class Neighborhood {
public:
    explicit Neighborhood(std::vector<GroupElement> elems) : elems_(std::move(elems)) {
        if (elems_.empty()) throw ParseError("neighborhood must be nonempty");
        for (size_t i = 0; i < elems_.size(); ++i) {
            if (elems_[i].group() != elems_[0].group())
                throw GroupMismatchError("neighborhood elements from different groups");
            for (size_t j = i + 1; j < elems_.size(); ++j)
                if (elems_[i] == elems_[j]) throw ParseError("neighborhood elements must be distinct");
        }
    }

    const Group& group() const { return elems_[0].group(); }
    size_t size() const { return elems_.size(); }
    const GroupElement& at(size_t i) const { return elems_[i]; }
    const std::vector<GroupElement>& elements() const { return elems_; }

    // Minimal R with N included in D_R.
    int radius() const {
        int r = 0;
        for (const auto& e : elems_) r = std::max(r, e.word_length());
        return r;
    }

    bool operator==(const Neighborhood& o) const { return elems_ == o.elems_; }

private:
    std::vector<GroupElement> elems_;
};

// Local update rule: total table over s^m input tuples, indexed with the first
// neighbor as the most significant digit and state 0 first.
class LocalRule {
public:
    LocalRule(Alphabet alphabet, Neighborhood neighborhood, std::vector<std::uint8_t> table)
        : alphabet_(alphabet), neighborhood_(std::move(neighborhood)), table_(std::move(table)) {
        std::uint64_t want = checked_pow(alphabet_.size, neighborhood_.size(),
                                         std::uint64_t{1} << 32, "rule table");
        if (table_.size() != want) throw ParseError("rule table has wrong size");
        for (auto v : table_)
            if (v >= alphabet_.size) throw ParseError("rule table entry out of alphabet");
    }

    // Wolfram shorthand: code digit i (base s, least significant first) is the
    // output on the input tuple whose big-endian base-s value is i.
    static LocalRule from_wolfram(Alphabet alphabet, Neighborhood neighborhood,
                                  std::uint64_t code) {
        std::uint64_t n =
            checked_pow(alphabet.size, neighborhood.size(), std::uint64_t{1} << 32, "rule table");
        std::vector<std::uint8_t> table(n);
        std::uint64_t c = code;
        for (std::uint64_t i = 0; i < n; ++i) {
            table[i] = static_cast<std::uint8_t>(c % alphabet.size);
            c /= alphabet.size;
        }
        if (c != 0) throw ParseError("wolfram code out of range for this table size");
        return LocalRule(alphabet, std::move(neighborhood), std::move(table));
    }

    static LocalRule identity(const Group& g, Alphabet alphabet) {
        std::vector<std::uint8_t> t(alphabet.size);
        std::iota(t.begin(), t.end(), 0);
        return LocalRule(alphabet, Neighborhood({GroupElement::identity(g)}), std::move(t));
    }

    const Alphabet& alphabet() const { return alphabet_; }
    const Neighborhood& neighborhood() const { return neighborhood_; }
    const Group& group() const { return neighborhood_.group(); }
    const std::vector<std::uint8_t>& table() const { return table_; }
    int radius() const { return neighborhood_.radius(); }

    std::uint8_t apply(const std::uint8_t* args) const {
        std::uint64_t idx = 0;
        for (size_t j = 0; j < neighborhood_.size(); ++j)
            idx = idx * alphabet_.size + args[j];
        return table_[idx];
    }
    std::uint8_t apply(const std::vector<std::uint8_t>& args) const { return apply(args.data()); }

    bool operator==(const LocalRule& o) const {
        return alphabet_ == o.alphabet_ && neighborhood_ == o.neighborhood_ && table_ == o.table_;
    }

private:
    Alphabet alphabet_;
    Neighborhood neighborhood_;
    std::vector<std::uint8_t> table_;
};

// Canonical form: drop neighbors the table does not depend on, order the rest
// length-lexicographically, rebuild the table. Two rules define the same
// global map on the same group iff their minimized forms are equal.
inline LocalRule minimized(const LocalRule& rule) {
    const int s = rule.alphabet().size;
    const size_t m = rule.neighborhood().size();
    const auto& table = rule.table();

    std::vector<std::uint64_t> stride(m);
    std::uint64_t acc = 1;
    for (size_t j = m; j-- > 0;) {
        stride[j] = acc;
        acc *= s;
    }

    std::vector<bool> essential(m, false);
    for (size_t j = 0; j < m; ++j) {
        for (std::uint64_t idx = 0; idx < table.size() && !essential[j]; ++idx) {
            int digit = static_cast<int>(idx / stride[j]) % s;
            if (digit != 0) continue;  // compare each 0-digit index against its siblings
            for (int v = 1; v < s; ++v) {
                if (table[idx + v * stride[j]] != table[idx]) {
                    essential[j] = true;
                    break;
                }
            }
        }
    }

    std::vector<size_t> keep;
    for (size_t j = 0; j < m; ++j)
        if (essential[j]) keep.push_back(j);

    std::vector<GroupElement> elems;
    if (keep.empty()) {
        // constant rule: canonical neighborhood is the identity
        elems.push_back(GroupElement::identity(rule.group()));
        std::vector<std::uint8_t> t(s, table[0]);
        return LocalRule(rule.alphabet(), Neighborhood(std::move(elems)), std::move(t));
    }
    for (size_t j : keep) elems.push_back(rule.neighborhood().at(j));
    std::vector<size_t> order(keep.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return length_lex_less(elems[a], elems[b]); });

    std::vector<GroupElement> sorted_elems;
    for (size_t o : order) sorted_elems.push_back(elems[o]);

    std::uint64_t nt = checked_pow(s, keep.size(), std::uint64_t{1} << 32, "rule table");
    std::vector<std::uint8_t> new_table(nt);
    std::vector<std::uint8_t> digits(keep.size(), 0);
    std::vector<std::uint8_t> full(m, 0);
    std::uint64_t idx = 0;
    do {
        std::fill(full.begin(), full.end(), 0);
        for (size_t t = 0; t < keep.size(); ++t) full[keep[order[t]]] = digits[t];
        new_table[idx++] = rule.apply(full.data());
    } while (next_assignment(digits, s));
    return LocalRule(rule.alphabet(), Neighborhood(std::move(sorted_elems)), std::move(new_table));
}

inline bool same_global_map(const LocalRule& a, const LocalRule& b) {
    if (a.group() != b.group() || !(a.alphabet() == b.alphabet())) return false;
    return minimized(a) == minimized(b);
}

// Finite-support map from group elements to states; support kept in length-lex
// order so pattern indices are reproducible.
class Pattern {
public:
    static Pattern make(std::vector<GroupElement> support, std::vector<std::uint8_t> values) {
        if (support.size() != values.size()) throw ParseError("pattern support/value size mismatch");
        if (support.empty()) throw ParseError("pattern must have nonempty support");
        std::vector<size_t> order(support.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return length_lex_less(support[a], support[b]);
        });
        std::vector<GroupElement> s2;
        std::vector<std::uint8_t> v2;
        s2.reserve(support.size());
        v2.reserve(values.size());
        for (size_t o : order) {
            if (!s2.empty() && s2.back() == support[o]) throw ParseError("pattern support has duplicates");
            s2.push_back(support[o]);
            v2.push_back(values[o]);
        }
        return Pattern(std::move(s2), std::move(v2));
    }

    // Values from the big-endian base-s digits of `index` (first support
    // element most significant); `support` must already be length-lex sorted.
    static Pattern from_index(std::vector<GroupElement> support, std::uint64_t index, int s) {
        std::vector<std::uint8_t> values(support.size());
        for (size_t i = support.size(); i-- > 0;) {
            values[i] = static_cast<std::uint8_t>(index % s);
            index /= s;
        }
        return Pattern(std::move(support), std::move(values));
    }

    std::uint64_t index(int s) const {
        std::uint64_t idx = 0;
        for (auto v : values_) idx = idx * s + v;
        return idx;
    }

    size_t size() const { return support_.size(); }
    const std::vector<GroupElement>& support() const { return support_; }
    const std::vector<std::uint8_t>& values() const { return values_; }
    const Group& group() const { return support_[0].group(); }

    std::optional<size_t> find(const GroupElement& g) const {
        auto it = std::lower_bound(support_.begin(), support_.end(), g, LengthLexLess{});
        if (it == support_.end() || !(*it == g)) return std::nullopt;
        return static_cast<size_t>(it - support_.begin());
    }
    bool has(const GroupElement& g) const { return find(g).has_value(); }
    std::uint8_t at(const GroupElement& g) const {
        auto i = find(g);
        if (!i) throw SupportError("pattern has no value at " + g.to_string());
        return values_[*i];
    }

    Pattern restricted(const std::vector<GroupElement>& subset) const {
        std::vector<std::uint8_t> v;
        v.reserve(subset.size());
        for (const auto& g : subset) v.push_back(at(g));
        return make(subset, std::move(v));
    }

    // Copy with `patch` values replacing values on patch's support (which must
    // lie inside this support).
    Pattern overridden(const Pattern& patch) const {
        Pattern out = *this;
        for (size_t i = 0; i < patch.size(); ++i) {
            auto idx = out.find(patch.support()[i]);
            if (!idx) throw SupportError("patch outside pattern support");
            out.values_[*idx] = patch.values()[i];
        }
        return out;
    }

    bool operator==(const Pattern& o) const {
        return support_ == o.support_ && values_ == o.values_;
    }

private:
    Pattern(std::vector<GroupElement> support, std::vector<std::uint8_t> values)
        : support_(std::move(support)), values_(std::move(values)) {}
    std::vector<GroupElement> support_;
    std::vector<std::uint8_t> values_;
};

// Precomputed index rows for applying a rule at fixed targets inside a fixed,
// length-lex sorted support. The hot loop of every exhaustive enumeration.
class ApplyPlan {
public:
    ApplyPlan(const LocalRule& rule, const std::vector<GroupElement>& support,
              const std::vector<GroupElement>& targets)
        : s_(rule.alphabet().size), m_(rule.neighborhood().size()), table_(&rule.table()) {
        rows_.reserve(targets.size() * m_);
        for (const auto& t : targets) {
            for (size_t j = 0; j < m_; ++j) {
                GroupElement cell = t * rule.neighborhood().at(j);
                auto it = std::lower_bound(support.begin(), support.end(), cell, LengthLexLess{});
                if (it == support.end() || !(*it == cell))
                    throw SupportError("apply needs " + cell.to_string() +
                                       " which is outside the pattern support");
                rows_.push_back(static_cast<std::uint32_t>(it - support.begin()));
            }
        }
        count_ = targets.size();
    }

    size_t target_count() const { return count_; }

    std::uint8_t eval(size_t target, const std::uint8_t* values) const {
        const std::uint32_t* row = rows_.data() + target * m_;
        std::uint64_t idx = 0;
        for (size_t j = 0; j < m_; ++j) idx = idx * s_ + values[row[j]];
        return (*table_)[idx];
    }

private:
    int s_;
    size_t m_;
    const std::vector<std::uint8_t>* table_;
    std::vector<std::uint32_t> rows_;
    size_t count_ = 0;
};

// q(g) = f(p(g n_1), ..., p(g n_m)) for each target g; the p ->_f q relation.
inline Pattern apply_pattern(const LocalRule& rule, const Pattern& p,
                             const std::vector<GroupElement>& targets) {
    Pattern q = Pattern::make(targets, std::vector<std::uint8_t>(targets.size(), 0));
    ApplyPlan plan(rule, p.support(), q.support());
    std::vector<std::uint8_t> out(q.size());
    for (size_t t = 0; t < q.size(); ++t) out[t] = plan.eval(t, p.values().data());
    return Pattern::make(q.support(), std::move(out));
}

// Configuration with finitely many deviations from a homogeneous background.
// Backgrounds: uniform (any group), or periodic word (Z only). The diff map is
// canonical: every entry differs from the background at that point.
class PatchedConfiguration {
public:
    struct Uniform {
        std::uint8_t state;
        bool operator==(const Uniform&) const = default;
    };
    struct Periodic1D {
        std::vector<std::uint8_t> word;
        bool operator==(const Periodic1D&) const = default;
    };
    using Background = std::variant<Uniform, Periodic1D>;

    static PatchedConfiguration uniform(const Group& g, Alphabet a, std::uint8_t state) {
        if (state >= a.size) throw ParseError("background state out of alphabet");
        return PatchedConfiguration(g, a, Uniform{state});
    }

    static PatchedConfiguration periodic(Alphabet a, std::vector<std::uint8_t> word) {
        if (word.empty()) throw ParseError("periodic background needs a nonempty word");
        for (auto v : word)
            if (v >= a.size) throw ParseError("background word entry out of alphabet");
        Group z = Group::free_abelian(1);
        // canonicalize to the primitive period; period 1 collapses to uniform
        size_t L = word.size();
        for (size_t p = 1; p <= L / 2; ++p) {
            if (L % p) continue;
            bool rep = true;
            for (size_t i = p; i < L && rep; ++i) rep = word[i] == word[i % p];
            if (rep) {
                word.resize(p);
                L = p;
                break;
            }
        }
        if (L == 1) return uniform(z, a, word[0]);
        return PatchedConfiguration(z, a, Periodic1D{std::move(word)});
    }

    const Group& group() const { return group_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const Background& background() const { return background_; }
    const std::map<GroupElement, std::uint8_t, LengthLexLess>& diff() const { return diff_; }

    std::uint8_t background_at(const GroupElement& g) const {
        if (const auto* u = std::get_if<Uniform>(&background_)) return u->state;
        const auto& w = std::get<Periodic1D>(background_).word;
        std::int64_t x = g.data()[0];
        std::int64_t L = static_cast<std::int64_t>(w.size());
        return w[static_cast<size_t>(((x % L) + L) % L)];
    }

    std::uint8_t at(const GroupElement& g) const {
        if (g.group() != group_) throw GroupMismatchError("configuration indexed by foreign element");
        auto it = diff_.find(g);
        return it != diff_.end() ? it->second : background_at(g);
    }

    PatchedConfiguration with_value(const GroupElement& g, std::uint8_t v) const {
        if (v >= alphabet_.size) throw ParseError("state out of alphabet");
        PatchedConfiguration out = *this;
        if (v == out.background_at(g))
            out.diff_.erase(g);
        else
            out.diff_[g] = v;
        return out;
    }

    // Values from `p` written over this configuration.
    PatchedConfiguration overridden(const Pattern& p) const {
        PatchedConfiguration out = *this;
        for (size_t i = 0; i < p.size(); ++i) {
            const auto& g = p.support()[i];
            std::uint8_t v = p.values()[i];
            if (v == out.background_at(g))
                out.diff_.erase(g);
            else
                out.diff_[g] = v;
        }
        return out;
    }

    Pattern restricted(const std::vector<GroupElement>& support) const {
        std::vector<std::uint8_t> v;
        v.reserve(support.size());
        for (const auto& g : support) v.push_back(at(g));
        return Pattern::make(support, std::move(v));
    }

    bool operator==(const PatchedConfiguration& o) const {
        return group_ == o.group_ && alphabet_ == o.alphabet_ && background_ == o.background_ &&
               diff_ == o.diff_;
    }

private:
    PatchedConfiguration(Group g, Alphabet a, Background b)
        : group_(g), alphabet_(a), background_(std::move(b)) {}
    Group group_;
    Alphabet alphabet_;
    Background background_;
    std::map<GroupElement, std::uint8_t, LengthLexLess> diff_;
};

// sigma_g(c)(x) = c(g x)
inline PatchedConfiguration translate(const PatchedConfiguration& c, const GroupElement& g) {
    if (g.group() != c.group()) throw GroupMismatchError("translate by foreign element");
    PatchedConfiguration::Background bg = c.background();
    if (auto* p = std::get_if<PatchedConfiguration::Periodic1D>(&bg)) {
        std::int64_t t = g.data()[0];
        std::int64_t L = static_cast<std::int64_t>(p->word.size());
        std::vector<std::uint8_t> w(p->word.size());
        for (std::int64_t i = 0; i < L; ++i)
            w[static_cast<size_t>(i)] = p->word[static_cast<size_t>((((t + i) % L) + L) % L)];
        PatchedConfiguration out = PatchedConfiguration::periodic(c.alphabet(), std::move(w));
        GroupElement gi = g.inverse();
        for (const auto& [h, v] : c.diff()) out = out.with_value(gi * h, v);
        return out;
    }
    PatchedConfiguration out = PatchedConfiguration::uniform(
        c.group(), c.alphabet(), std::get<PatchedConfiguration::Uniform>(bg).state);
    GroupElement gi = g.inverse();
    for (const auto& [h, v] : c.diff()) out = out.with_value(gi * h, v);
    return out;
}

// F(c)(g) = f((sigma_g c)|_N): the global map on patched configurations.
// Uniform backgrounds map to uniform; periodic 1D backgrounds keep their period.
inline PatchedConfiguration apply_global(const LocalRule& rule, const PatchedConfiguration& c) {
    if (rule.group() != c.group()) throw GroupMismatchError("rule and configuration group differ");
    if (!(rule.alphabet() == c.alphabet())) throw ParseError("rule and configuration alphabet differ");
    const size_t m = rule.neighborhood().size();
    std::vector<std::uint8_t> args(m);

    PatchedConfiguration out = [&]() {
        if (const auto* u = std::get_if<PatchedConfiguration::Uniform>(&c.background())) {
            std::fill(args.begin(), args.end(), u->state);
            return PatchedConfiguration::uniform(c.group(), c.alphabet(), rule.apply(args));
        }
        const auto& word = std::get<PatchedConfiguration::Periodic1D>(c.background()).word;
        std::int64_t L = static_cast<std::int64_t>(word.size());
        std::vector<std::uint8_t> w(word.size());
        for (std::int64_t i = 0; i < L; ++i) {
            for (size_t j = 0; j < m; ++j) {
                std::int64_t x = i + rule.neighborhood().at(j).data()[0];
                args[j] = word[static_cast<size_t>(((x % L) + L) % L)];
            }
            w[static_cast<size_t>(i)] = rule.apply(args);
        }
        return PatchedConfiguration::periodic(c.alphabet(), std::move(w));
    }();

    // cells whose neighborhood meets the diff: diff * N^-1
    std::map<GroupElement, bool, LengthLexLess> candidates;
    for (const auto& [d, v] : c.diff())
        for (size_t j = 0; j < m; ++j) candidates.emplace(d * rule.neighborhood().at(j).inverse(), true);
    for (const auto& [x, unused] : candidates) {
        for (size_t j = 0; j < m; ++j) args[j] = c.at(x * rule.neighborhood().at(j));
        out = out.with_value(x, rule.apply(args));
    }
    return out;
}

// Composition with H applied first: apply_global(compose(F,H), c) equals
// apply_global(F, apply_global(H, c)). Neighborhood is the product set
// {n_F n_H}, deduplicated and sorted.
inline LocalRule compose(const LocalRule& F, const LocalRule& H, const Caps& caps = {}) {
    if (F.group() != H.group()) throw GroupMismatchError("composing rules over different groups");
    if (!(F.alphabet() == H.alphabet())) throw ParseError("composing rules over different alphabets");
    const int s = F.alphabet().size;
    const size_t mf = F.neighborhood().size(), mh = H.neighborhood().size();

    std::vector<GroupElement> prod;
    prod.reserve(mf * mh);
    for (size_t i = 0; i < mf; ++i)
        for (size_t j = 0; j < mh; ++j) prod.push_back(F.neighborhood().at(i) * H.neighborhood().at(j));
    std::sort(prod.begin(), prod.end(), LengthLexLess{});
    prod.erase(std::unique(prod.begin(), prod.end()), prod.end());

    std::uint64_t nt = checked_pow(s, prod.size(), caps.enumeration, "compose table");
    std::vector<std::uint32_t> pos(mf * mh);
    for (size_t i = 0; i < mf; ++i)
        for (size_t j = 0; j < mh; ++j) {
            GroupElement e = F.neighborhood().at(i) * H.neighborhood().at(j);
            auto it = std::lower_bound(prod.begin(), prod.end(), e, LengthLexLess{});
            pos[i * mh + j] = static_cast<std::uint32_t>(it - prod.begin());
        }

    std::vector<std::uint8_t> table(nt);
    std::vector<std::uint8_t> digits(prod.size(), 0);
    std::vector<std::uint8_t> hargs(mh), fargs(mf);
    std::uint64_t idx = 0;
    do {
        for (size_t i = 0; i < mf; ++i) {
            for (size_t j = 0; j < mh; ++j) hargs[j] = digits[pos[i * mh + j]];
            fargs[i] = H.apply(hargs);
        }
        table[idx++] = F.apply(fargs);
    } while (next_assignment(digits, s));
    return LocalRule(F.alphabet(), Neighborhood(std::move(prod)), std::move(table));
}

struct RestrictResult {
    LocalRule rule;
    Group group;
    bool changed;
};

namespace detail {

// Integer row echelon basis of the lattice spanned by the input vectors.
struct LatticeBasis {
    std::vector<std::vector<std::int64_t>> rows;
    std::vector<int> pivots;

    static LatticeBasis of(std::vector<std::vector<std::int64_t>> m, int dim) {
        LatticeBasis b;
        size_t r = 0;
        for (int col = 0; col < dim && r < m.size(); ++col) {
            for (;;) {
                size_t best = m.size();
                for (size_t i = r; i < m.size(); ++i)
                    if (m[i][col] != 0 &&
                        (best == m.size() || std::abs(m[i][col]) < std::abs(m[best][col])))
                        best = i;
                if (best == m.size()) break;
                std::swap(m[r], m[best]);
                bool clean = true;
                for (size_t i = r + 1; i < m.size(); ++i) {
                    if (m[i][col] == 0) continue;
                    std::int64_t q = m[i][col] / m[r][col];
                    for (int c = 0; c < dim; ++c) m[i][c] -= q * m[r][c];
                    if (m[i][col] != 0) clean = false;
                }
                if (clean) break;
            }
            if (m[r][col] != 0) {
                if (m[r][col] < 0)
                    for (int c = 0; c < dim; ++c) m[r][c] = -m[r][c];
                b.pivots.push_back(col);
                b.rows.push_back(m[r]);
                ++r;
            }
        }
        return b;
    }

    // Coordinates of v in this basis; v must lie in the lattice.
    std::vector<std::int64_t> solve(std::vector<std::int64_t> v) const {
        std::vector<std::int64_t> x(rows.size(), 0);
        for (size_t i = 0; i < rows.size(); ++i) {
            int p = pivots[i];
            if (v[p] % rows[i][p] != 0) throw InternalError("lattice solve: non-integral coordinate");
            std::int64_t q = v[p] / rows[i][p];
            for (size_t c = 0; c < v.size(); ++c) v[c] -= q * rows[i][c];
            x[i] = q;
        }
        for (auto c : v)
            if (c != 0) throw InternalError("lattice solve: vector outside lattice");
        return x;
    }
};

}  // namespace detail

// Reinterpret the rule over the subgroup generated by (a standard-generator
// envelope of) its neighborhood. Z^d: the sublattice spanned by the neighbors,
// via an integer echelon basis. F_k: the free subgroup on the generators that
// occur in the neighborhood words. Surjectivity, balancedness and
// post-surjectivity are preserved by this restriction.
inline RestrictResult restrict_rule(const LocalRule& rule) {
    const Group& g = rule.group();
    if (g.kind() == Group::Kind::free_abelian) {
        std::vector<std::vector<std::int64_t>> vecs;
        for (const auto& e : rule.neighborhood().elements())
            vecs.emplace_back(e.data().begin(), e.data().end());
        auto basis = detail::LatticeBasis::of(vecs, g.rank());
        size_t rank = basis.rows.size();
        if (rank == static_cast<size_t>(g.rank())) {
            std::int64_t det = 1;
            for (size_t i = 0; i < rank; ++i) det *= basis.rows[i][basis.pivots[i]];
            if (det == 1) return {rule, g, false};
        }
        Group sub = Group::free_abelian(std::max<size_t>(rank, 1));
        std::vector<GroupElement> elems;
        for (const auto& v : vecs) {
            auto x = basis.solve(v);
            std::vector<std::int32_t> c(sub.rank(), 0);
            for (size_t i = 0; i < x.size(); ++i) c[i] = static_cast<std::int32_t>(x[i]);
            elems.push_back(GroupElement::point(sub, c));
        }
        return {LocalRule(rule.alphabet(), Neighborhood(std::move(elems)), rule.table()), sub, true};
    }

    std::vector<bool> used(g.rank(), false);
    for (const auto& e : rule.neighborhood().elements())
        for (auto l : e.data()) used[std::abs(l) - 1] = true;
    std::vector<int> gens;
    for (int i = 0; i < g.rank(); ++i)
        if (used[i]) gens.push_back(i);
    if (static_cast<int>(gens.size()) == g.rank()) return {rule, g, false};

    if (gens.size() <= 1) {
        // powers of one generator (or the trivial subgroup): reinterpret over Z
        Group z = Group::free_abelian(1);
        std::vector<GroupElement> elems;
        for (const auto& e : rule.neighborhood().elements()) {
            std::int32_t exp = 0;
            for (auto l : e.data()) exp += l > 0 ? 1 : -1;
            elems.push_back(GroupElement::point(z, {exp}));
        }
        return {LocalRule(rule.alphabet(), Neighborhood(std::move(elems)), rule.table()), z, true};
    }

    Group sub = Group::free_group(static_cast<int>(gens.size()));
    std::vector<int> relabel(g.rank(), -1);
    for (size_t i = 0; i < gens.size(); ++i) relabel[gens[i]] = static_cast<int>(i);
    std::vector<GroupElement> elems;
    for (const auto& e : rule.neighborhood().elements()) {
        std::vector<std::int32_t> letters;
        for (auto l : e.data()) {
            std::int32_t nl = relabel[std::abs(l) - 1] + 1;
            letters.push_back(l > 0 ? nl : -nl);
        }
        elems.push_back(GroupElement::word(sub, letters));
    }
    return {LocalRule(rule.alphabet(), Neighborhood(std::move(elems)), rule.table()), sub, true};
}

}  // namespace cago
