#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "cago/errors.hpp"

namespace cago {

// Finitely generated group: Z^d with the standard basis, or the free group F_k
// on k generators. Generating sets are symmetric (S = S^-1).
class Group {
public:
    enum class Kind { free_abelian, free };

    static Group free_abelian(int d) {
        if (d < 1) throw ParseError("Z^d needs d >= 1");
        return Group(Kind::free_abelian, d);
    }
    static Group free_group(int k) {
        if (k < 1) throw ParseError("F_k needs k >= 1");
        if (k > 26) throw ParseError("F_k generators limited to a..z");
        return Group(Kind::free, k);
    }

    Kind kind() const { return kind_; }
    // d for Z^d, k for F_k.
    int rank() const { return rank_; }
    int generator_count() const { return rank_; }

    bool operator==(const Group& o) const = default;

    // "Z", "Z^2", "F_2"
    std::string spec() const {
        if (kind_ == Kind::free_abelian)
            return rank_ == 1 ? "Z" : "Z^" + std::to_string(rank_);
        return "F_" + std::to_string(rank_);
    }

    static Group parse_spec(std::string_view s) {
        if (s == "Z") return free_abelian(1);
        if (s.rfind("Z^", 0) == 0) {
            int d = std::atoi(std::string(s.substr(2)).c_str());
            if (d < 1) throw ParseError("bad group spec: " + std::string(s));
            return free_abelian(d);
        }
        if (s.rfind("F_", 0) == 0) {
            int k = std::atoi(std::string(s.substr(2)).c_str());
            if (k < 1) throw ParseError("bad group spec: " + std::string(s));
            return free_group(k);
        }
        throw ParseError("bad group spec: " + std::string(s));
    }

private:
    Group(Kind kind, int rank) : kind_(kind), rank_(rank) {}
    Kind kind_;
    int rank_;
};

// An element of Z^d (coordinate vector) or F_k (reduced word).
//
// F_k words are stored as sequences of nonzero letters: +(i+1) is generator i,
// -(i+1) its inverse, always freely reduced. The canonical text form writes
// generator i as 'a'+i and its inverse as 'A'+i, so "aB" is a * b^-1; the
// identity is written "1".
class GroupElement {
public:
    static GroupElement identity(const Group& g) {
        if (g.kind() == Group::Kind::free_abelian)
            return GroupElement(g, std::vector<std::int32_t>(g.rank(), 0));
        return GroupElement(g, {});
    }

    static GroupElement point(const Group& g, std::vector<std::int32_t> coords) {
        if (g.kind() != Group::Kind::free_abelian || static_cast<int>(coords.size()) != g.rank())
            throw GroupMismatchError("point() needs Z^d coordinates of matching dimension");
        return GroupElement(g, std::move(coords));
    }

    // letters: +(i+1) generator i, -(i+1) its inverse; reduced on construction.
    static GroupElement word(const Group& g, const std::vector<std::int32_t>& letters) {
        if (g.kind() != Group::Kind::free)
            throw GroupMismatchError("word() needs a free group");
        std::vector<std::int32_t> red;
        red.reserve(letters.size());
        for (std::int32_t l : letters) {
            if (l == 0 || std::abs(l) > g.rank()) throw ParseError("letter out of range");
            if (!red.empty() && red.back() == -l)
                red.pop_back();
            else
                red.push_back(l);
        }
        return GroupElement(g, std::move(red));
    }

    static GroupElement generator(const Group& g, int i) {
        if (i < 0 || i >= g.rank()) throw ParseError("generator index out of range");
        if (g.kind() == Group::Kind::free_abelian) {
            std::vector<std::int32_t> c(g.rank(), 0);
            c[i] = 1;
            return GroupElement(g, std::move(c));
        }
        return GroupElement(g, {static_cast<std::int32_t>(i + 1)});
    }

    const Group& group() const { return group_; }
    const std::vector<std::int32_t>& data() const { return data_; }

    bool is_identity() const {
        if (group_.kind() == Group::Kind::free) return data_.empty();
        return std::all_of(data_.begin(), data_.end(), [](auto c) { return c == 0; });
    }

    int word_length() const {
        if (group_.kind() == Group::Kind::free) return static_cast<int>(data_.size());
        std::int64_t n = 0;
        for (auto c : data_) n += std::abs(static_cast<std::int64_t>(c));
        return static_cast<int>(n);
    }

    GroupElement operator*(const GroupElement& o) const {
        if (group_ != o.group_) throw GroupMismatchError("product of elements of different groups");
        if (group_.kind() == Group::Kind::free_abelian) {
            std::vector<std::int32_t> c(data_);
            for (size_t i = 0; i < c.size(); ++i) c[i] += o.data_[i];
            return GroupElement(group_, std::move(c));
        }
        std::vector<std::int32_t> w(data_);
        for (std::int32_t l : o.data_) {
            if (!w.empty() && w.back() == -l)
                w.pop_back();
            else
                w.push_back(l);
        }
        return GroupElement(group_, std::move(w));
    }

    GroupElement inverse() const {
        if (group_.kind() == Group::Kind::free_abelian) {
            std::vector<std::int32_t> c(data_);
            for (auto& x : c) x = -x;
            return GroupElement(group_, std::move(c));
        }
        std::vector<std::int32_t> w(data_.rbegin(), data_.rend());
        for (auto& l : w) l = -l;
        return GroupElement(group_, std::move(w));
    }

    bool operator==(const GroupElement& o) const { return group_ == o.group_ && data_ == o.data_; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }

    std::string to_string() const {
        if (group_.kind() == Group::Kind::free_abelian) {
            std::string s = "(";
            for (size_t i = 0; i < data_.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(data_[i]);
            }
            return s + ")";
        }
        if (data_.empty()) return "1";
        std::string s;
        for (std::int32_t l : data_) s += static_cast<char>((l > 0 ? 'a' : 'A') + std::abs(l) - 1);
        return s;
    }

    static GroupElement parse(const Group& g, std::string_view tok) {
        if (g.kind() == Group::Kind::free_abelian) {
            if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
                throw ParseError("bad Z^d element literal: " + std::string(tok));
            std::vector<std::int32_t> c;
            std::string body(tok.substr(1, tok.size() - 2));
            size_t pos = 0;
            while (pos <= body.size()) {
                size_t comma = body.find(',', pos);
                std::string part = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                               : comma - pos);
                if (part.empty()) throw ParseError("bad Z^d element literal: " + std::string(tok));
                char* end = nullptr;
                long v = std::strtol(part.c_str(), &end, 10);
                if (!end || *end != '\0')
                    throw ParseError("bad Z^d element literal: " + std::string(tok));
                c.push_back(static_cast<std::int32_t>(v));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            if (static_cast<int>(c.size()) != g.rank())
                throw ParseError("element dimension does not match " + g.spec());
            return point(g, std::move(c));
        }
        if (tok == "1" || tok.empty()) return identity(g);
        std::vector<std::int32_t> letters;
        for (char ch : tok) {
            std::int32_t l;
            if (ch >= 'a' && ch < 'a' + g.rank())
                l = ch - 'a' + 1;
            else if (ch >= 'A' && ch < 'A' + g.rank())
                l = -(ch - 'A' + 1);
            else
                throw ParseError("bad F_k element literal: " + std::string(tok));
            letters.push_back(l);
        }
        return word(g, letters);
    }

private:
    GroupElement(Group g, std::vector<std::int32_t> data) : group_(g), data_(std::move(data)) {}
    Group group_;
    std::vector<std::int32_t> data_;
};

inline int word_length(const GroupElement& g) { return g.word_length(); }

inline GroupElement mul(const GroupElement& a, const GroupElement& b) { return a * b; }

inline GroupElement inv(const GroupElement& a) { return a.inverse(); }

// d_S(g, h) = ||g^-1 h||_S
inline int distance(const GroupElement& g, const GroupElement& h) {
    return (g.inverse() * h).word_length();
}

// Letter sort key for free-group words: a < A < b < B < ...
inline int letter_key(std::int32_t l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

// Length-lexicographic order; the canonical order for disks, pattern supports
// and rule tables, so that indices are reproducible across runs.
inline bool length_lex_less(const GroupElement& a, const GroupElement& b) {
    int la = a.word_length(), lb = b.word_length();
    if (la != lb) return la < lb;
    if (a.group().kind() == Group::Kind::free_abelian)
        return std::lexicographical_compare(a.data().begin(), a.data().end(), b.data().begin(),
                                            b.data().end());
    const auto& wa = a.data();
    const auto& wb = b.data();
    for (size_t i = 0; i < wa.size() && i < wb.size(); ++i) {
        int ka = letter_key(wa[i]), kb = letter_key(wb[i]);
        if (ka != kb) return ka < kb;
    }
    return wa.size() < wb.size();
}

struct LengthLexLess {
    bool operator()(const GroupElement& a, const GroupElement& b) const {
        return length_lex_less(a, b);
    }
};

// The symmetric generating set S u S^-1 in canonical order a, A, b, B, ...
inline std::vector<GroupElement> symmetric_generators(const Group& g) {
    std::vector<GroupElement> out;
    for (int i = 0; i < g.generator_count(); ++i) {
        out.push_back(GroupElement::generator(g, i));
        out.push_back(GroupElement::generator(g, i).inverse());
    }
    return out;
}

struct Disk {
    GroupElement center;
    int radius;
    std::vector<GroupElement> elements;  // length-lex order of center^-1 * g
};

namespace detail {

inline void enumerate_l1(const Group& g, int r, std::vector<std::int32_t>& cur, int dim,
                         int budget, std::vector<GroupElement>& out, std::uint64_t cap) {
    if (dim == g.rank()) {
        out.push_back(GroupElement::point(g, cur));
        if (out.size() > cap) throw CapExceededError("disk enumeration exceeds cap");
        return;
    }
    for (int v = -budget; v <= budget; ++v) {
        cur[dim] = v;
        enumerate_l1(g, r, cur, dim + 1, budget - std::abs(v), out, cap);
    }
    cur[dim] = 0;
}

}  // namespace detail

// D_{S,r}(center): all elements at distance <= r from center, ordered
// length-lexicographically by offset from the center.
inline Disk disk(const Group& g, int r, const GroupElement& center, const Caps& caps = {}) {
    if (r < 0) throw ParseError("disk radius must be >= 0");
    std::vector<GroupElement> elems;
    if (g.kind() == Group::Kind::free_abelian) {
        std::vector<std::int32_t> cur(g.rank(), 0);
        detail::enumerate_l1(g, r, cur, 0, r, elems, caps.disk_elements);
        std::sort(elems.begin(), elems.end(), LengthLexLess{});
    } else {
        // Extending reduced words by non-cancelling letters in letter order
        // yields each level already in lexicographic order.
        elems.push_back(GroupElement::identity(g));
        size_t level_begin = 0;
        for (int len = 1; len <= r; ++len) {
            size_t level_end = elems.size();
            for (size_t i = level_begin; i < level_end; ++i) {
                std::int32_t last = elems[i].data().empty() ? 0 : elems[i].data().back();
                for (int gi = 0; gi < g.rank(); ++gi) {
                    for (std::int32_t l : {static_cast<std::int32_t>(gi + 1),
                                           static_cast<std::int32_t>(-(gi + 1))}) {
                        if (l == -last) continue;
                        elems.push_back(elems[i] * GroupElement::word(g, {l}));
                        if (elems.size() > caps.disk_elements)
                            throw CapExceededError("disk enumeration exceeds cap");
                    }
                }
            }
            level_begin = level_end;
        }
    }
    if (!center.is_identity()) {
        for (auto& e : elems) e = center * e;
    }
    return Disk{center, r, std::move(elems)};
}

inline Disk disk(const Group& g, int r, const Caps& caps = {}) {
    return disk(g, r, GroupElement::identity(g), caps);
}

// |D_r| in F_k: 1 + sum_{n=1..r} 2k (2k-1)^(n-1)
inline std::uint64_t free_disk_size(int k, int r) {
    std::uint64_t total = 1, level = 1;
    for (int n = 1; n <= r; ++n) {
        level *= (n == 1) ? std::uint64_t(2 * k) : std::uint64_t(2 * k - 1);
        total += level;
    }
    return total;
}

}  // namespace cago
