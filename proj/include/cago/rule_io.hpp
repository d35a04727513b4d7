#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cago/ca.hpp"
#include "cago/errors.hpp"
#include "cago/group.hpp"

namespace cago {

// Rule file, line oriented:
//
//   cago-rule v1
//   group Z
//   alphabet 2
//   neighborhood (-1) (0) (1)
//   table 0 1 1 0 0 1 1 0
//
// `wolfram <code>` may replace the table line. '#' starts a comment.
// Serialization always writes the explicit table; parse(serialize(r)) == r.

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

}  // namespace detail

inline std::string serialize_rule(const LocalRule& rule) {
    std::string out = "cago-rule v1\n";
    out += "group " + rule.group().spec() + "\n";
    out += "alphabet " + std::to_string(rule.alphabet().size) + "\n";
    out += "neighborhood";
    for (const auto& e : rule.neighborhood().elements()) out += " " + e.to_string();
    out += "\ntable";
    for (auto v : rule.table()) out += " " + std::to_string(v);
    out += "\n";
    return out;
}

inline LocalRule parse_rule(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::optional<Group> group;
    std::optional<Alphabet> alphabet;
    std::vector<GroupElement> neigh;
    std::vector<std::uint8_t> table;
    std::optional<std::uint64_t> wolfram;

    while (std::getline(in, line)) {
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        if (!header) {
            if (toks.size() != 2 || toks[0] != "cago-rule" || toks[1] != "v1")
                throw ParseError("rule file must start with 'cago-rule v1'");
            header = true;
            continue;
        }
        const std::string& key = toks[0];
        if (key == "group") {
            if (toks.size() != 2) throw ParseError("group line needs one spec token");
            group = Group::parse_spec(toks[1]);
        } else if (key == "alphabet") {
            if (toks.size() != 2) throw ParseError("alphabet line needs one integer");
            alphabet = Alphabet(std::atoi(toks[1].c_str()));
        } else if (key == "neighborhood") {
            if (!group) throw ParseError("neighborhood line before group line");
            for (size_t i = 1; i < toks.size(); ++i)
                neigh.push_back(GroupElement::parse(*group, toks[i]));
        } else if (key == "table") {
            for (size_t i = 1; i < toks.size(); ++i) {
                int v = std::atoi(toks[i].c_str());
                if (v < 0 || v > 255) throw ParseError("table entry out of range");
                table.push_back(static_cast<std::uint8_t>(v));
            }
        } else if (key == "wolfram") {
            if (toks.size() != 2) throw ParseError("wolfram line needs one code");
            wolfram = std::strtoull(toks[1].c_str(), nullptr, 10);
        } else {
            throw ParseError("unknown rule-file key: " + key);
        }
    }
    if (!header) throw ParseError("empty rule file");
    if (!group) throw ParseError("rule file missing group");
    if (!alphabet) throw ParseError("rule file missing alphabet");
    if (neigh.empty()) throw ParseError("rule file missing neighborhood");
    Neighborhood n(std::move(neigh));
    if (wolfram) {
        if (!table.empty()) throw ParseError("rule file has both table and wolfram lines");
        return LocalRule::from_wolfram(*alphabet, std::move(n), *wolfram);
    }
    if (table.empty()) throw ParseError("rule file missing table");
    return LocalRule(*alphabet, std::move(n), std::move(table));
}

// Pattern literal: {(0)=1,(1)=0} over Z^d, {1=0,a=1,aB=0} over F_k.
inline std::string pattern_to_string(const Pattern& p) {
    std::string out = "{";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out += ",";
        out += p.support()[i].to_string() + "=" + std::to_string(p.values()[i]);
    }
    return out + "}";
}

inline Pattern parse_pattern(const Group& g, const Alphabet& a, std::string_view text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw ParseError("pattern literal must be brace-enclosed");
    std::string body(text.substr(1, text.size() - 2));
    std::vector<GroupElement> support;
    std::vector<std::uint8_t> values;
    size_t pos = 0;
    while (pos < body.size()) {
        // entries split on commas outside parentheses
        size_t end = pos;
        int depth = 0;
        while (end < body.size() && (depth > 0 || body[end] != ',')) {
            if (body[end] == '(') ++depth;
            if (body[end] == ')') --depth;
            ++end;
        }
        std::string entry = body.substr(pos, end - pos);
        size_t eq = entry.rfind('=');
        if (eq == std::string::npos) throw ParseError("pattern entry missing '=': " + entry);
        support.push_back(GroupElement::parse(g, entry.substr(0, eq)));
        int v = std::atoi(entry.substr(eq + 1).c_str());
        if (v < 0 || v >= a.size) throw ParseError("pattern value out of alphabet: " + entry);
        values.push_back(static_cast<std::uint8_t>(v));
        pos = end + (end < body.size() ? 1 : 0);
    }
    return Pattern::make(std::move(support), std::move(values));
}

// State words as digit strings ("0110"); alphabets up to 10 states.
inline std::string word_to_string(const std::vector<std::uint8_t>& w) {
    std::string s;
    for (auto v : w) {
        if (v > 9) throw ParseError("state word serialization needs alphabet <= 10");
        s += static_cast<char>('0' + v);
    }
    return s;
}

inline std::vector<std::uint8_t> parse_state_word(const Alphabet& a, std::string_view s) {
    std::vector<std::uint8_t> w;
    for (char c : s) {
        if (c < '0' || c > '9' || c - '0' >= a.size)
            throw ParseError("bad state word: " + std::string(s));
        w.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return w;
}

}  // namespace cago
