#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cago/errors.hpp"

namespace cago {

// Self-describing text report: ordered `key: value` lines plus indented table
// rows. Certificates and counts are bit-exact across runs; the elapsed-ms
// field is the one exception and is ignored by byte-comparisons.
class Report {
public:
    explicit Report(std::string command) { add("command", std::move(command)); }

    void add(const std::string& key, std::string value) {
        fields_.emplace_back(key, std::move(value));
    }
    void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, std::int64_t value) { add(key, std::to_string(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, double value) {
        std::ostringstream os;
        os << value;
        add(key, os.str());
    }
    void add(const std::string& key, bool value) { add(key, std::string(value ? "yes" : "no")); }

    // indented table row under the last key
    void row(const std::string& line) { fields_.emplace_back("", line); }

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : fields_)
            if (k == key) return &v;
        return nullptr;
    }

    std::string to_text() const {
        std::string out = "cago-report v1\n";
        for (const auto& [k, v] : fields_) {
            if (k.empty())
                out += "  " + v + "\n";
            else
                out += k + ": " + v + "\n";
        }
        return out;
    }

    static Report parse(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || line != "cago-report v1")
            throw ParseError("report must start with 'cago-report v1'");
        Report rep;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line.rfind("  ", 0) == 0) {
                rep.fields_.emplace_back("", line.substr(2));
                continue;
            }
            auto colon = line.find(": ");
            if (colon == std::string::npos) throw ParseError("bad report line: " + line);
            rep.fields_.emplace_back(line.substr(0, colon), line.substr(colon + 2));
        }
        return rep;
    }

    const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

private:
    Report() = default;
    std::vector<std::pair<std::string, std::string>> fields_;
};

// drop timing lines for byte-identity comparisons
inline std::string strip_timing(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.rfind("elapsed-ms:", 0) == 0) continue;
        out += line + "\n";
    }
    return out;
}

}  // namespace cago
