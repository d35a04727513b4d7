#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cago {

// Diagnostic codes, used as CLI exit codes.
enum class Diag : int {
    ok = 0,
    usage = 2,
    parse = 3,
    cap_exceeded = 4,
    group_mismatch = 5,
    support = 6,
    internal = 7,
};

class Error : public std::runtime_error {
public:
    Error(Diag diag, const std::string& what) : std::runtime_error(what), diag_(diag) {}
    Diag diag() const { return diag_; }

private:
    Diag diag_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(Diag::parse, what) {}
};

// Enumeration would exceed the configured cap. A desk-scale limit, not a bug.
class CapExceededError : public Error {
public:
    explicit CapExceededError(const std::string& what) : Error(Diag::cap_exceeded, what) {}
};

class GroupMismatchError : public Error {
public:
    explicit GroupMismatchError(const std::string& what) : Error(Diag::group_mismatch, what) {}
};

// A pattern application needed a cell outside the pattern's support.
class SupportError : public Error {
public:
    explicit SupportError(const std::string& what) : Error(Diag::support, what) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(Diag::internal, what) {}
};

// Enumeration caps. Defaults sized so every stock check runs in minutes on a
// desktop; CAGO_ENUM_CAP overrides the candidate-enumeration cap.
struct Caps {
    std::uint64_t disk_elements = 1'000'000;
    std::uint64_t enumeration = std::uint64_t{1} << 24;
    std::uint64_t subset_states = std::uint64_t{1} << 20;

    static Caps from_env() {
        Caps caps;
        if (const char* s = std::getenv("CAGO_ENUM_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(s, &end, 10);
            if (end && *end == '\0' && v > 0) caps.enumeration = v;
        }
        return caps;
    }
};

inline void check_cap(std::uint64_t need, std::uint64_t cap, const char* what) {
    if (need > cap) {
        throw CapExceededError(std::string(what) + ": needs " + std::to_string(need) +
                               " > cap " + std::to_string(cap));
    }
}

// s^n with overflow guard against `cap`; throws CapExceededError if s^n > cap.
inline std::uint64_t checked_pow(std::uint64_t s, std::uint64_t n, std::uint64_t cap, const char* what) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (r > cap / s) {
            throw CapExceededError(std::string(what) + ": " + std::to_string(s) + "^" +
                                   std::to_string(n) + " > cap " + std::to_string(cap));
        }
        r *= s;
    }
    return r;
}

}  // namespace cago
