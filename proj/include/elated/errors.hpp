#pragma once

#include <stdexcept>
#include <string>

namespace elated {

// Precondition violation: the inputs are outside an operation's domain.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A bounded search ran out of budget before producing a result.
class LimitExceeded : public std::runtime_error {
public:
    explicit LimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A certificate, congruence, or divisibility check failed.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

// A persistent cache file is unreadable or inconsistent.
class CacheError : public std::runtime_error {
public:
    CacheError(const std::string& what, std::string path)
        : std::runtime_error(what + ": " + path), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

} // namespace elated
