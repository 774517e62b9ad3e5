#pragma once

#include <stdexcept>
#include <string>

namespace jxfrft {

/// Caller supplied something outside an operation's domain (bad size, label,
/// profile, config). The CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine failed to deliver its post-condition. Exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace jxfrft
