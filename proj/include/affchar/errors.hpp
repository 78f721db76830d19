#pragma once

#include <stdexcept>
#include <string>

namespace affchar {

/// Library error with a stable machine-readable code. The codes follow the
/// names of the violated preconditions (NotPositive, NotCovering, ...), so a
/// caller can surface exactly which requirement failed.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool cond, const std::string& code, const std::string& message) {
    if (!cond) fail(code, message);
}

}  // namespace affchar
