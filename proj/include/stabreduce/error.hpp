#pragma once

#include <stdexcept>
#include <string>

namespace stabreduce {

// Domain errors: bad input, violated preconditions, unsupported sizes.
// The CLI maps these to exit code 1.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Size or scope limits hit (rank caps, degree bounds). Still a domain error.
struct UnsupportedError : DomainError {
    explicit UnsupportedError(const std::string& what) : DomainError(what) {}
};

// Internal invariant violations and failed verification passes.
// The CLI maps these to exit code 2.
struct CheckError : std::runtime_error {
    explicit CheckError(const std::string& what) : std::runtime_error(what) {}
};

#define SR_REQUIRE(cond, msg)                                        \
    do {                                                             \
        if (!(cond)) throw ::stabreduce::DomainError(msg);           \
    } while (0)

#define SR_CHECK(cond, msg)                                          \
    do {                                                             \
        if (!(cond)) throw ::stabreduce::CheckError(msg);            \
    } while (0)

}  // namespace stabreduce
