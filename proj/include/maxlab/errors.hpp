#pragma once

#include <stdexcept>
#include <string>

namespace maxlab {

/// Bad user input: malformed config, mismatched grids, precondition failures.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical invariant the pipeline relies on was violated at runtime.
class InvariantViolation : public std::runtime_error {
public:
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace maxlab
