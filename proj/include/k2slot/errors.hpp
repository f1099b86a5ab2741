#pragma once

#include <stdexcept>
#include <string>

namespace k2slot {

// Every library error carries a stable symbolic name next to the
// human-readable message. The CLI keys its exit codes off the category:
// MathError (violated precondition, resource cap, internal consistency
// failure) maps to exit code 1, InputError (syntax, semantics) to 2.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class MathError : public Error {
public:
    using Error::Error;
};

class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace k2slot
