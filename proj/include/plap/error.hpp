#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plap {

enum class ErrorKind {
    InvalidGrid,
    InvalidParams,
    ZeroFunction,
    NotInW,
    InvalidScale,
    SingularGradient,
    OutsideWindow,
    NoConvergence,
    NoBracket,
    DegenerateLinear,
    IntegrationStall,
    Io,
};

std::string_view to_string(ErrorKind kind);

// Every recoverable failure in the library is reported through this type;
// callers branch on kind() rather than on the message text.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace plap
