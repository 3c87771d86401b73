#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fsq {

enum class ErrorKind {
    Parse,
    OutOfRange,
    InvalidArgument,
    Budget,
    NotDendrite,
    OnePointFails,
    NotInAttractor,
    Unbounded,
    NoStabilization,
    Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// A computed fact that contradicts a known structural property of fractal
// squares. Collected, never thrown.
struct Violation {
    std::string code;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

using Violations = std::vector<Violation>;

}  // namespace fsq
