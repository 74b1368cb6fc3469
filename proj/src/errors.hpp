// Error hierarchy shared by the whole library.
#pragma once

#include <stdexcept>
#include <string>

namespace lchs {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Iteration did not reach the requested tolerance; carries the gap between
// the last two iterates so callers can judge how far off it was.
struct ConvergenceError : Error {
    double last_delta;
    ConvergenceError(const std::string& msg, double delta)
        : Error(msg + " (last iterate distance " + std::to_string(delta) + ")"),
          last_delta(delta) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace lchs
