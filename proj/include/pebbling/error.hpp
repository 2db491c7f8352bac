#pragma once

#include <stdexcept>
#include <string>

namespace pebbling {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Search cap or state budget hit: the answer is inconclusive, not wrong.
struct CapExceeded : Error {
    explicit CapExceeded(const std::string& msg) : Error(msg) {}
};

struct SolverError : Error {
    explicit SolverError(const std::string& msg) : Error(msg) {}
};

// Solver output that cannot be turned into a valid certificate.
struct ExtractionError : Error {
    explicit ExtractionError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace pebbling
