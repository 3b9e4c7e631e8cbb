#pragma once

#include <stdexcept>
#include <string>

namespace anchorlab {

// Requested truncation side of a distribution holds no probability mass.
class EmptySideError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Stationary solve did not converge within the iteration cap.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A variance came out below -1e-12; indicates a bug, not an input problem.
class NegativeVarianceError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class FileNotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input row; the message names the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class EmptySeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientOverlapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SeriesTooShortError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace anchorlab
