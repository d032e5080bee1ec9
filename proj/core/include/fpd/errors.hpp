#pragma once

#include <stdexcept>
#include <string>

namespace fpd {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Domain validation failed: out-of-range argument, inconsistent spec fields.
class InvalidSpecError : public Error {
public:
    using Error::Error;
};

// Text input (netlist, Touchstone, plan file) could not be parsed.
// line/column are 1-based; 0 means the position is not known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, int line = 0, int column = 0)
        : Error(compose(msg, line, column)), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string compose(const std::string& msg, int line, int column) {
        if (line <= 0) return msg;
        std::string s = "line " + std::to_string(line);
        if (column > 0) s += ", column " + std::to_string(column);
        return s + ": " + msg;
    }

    int line_;
    int column_;
};

// File could not be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

// A sweep lacks the structure an extraction needs (no resonance, wrong
// number of transmission peaks, grid too coarse to unwrap phase).
class ExtractionError : public Error {
public:
    using Error::Error;
};

// Linear solve failed: singular or near-singular system.
class SolverError : public Error {
public:
    using Error::Error;
};

}  // namespace fpd
