#pragma once

#include <stdexcept>
#include <string>

namespace gridlab {

/// Base for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidRepresentation : public Error {
public:
    using Error::Error;
};

class VertexMismatch : public Error {
public:
    using Error::Error;
};

class EmptyRepresentation : public Error {
public:
    using Error::Error;
};

class PerturbationFailed : public Error {
public:
    using Error::Error;
};

class NotUnitMode : public Error {
public:
    using Error::Error;
};

class NotGeneralPosition : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class LevelTooSmall : public Error {
public:
    using Error::Error;
};

class InvalidTrace : public Error {
public:
    using Error::Error;
};

class ArityError : public Error {
public:
    using Error::Error;
};

class GirthTooSmall : public Error {
public:
    using Error::Error;
};

class UnsupportedVariant : public Error {
public:
    using Error::Error;
};

class UnsatisfiableAssignment : public Error {
public:
    using Error::Error;
};

class RoutingFailure : public Error {
public:
    using Error::Error;
};

class InvalidInstance : public Error {
public:
    using Error::Error;
};

/// Parse failure with a 1-based source position. `line2` is set when the
/// problem is a conflict between two lines.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column = 0, int line2 = 0)
        : Error(format(what, line, column, line2)), line_(line), column_(column), line2_(line2) {}

    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }
    [[nodiscard]] int other_line() const { return line2_; }

private:
    static std::string format(const std::string& what, int line, int column, int line2) {
        std::string s = "line " + std::to_string(line);
        if (column > 0) s += ", column " + std::to_string(column);
        if (line2 > 0) s += " (conflicts with line " + std::to_string(line2) + ")";
        return s + ": " + what;
    }

    int line_;
    int column_;
    int line2_;
};

}  // namespace gridlab
