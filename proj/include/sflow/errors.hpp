#pragma once

#include <stdexcept>
#include <string>

namespace sflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error {
    explicit FieldMismatch(const std::string& what) : Error("field mismatch: " + what) {}
};
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};
struct SingularMatrix : Error {
    SingularMatrix() : Error("matrix is singular") {}
};
struct NotAMap : Error {
    explicit NotAMap(const std::string& what) : Error("relation is not a map: " + what) {}
};
struct UnknownGenerator : Error {
    explicit UnknownGenerator(const std::string& name) : Error("unknown generator: " + name) {}
};
struct SyntaxError : Error {
    size_t pos;
    SyntaxError(const std::string& what, size_t at)
        : Error("syntax error at " + std::to_string(at) + ": " + what), pos(at) {}
};
struct ArityError : Error {
    explicit ArityError(const std::string& what) : Error("arity error: " + what) {}
};
struct NoMatch : Error {
    explicit NoMatch(const std::string& what) : Error("rule does not match: " + what) {}
};
struct BadPath : Error {
    explicit BadPath(const std::string& what) : Error("bad subterm path: " + what) {}
};
struct NotContFlow : Error {
    explicit NotContFlow(const std::string& what) : Error("not a state-realizable diagram: " + what) {}
};
struct HomViolation : Error {
    explicit HomViolation(const std::string& what) : Error("homomorphism condition failed: " + what) {}
};
struct FieldModeMismatch : Error {
    explicit FieldModeMismatch(const std::string& what) : Error("field/mode mismatch: " + what) {}
};

} // namespace sflow
