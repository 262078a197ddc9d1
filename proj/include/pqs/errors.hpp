#pragma once

#include <stdexcept>
#include <string>

namespace pqs {

// Error taxonomy shared by the library and the CLI front end. The CLI maps
// each class to a distinct process exit code (see tools/pqs.cpp).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

// Arithmetic between elements of different prime fields.
struct MixedField : Error {
    explicit MixedField(const std::string& what) : Error(what) {}
};

// The two quadrics span a line, not a plane, over the fraction field.
struct DependentPencil : Error {
    DependentPencil() : Error("quadrics are linearly dependent over K") {}
};

struct ZeroForm : Error {
    ZeroForm() : Error("operation requires a nonzero quadratic form") {}
};

struct ZeroPencil : Error {
    ZeroPencil() : Error("both central-fibre forms are zero") {}
};

struct NonSmoothGenericFibre : Error {
    NonSmoothGenericFibre() : Error("generic fibre is not smooth") {}
};

// A computed quantity contradicts an identity the implementation is
// required to maintain; fatal, since it falsifies either the code or the
// transcription of the input.
struct InternalInvariantViolation : Error {
    explicit InternalInvariantViolation(const std::string& what) : Error(what) {}
};

struct FieldTooLarge : Error {
    explicit FieldTooLarge(const std::string& what) : Error(what) {}
};

struct PointNotOnFibre : Error {
    PointNotOnFibre() : Error("point does not lie on the central fibre") {}
};

struct UnsupportedField : Error {
    explicit UnsupportedField(const std::string& what) : Error(what) {}
};

// Input-syntax error with a position (offset within the offending literal,
// or line/column within a file).
struct ParseError : Error {
    std::size_t line = 0;
    std::size_t column = 0;
    ParseError(const std::string& what, std::size_t line_, std::size_t column_)
        : Error(what), line(line_), column(column_) {}
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace pqs
