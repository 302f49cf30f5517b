#pragma once

#include <stdexcept>
#include <string>

namespace reeb {

// Root of the library's error hierarchy. Everything thrown on purpose
// derives from this, so callers can catch reeb::Error at the boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

// Operands live over different universes or constraint contexts.
struct ContextMismatch : Error {
    using Error::Error;
};

// Operands live on different charts.
struct ChartMismatch : Error {
    using Error::Error;
};

struct UnknownSymbol : Error {
    explicit UnknownSymbol(const std::string& name)
        : Error("unknown symbol: " + name) {}
};

// A one-form field failed the non-degeneracy test for a contact structure.
struct NotContact : Error {
    using Error::Error;
};

// Contact structures need an odd-dimensional chart.
struct EvenDimension : Error {
    using Error::Error;
};

struct NotTopForm : Error {
    using Error::Error;
};

// A field expected to be tangent to the constraint surface is not.
struct NotTangent : Error {
    using Error::Error;
};

// An operator expected to collapse to multiplication by a scalar did not.
struct NotMultiplication : Error {
    using Error::Error;
};

// A conformal factor must be expressible through the Casimir invariant.
struct NotCasimirFunction : Error {
    using Error::Error;
};

// Plane-wave conjugation is defined for constant-coefficient operators.
struct NonConstantCoefficients : Error {
    using Error::Error;
};

struct SolveFailed : Error {
    using Error::Error;
};

struct OperationCancelled : Error {
    OperationCancelled() : Error("operation cancelled") {}
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

} // namespace reeb
