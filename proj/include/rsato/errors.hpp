#pragma once

#include <stdexcept>
#include <string>

namespace rsato {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numeric precondition failed (square root of a non-positive ball,
/// division by a ball containing zero, non-invertible leading coefficient).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two quadratic-field elements from different fields were combined.
class FieldMismatch : public Error {
public:
    FieldMismatch(long lhs, long rhs)
        : Error("quadratic field mismatch: sqrt(" + std::to_string(lhs) + ") vs sqrt(" +
                std::to_string(rhs) + ")") {}
};

/// express_in_x found a nonzero residual past the requested degree.
class NotPolynomial : public Error {
public:
    NotPolynomial(int max_degree, long exponent)
        : Error("not a polynomial of degree <= " + std::to_string(max_degree) +
                ": residual nonzero at q^" + std::to_string(exponent)),
          first_failing_exponent(exponent) {}
    long first_failing_exponent;
};

/// Requested feature is outside the documented scope.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// Text input (group file, radical expression, rational literal) is malformed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
                what),
          line(line), column(column) {}
    int line;
    int column;
};

/// A group record violates one of its structural invariants.
class InvariantViolation : public Error {
public:
    InvariantViolation(const std::string& label, const std::string& field,
                       const std::string& detail)
        : Error("group " + label + ": invalid " + field + ": " + detail), label(label),
          field(field) {}
    std::string label;
    std::string field;
};

/// An identity that must hold exactly (fixed point, symmetry, Galois
/// cancellation, branch choice) did not.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

/// The series did not converge within the configured limits.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Lookup of a group label that is not in the registry.
class UnknownGroup : public Error {
public:
    explicit UnknownGroup(const std::string& label) : Error("unknown group label: " + label) {}
};

} // namespace rsato
