#pragma once

#include <stdexcept>
#include <string>

namespace valring {

enum class ErrorKind {
    DivisionByZero,
    ZeroPolynomial,
    PrecisionExhausted,
    NotInValuationRing,
    HenselPreconditionFailed,
    ResidueRootInvalid,
    NotAUnit,
    SyntaxError,
    ArityMismatch,
    NotResCofinite,
    VariableLeak,
    NotInvertibleInGL,
    SingularResidueMatrix,
    ResidueChanged,
    DimensionMismatch,
    InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NotInValuationRing: return "NotInValuationRing";
    case ErrorKind::HenselPreconditionFailed: return "HenselPreconditionFailed";
    case ErrorKind::ResidueRootInvalid: return "ResidueRootInvalid";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NotResCofinite: return "NotResCofinite";
    case ErrorKind::VariableLeak: return "VariableLeak";
    case ErrorKind::NotInvertibleInGL: return "NotInvertibleInGL";
    case ErrorKind::SingularResidueMatrix: return "SingularResidueMatrix";
    case ErrorKind::ResidueChanged: return "ResidueChanged";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the CLI)
/// can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class SyntaxError : public Error {
public:
    SyntaxError(int line, int column, const std::string& what)
        : Error(ErrorKind::SyntaxError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace valring
