#pragma once

#include <stdexcept>
#include <string>

namespace weilgamma {

// Every failure mode named by the library surfaces as one of these kinds.
// Parse-class kinds map to CLI exit code 2, math-class kinds to exit code 3.
enum class ErrorKind {
    // construction / descriptor errors
    NonMonicModulus,
    CompositeModulusPrime,
    DescriptorMismatch,
    UnsupportedRing,
    // unit / arithmetic errors
    NotAUnit,
    RootsUnavailable,
    // representation errors
    RelationViolated,
    NotFiniteOrder,
    OrderDivisibleByP,
    QNotInvertible,
    RingNotField,
    NonIntegerTrace,
    NonIntegralSwan,
    NegativeBreakRank,
    // fraction errors
    DenominatorNotInS,
    NumeratorNotInS,
    // local factor errors
    LevelUnsupported,
    DetTNotUnit,
    BadPrimeChoice,
    // input errors
    ParseError,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    bool is_parse_error() const { return kind_ == ErrorKind::ParseError; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace weilgamma
