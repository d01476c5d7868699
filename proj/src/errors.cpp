#include "weilgamma/errors.hpp"

namespace weilgamma {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::NonMonicModulus: return "NonMonicModulus";
    case ErrorKind::CompositeModulusPrime: return "CompositeModulusPrime";
    case ErrorKind::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::RootsUnavailable: return "RootsUnavailable";
    case ErrorKind::RelationViolated: return "RelationViolated";
    case ErrorKind::NotFiniteOrder: return "NotFiniteOrder";
    case ErrorKind::OrderDivisibleByP: return "OrderDivisibleByP";
    case ErrorKind::QNotInvertible: return "QNotInvertible";
    case ErrorKind::RingNotField: return "RingNotField";
    case ErrorKind::NonIntegerTrace: return "NonIntegerTrace";
    case ErrorKind::NonIntegralSwan: return "NonIntegralSwan";
    case ErrorKind::NegativeBreakRank: return "NegativeBreakRank";
    case ErrorKind::DenominatorNotInS: return "DenominatorNotInS";
    case ErrorKind::NumeratorNotInS: return "NumeratorNotInS";
    case ErrorKind::LevelUnsupported: return "LevelUnsupported";
    case ErrorKind::DetTNotUnit: return "DetTNotUnit";
    case ErrorKind::BadPrimeChoice: return "BadPrimeChoice";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "UnknownError";
}

} // namespace weilgamma
