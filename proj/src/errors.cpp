#include "cdu/errors.hpp"

namespace cdu {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::ParseError: return "ParseError";
        case Errc::CompositeCharacteristic: return "CompositeCharacteristic";
        case Errc::ReducibleModulus: return "ReducibleModulus";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::MixedFields: return "MixedFields";
        case Errc::NotADivisor: return "NotADivisor";
        case Errc::SingularBasis: return "SingularBasis";
        case Errc::DomainTooLarge: return "DomainTooLarge";
        case Errc::NonBijectiveAffine: return "NonBijectiveAffine";
        case Errc::OddCharacteristic: return "OddCharacteristic";
        case Errc::SubfieldEscape: return "SubfieldEscape";
        case Errc::NonCoprimeDegrees: return "NonCoprimeDegrees";
        case Errc::BadChain: return "BadChain";
        case Errc::AlphaOutsideSubfield: return "AlphaOutsideSubfield";
        case Errc::AlphaZero: return "AlphaZero";
        case Errc::BaseFieldMismatch: return "BaseFieldMismatch";
        case Errc::CoefficientsNotInSubfield: return "CoefficientsNotInSubfield";
        case Errc::HypothesisViolation: return "HypothesisViolation";
    }
    return "Error";
}

}  // namespace cdu
