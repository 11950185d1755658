#pragma once

#include <stdexcept>
#include <string>

namespace cdu {

enum class Errc {
    InvalidArgument,
    ParseError,
    CompositeCharacteristic,
    ReducibleModulus,
    DivisionByZero,
    MixedFields,
    NotADivisor,
    SingularBasis,
    DomainTooLarge,
    NonBijectiveAffine,
    OddCharacteristic,
    SubfieldEscape,
    NonCoprimeDegrees,
    BadChain,
    AlphaOutsideSubfield,
    AlphaZero,
    BaseFieldMismatch,
    CoefficientsNotInSubfield,
    HypothesisViolation,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
    throw Error(code, msg);
}

}  // namespace cdu
