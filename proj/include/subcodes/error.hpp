#pragma once

#include <stdexcept>
#include <string>

namespace subcodes {

enum class Errc {
    NotPrime,
    NotPrimitive,
    DegreeMismatch,
    TooLarge,
    NoDefault,
    ZeroInverse,
    NotASubspace,
    ExponentOutOfRange,
    DuplicateExponent,
    AllZero,
    FieldMismatch,
    BadModulus,
    ResourceLimit,
    OddDistance,
    NotADivisor,
    TooSmall,
    SameOrbit,
    VerificationFailed,
    ParseError,
    InvalidArgument,
};

constexpr const char* errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NoDefault: return "NoDefault";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::NotASubspace: return "NotASubspace";
    case Errc::ExponentOutOfRange: return "ExponentOutOfRange";
    case Errc::DuplicateExponent: return "DuplicateExponent";
    case Errc::AllZero: return "AllZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::BadModulus: return "BadModulus";
    case Errc::ResourceLimit: return "ResourceLimit";
    case Errc::OddDistance: return "OddDistance";
    case Errc::NotADivisor: return "NotADivisor";
    case Errc::TooSmall: return "TooSmall";
    case Errc::SameOrbit: return "SameOrbit";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable error code next to the message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace subcodes
