#pragma once

#include <stdexcept>
#include <string>

namespace borsut {

enum class Errc {
    ClosedComponent,
    BadMatching,
    AlgebraMismatch,
    Incompatible,
    BadSubset,
    NotAComplex,
    NotAMorphism,
    Mismatch,
    Unbounded,
    ParseError,
    NotNice,
    Disconnected,
    FailsVerification,
    GradingInconsistent,
    NoStabilization,
    NotEventuallyStable,
    FamilyNotCompatible,
    NotACycle,
    Usage,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace borsut
