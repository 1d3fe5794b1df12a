#pragma once

#include <stdexcept>
#include <string>

namespace gl3lab {

enum class Errc {
    NotInvertible,
    NonCoprimeFactors,
    CompositeModulus,
    InvalidModulus,
    WorkCapExceeded,
    NonCoprime,
    PreconditionViolated,
    DegenerateInput,
    FaceNotOfThisPolyhedron,
    QuadratureFailure,
    NoConvergence,
    DegenerateStationaryPoint,
    DomainViolation,
    PoleEncountered,
    ContourTooClose,
    AsymptoticRegimeViolated,
    TruncationInsufficient,
    SamplingTooCoarse,
    PowerIterationNoConvergence,
    InsufficientPoints,
    ConfigError,
};

const char* errc_name(Errc e);

// Every failure the library reports carries one of the codes above; the CLI maps
// WorkCapExceeded to exit 3 and ConfigError to exit 2.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc e) {
    switch (e) {
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::NonCoprimeFactors: return "NonCoprimeFactors";
    case Errc::CompositeModulus: return "CompositeModulus";
    case Errc::InvalidModulus: return "InvalidModulus";
    case Errc::WorkCapExceeded: return "WorkCapExceeded";
    case Errc::NonCoprime: return "NonCoprime";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::FaceNotOfThisPolyhedron: return "FaceNotOfThisPolyhedron";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::DegenerateStationaryPoint: return "DegenerateStationaryPoint";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::PoleEncountered: return "PoleEncountered";
    case Errc::ContourTooClose: return "ContourTooClose";
    case Errc::AsymptoticRegimeViolated: return "AsymptoticRegimeViolated";
    case Errc::TruncationInsufficient: return "TruncationInsufficient";
    case Errc::SamplingTooCoarse: return "SamplingTooCoarse";
    case Errc::PowerIterationNoConvergence: return "PowerIterationNoConvergence";
    case Errc::InsufficientPoints: return "InsufficientPoints";
    case Errc::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

} // namespace gl3lab
