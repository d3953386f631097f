#include "kerramp/error.hpp"

namespace kerramp {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DegenerateEigenmodes: return "DegenerateEigenmodes";
        case ErrorKind::NoBrightPoint: return "NoBrightPoint";
        case ErrorKind::AmbiguousRoot: return "AmbiguousRoot";
        case ErrorKind::ZeroCoupling: return "ZeroCoupling";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::NotBrightPoint: return "NotBrightPoint";
        case ErrorKind::ZeroKerr: return "ZeroKerr";
        case ErrorKind::SingularAtFrequency: return "SingularAtFrequency";
        case ErrorKind::ZeroSignalGain: return "ZeroSignalGain";
        case ErrorKind::Diverged: return "Diverged";
        case ErrorKind::UnstableDrift: return "UnstableDrift";
        case ErrorKind::NonPSDDiffusion: return "NonPSDDiffusion";
        case ErrorKind::EmptyBand: return "EmptyBand";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::UnknownKey: return "UnknownKey";
    }
    return "Unknown";
}

}  // namespace kerramp
