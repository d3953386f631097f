#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kerramp {

enum class ErrorKind {
    DegenerateEigenmodes,
    NoBrightPoint,
    AmbiguousRoot,
    ZeroCoupling,
    SingularSystem,
    ZeroInput,
    NotBrightPoint,
    ZeroKerr,
    SingularAtFrequency,
    ZeroSignalGain,
    Diverged,
    UnstableDrift,
    NonPSDDiffusion,
    EmptyBand,
    ParseError,
    ValidationError,
    UnknownKey,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// All library failures surface as this exception; `kind()` identifies the condition.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace kerramp
