#pragma once

// Parameterization of the driven two-mode Kerr amplifier.
//
// Every rate and frequency is expressed in units of kappa_b. Frequencies are
// only ever used through differences, so omega_a defaults to zero and the
// other two frequencies are read as offsets from it.

#include <complex>
#include <string>
#include <vector>

namespace kerramp {

using cplx = std::complex<double>;

struct SystemParams {
    double omega_a{0.0};
    double omega_b{0.0};
    double omega_d{0.0};
    double kappa_a{0.0};
    double kappa_b{1.0};
    double kappa_g{0.0};
    double J{0.0};
    double K{0.0};

    [[nodiscard]] double detuning_a() const noexcept { return omega_a - omega_d; }
    [[nodiscard]] double detuning_b() const noexcept { return omega_b - omega_d; }
    /// Net gain rate of mode a.
    [[nodiscard]] double kappa_n() const noexcept { return kappa_g - kappa_a; }

    /// Throws Error{ValidationError} naming the first offending field.
    void validate() const;

    /// Advisory messages for |K| not small against min(kappa_a, kappa_b).
    [[nodiscard]] std::vector<std::string> advisories() const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct DriveParams {
    double N_in{0.0};
    double theta_0{0.0};

    /// Coherent input amplitude sqrt(2 kappa_b N_in) exp(i theta_0).
    [[nodiscard]] cplx epsilon_in(double kappa_b) const;

    void validate() const;

    friend bool operator==(const DriveParams&, const DriveParams&) = default;
};

}  // namespace kerramp
