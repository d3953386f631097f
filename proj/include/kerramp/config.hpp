#pragma once

// Run configuration: an INI-style text format.
//
//   # comment
//   [system]
//   omega_b = 0.2        # frequencies are offsets from omega_a
//   J = 0.8660254037844386
//
// Sections: system, drive, kappa_g_sweep, kappa_a_sweep, detuning, gbp, mc, output.
// Unknown sections or keys are rejected; every error names its line.

#include "kerramp/langevin.hpp"
#include "kerramp/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kerramp {

struct GridConfig {
    double start{0.0};
    double stop{0.0};
    int points{0};

    friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct McConfig {
    std::optional<double> dt;  // unset: 1e-3 / spectral radius of each drift matrix
    double t_max{4000.0};
    int n_traj{8};
    double burn_in{0.05};
    int batches{32};
    std::vector<double> deltas{0.0, -0.1, 0.1};
    double mean_field_t_max{500.0};

    friend bool operator==(const McConfig&, const McConfig&) = default;
};

struct RunConfig {
    SystemParams system;
    DriveParams drive;
    std::optional<double> theta_s;
    double omega{0.0};
    GridConfig kappa_g_sweep{0.25, 1.25, 401};
    GridConfig kappa_a_sweep{0.05, 0.5, 401};
    std::optional<double> kappa_n;  // kappa_a sweep; unset: baseline kappa_g - kappa_a
    GridConfig detuning{-2.0, 2.0, 2001};
    std::vector<double> gbp_N_in{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<double> gbp_K{1e-4, 5e-5};
    McConfig mc;
    std::uint64_t seed{0};
    std::string output;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ParseError, UnknownKey or ValidationError.
[[nodiscard]] RunConfig parse_config(std::string_view text);

[[nodiscard]] RunConfig load_config(const std::string& path);

/// Text that parse_config maps back to an equal RunConfig.
[[nodiscard]] std::string to_text(const RunConfig& config);

/// Shortest round-trip-safe decimal form (17 significant digits).
[[nodiscard]] std::string format_double(double value);

}  // namespace kerramp
