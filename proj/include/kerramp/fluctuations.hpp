#pragma once

// Linearized quadrature fluctuations around a mean-field steady state.
//
// Basis u = (dX_a, dY_a, dX_b, dY_b) at quadrature angle theta; du/dt = R u + sigma
// with vacuum noise inputs. The output quadrature of mode a is
// dX_out = dX_in - sqrt(2 kappa_a) sum_j T_1j sigma_j with T(w) = -(R + i w)^-1.

#include "kerramp/params.hpp"
#include "kerramp/steady_state.hpp"

#include <Eigen/Dense>

namespace kerramp {

using Matrix4d = Eigen::Matrix4d;
using Matrix4cd = Eigen::Matrix4cd;
using NoiseInputMap = Eigen::Matrix<double, 4, 6>;

struct DriftMatrix {
    Matrix4d R{Matrix4d::Zero()};
    double detuning_a_eff{0.0};  // Delta_a + 4 K |<a>|^2
    double detuning_b_eff{0.0};
    double K_x{0.0};
    double K_y{0.0};
    double theta{0.0};
};

struct NoiseResult {
    double G_n{0.0};
    double S_out{0.0};
    double F{0.0};
    bool stable{false};
};

struct BrightNoiseAnalytics {
    double G_n_bm{0.0};
    double F_bm{0.0};
    double F_highgain{0.0};
};

/// Largest real part allowed for a drift eigenvalue of a stable state.
inline constexpr double kStabilityMargin = -1e-10;

[[nodiscard]] DriftMatrix drift_matrix(const SystemParams& params, const SteadyState& state,
                                       double theta);

[[nodiscard]] double max_real_eigenvalue(const Matrix4d& R);
[[nodiscard]] double spectral_radius(const Matrix4d& R);
[[nodiscard]] bool stability(const Matrix4d& R);
[[nodiscard]] inline bool stability(const DriftMatrix& drift) { return stability(drift.R); }

/// Symmetrized vacuum correlators of the noise vector: diag(ka + kg, ka + kg, kb, kb).
[[nodiscard]] Matrix4d diffusion_matrix(const SystemParams& params, double theta);

/// Map from the six vacuum input quadratures (X_a, Y_a, X_g, Y_g, X_b, Y_b)
/// onto the four noise sources sigma.
[[nodiscard]] NoiseInputMap noise_input_map(const SystemParams& params, double theta);

/// T(w) = -(R + i w I)^-1. Throws SingularAtFrequency when R + i w I is singular.
[[nodiscard]] Matrix4cd susceptibility(const DriftMatrix& drift, double omega);

/// Noise gain from the first row of T(omega), closed sum over noise channels.
[[nodiscard]] double noise_gain(const SystemParams& params, const SteadyState& state, double theta,
                                double omega = 0.0);

/// Symmetrized output spectrum of dX_out at omega, summed over input quadratures
/// through the full noise-input map. Equals noise_gain / 2.
[[nodiscard]] double output_spectrum(const SystemParams& params, const SteadyState& state,
                                     double theta, double omega = 0.0);

/// F = G_n / G_s. Throws ZeroSignalGain for G_s <= 0.
[[nodiscard]] double noise_figure(double G_n, double G_s);

[[nodiscard]] NoiseResult analyze_noise(const SystemParams& params, const DriveParams& drive,
                                        const SteadyState& state, double theta,
                                        double omega = 0.0);

/// Closed-form noise gain and noise figure at a bright point, and the high-gain limit.
[[nodiscard]] BrightNoiseAnalytics bright_noise_analytics(const SystemParams& params,
                                                          const DriveParams& drive);

}  // namespace kerramp
