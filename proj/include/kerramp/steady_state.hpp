#pragma once

// Classical mean-field steady state of the driven Kerr amplifier: the cubic
// intensity equation, the complex mean fields, output amplitude and signal gain.

#include "kerramp/params.hpp"

#include <vector>

namespace kerramp {

/// c3 x^3 + c2 x^2 + c1 x - N_in = 0 in x = |<a>|^2.
struct CubicProblem {
    double c1{0.0};
    double c2{0.0};
    double c3{0.0};

    [[nodiscard]] double residual(double x, double n_in) const noexcept {
        return ((c3 * x + c2) * x + c1) * x - n_in;
    }
};

struct MeanFields {
    cplx a;
    cplx b;
};

struct SteadyState {
    double intensity{0.0};
    cplx a_mean;
    cplx b_mean;
    cplx a_out_mean;
    double theta_s{0.0};  // arg(a_out) - theta_0, wrapped to (-pi, pi]
    bool stable{false};
};

/// Every nonnegative intensity root with its state, ascending in intensity.
struct SteadyStateSolution {
    std::vector<SteadyState> branches;

    /// Lowest-intensity stable branch, or nullptr.
    [[nodiscard]] const SteadyState* lowest_stable() const noexcept;
    [[nodiscard]] std::size_t stable_count() const noexcept;
};

struct BrightAnalytics {
    double intensity{0.0};
    cplx a_out;
    double G_s{0.0};
};

/// |C1|, |C2| bound used to accept parameters as a bright point.
inline constexpr double kBrightTolerance = 1e-8;

[[nodiscard]] CubicProblem cubic_coefficients(const SystemParams& params, const DriveParams& drive);

/// Real nonnegative roots, ascending. Closed-form cubic followed by Newton
/// polishing. Empty when K = 0 and the linear response diverges.
[[nodiscard]] std::vector<double> solve_intensity(const CubicProblem& problem,
                                                  const DriveParams& drive);

/// Steady-state fields for a frozen intensity |<a>|^2.
[[nodiscard]] MeanFields mean_fields(const SystemParams& params, const DriveParams& drive,
                                     double intensity);

/// Output field of mode a for a given intracavity mean, a_out = -sqrt(2 kappa_a) <a>.
[[nodiscard]] cplx output_amplitude(const SystemParams& params, cplx a_mean);

/// Assemble the state (fields, output, phase, stability) for one intensity root.
[[nodiscard]] SteadyState make_steady_state(const SystemParams& params, const DriveParams& drive,
                                            double intensity);

[[nodiscard]] SteadyStateSolution solve_steady_state(const SystemParams& params,
                                                     const DriveParams& drive);

/// Quadrature signal gain <X_out>^2 / (2 |eps_in|^2) at quadrature angle theta.
[[nodiscard]] double signal_gain(const SystemParams& params, const DriveParams& drive,
                                 const SteadyState& state, double theta);

/// Signal gain in the quadrature aligned with the output, theta = theta_s + theta_0.
[[nodiscard]] double signal_gain(const SystemParams& params, const DriveParams& drive,
                                 const SteadyState& state);

/// Arg(1 - i Delta_b / kappa_b): the output phase shift at a bright point.
[[nodiscard]] double bright_phase_shift(const SystemParams& params);

[[nodiscard]] bool is_bright_point(const SystemParams& params, double tol = kBrightTolerance);

/// Closed-form saturated intensity, output amplitude and gain at a bright point.
[[nodiscard]] BrightAnalytics bright_analytics(const SystemParams& params, const DriveParams& drive);

}  // namespace kerramp
