#pragma once

// Time-domain oracles for the steady-state and noise modules:
//  * RK4 integration of the nonlinear mean-field equations,
//  * a direct Lyapunov solve for the stationary fluctuation covariance,
//  * an Euler-Maruyama ensemble of the linear Langevin equation.

#include "kerramp/execution.hpp"
#include "kerramp/fluctuations.hpp"
#include "kerramp/params.hpp"
#include "kerramp/steady_state.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace kerramp {

struct IntegrationConfig {
    double dt{1e-3};
    double t_max{500.0};
    int n_traj{1};
    std::uint64_t seed{0};
    double burn_in{0.2};
    int batches{32};  // batch-means blocks per trajectory
    double divergence_threshold{1e12};
    int record_stride{1000};

    /// Checks the field ranges and dt <= 1e-3 / max_rate.
    void validate(double max_rate) const;
};

struct MeanFieldTrajectory {
    std::vector<double> t;
    std::vector<cplx> a;
    std::vector<cplx> b;

    [[nodiscard]] double terminal_intensity() const { return std::norm(a.back()); }
};

struct CovarianceEstimate {
    Matrix4d V_hat{Matrix4d::Zero()};
    Matrix4d standard_error{Matrix4d::Zero()};
    int n_batches{0};
};

/// Largest rate of the Kerr-free mean-field generator, used for the step bound.
[[nodiscard]] double mean_field_rate(const SystemParams& params);

/// Fixed-step RK4 from `initial`. Samples every `record_stride` steps plus the
/// final state. Throws Diverged once |<a>|^2 exceeds the divergence threshold.
[[nodiscard]] MeanFieldTrajectory integrate_mean_field(const SystemParams& params,
                                                       const DriveParams& drive,
                                                       const IntegrationConfig& config,
                                                       MeanFields initial = {});

/// Solves R V + V R^T + D = 0 over the ten independent entries of symmetric V.
[[nodiscard]] Matrix4d lyapunov_covariance(const Matrix4d& R, const Matrix4d& D);

/// Time- and ensemble-averaged <u u^T> after burn-in, with batch-means errors.
/// Trajectory k draws from its own stream seeded by (seed, k); results do not
/// depend on the execution policy or thread count.
[[nodiscard]] CovarianceEstimate integrate_linear_sde(const Matrix4d& R, const Matrix4d& D,
                                                      const IntegrationConfig& config,
                                                      Execution exec = Execution::Parallel);

}  // namespace kerramp
