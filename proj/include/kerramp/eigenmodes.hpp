#pragma once

// Linear (Kerr-free) eigenanalysis of the two coupled modes: complex
// eigenfrequencies, eigenmode coefficients and the gain rate at which the
// collective mode P- stops decaying.

#include "kerramp/error.hpp"
#include "kerramp/params.hpp"

#include <Eigen/Dense>

#include <vector>

namespace kerramp {

struct EigenCoefficients {
    cplx Delta_tilde;  // complex detuning sum
    cplx delta_tilde;  // complex detuning difference
    double C1{0.0};
    double C2{0.0};
};

struct Eigenfrequencies {
    cplx plus;
    cplx minus;
    bool exceptional_point{false};
};

struct Eigenmodes {
    cplx m_plus;
    cplx m_minus;
};

struct EigenSolution {
    cplx omega_tilde_plus;
    cplx omega_tilde_minus;
    cplx m_plus;
    cplx m_minus;
    double C1{0.0};
    double C2{0.0};
    cplx Delta_tilde;
    cplx delta_tilde;
};

struct BrightPoint {
    double kappa_g_star{0.0};
    double omega_d_star{0.0};
    double kappa_n{0.0};
};

/// Raised when more than one gain rate satisfies the bright condition.
class AmbiguousRootError : public Error {
public:
    explicit AmbiguousRootError(std::vector<BrightPoint> roots);
    [[nodiscard]] const std::vector<BrightPoint>& roots() const noexcept { return roots_; }

private:
    std::vector<BrightPoint> roots_;
};

/// Relative splitting below which the two eigenfrequencies are treated as coalesced.
inline constexpr double kDegeneracyTolerance = 1e-10;

/// Non-Hermitian 2x2 generator H of the undriven, Kerr-free mean-field dynamics.
[[nodiscard]] Eigen::Matrix2cd effective_hamiltonian(const SystemParams& params);

[[nodiscard]] EigenCoefficients eigen_coefficients(const SystemParams& params);

/// The "+" branch takes the square root of the discriminant aligned with the
/// complex detuning (Re(r * conj(Delta_tilde)) >= 0), starting from the
/// principal root. At a bright point this makes omega_tilde_minus the
/// non-decaying eigenvalue.
[[nodiscard]] Eigenfrequencies eigenfrequencies(const SystemParams& params);

/// P+ = m+ a + m- b and P- = m- a - m+ b. Throws DegenerateEigenmodes at an
/// exceptional point.
[[nodiscard]] Eigenmodes eigenmodes(const SystemParams& params);

[[nodiscard]] EigenSolution eigen_solution(const SystemParams& params);

/// Left side minus right side of the bright-mode gain condition, as a function
/// of the gain rate. Zero at kappa_g*.
[[nodiscard]] double bright_condition_residual(const SystemParams& params, double kappa_g);

/// Gain rate in (kappa_a, kappa_a + kappa_b) that removes the decay of P-, and
/// the drive frequency resonant with it. kappa_g and omega_d of the input are
/// ignored.
[[nodiscard]] BrightPoint solve_bright_gain(const SystemParams& params);

/// Copy of `params` with kappa_g and omega_d moved to the bright point.
[[nodiscard]] SystemParams at_bright_point(SystemParams params, const BrightPoint& bp);

}  // namespace kerramp
