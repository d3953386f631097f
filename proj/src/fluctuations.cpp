#include "kerramp/fluctuations.hpp"

#include "kerramp/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace kerramp {

namespace {

constexpr double kSingularRcond = 1e-13;

Eigen::Vector4cd eigenvalues(const Matrix4d& R) {
    Eigen::EigenSolver<Matrix4d> solver(R, /*computeEigenvectors=*/false);
    return solver.eigenvalues();
}

// Shared by the noise gain, which needs only the first row of T.
Eigen::RowVector4cd first_row(const SystemParams& p, const SteadyState& state, double theta,
                              double omega) {
    return susceptibility(drift_matrix(p, state, theta), omega).row(0);
}

}  // namespace

DriftMatrix drift_matrix(const SystemParams& p, const SteadyState& state, double theta) {
    const double net = p.kappa_n();
    const cplx kt = p.K * state.a_mean * state.a_mean * std::polar(1.0, -2.0 * theta);
    DriftMatrix d;
    d.theta = theta;
    d.K_x = kt.real();
    d.K_y = kt.imag();
    d.detuning_a_eff = p.detuning_a() + 4.0 * p.K * std::norm(state.a_mean);
    d.detuning_b_eff = p.detuning_b();
    const double da = d.detuning_a_eff;
    const double db = d.detuning_b_eff;
    const double kx = d.K_x;
    const double ky = d.K_y;
    // clang-format off
    d.R << net + 2.0 * ky,  da - 2.0 * kx,   0.0,         p.J,
           -da - 2.0 * kx,  net - 2.0 * ky,  -p.J,        0.0,
           0.0,             p.J,             -p.kappa_b,  db,
           -p.J,            0.0,             -db,         -p.kappa_b;
    // clang-format on
    return d;
}

double max_real_eigenvalue(const Matrix4d& R) {
    return eigenvalues(R).real().maxCoeff();
}

double spectral_radius(const Matrix4d& R) {
    return eigenvalues(R).cwiseAbs().maxCoeff();
}

bool stability(const Matrix4d& R) {
    return max_real_eigenvalue(R) < kStabilityMargin;
}

Matrix4d diffusion_matrix(const SystemParams& p, double /*theta*/) {
    const double a = p.kappa_a + p.kappa_g;
    return Eigen::Vector4d(a, a, p.kappa_b, p.kappa_b).asDiagonal();
}

NoiseInputMap noise_input_map(const SystemParams& p, double theta) {
    const double sa = std::sqrt(2.0 * p.kappa_a);
    const double sg = std::sqrt(2.0 * p.kappa_g);
    const double sb = std::sqrt(2.0 * p.kappa_b);
    const double c = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    NoiseInputMap b = NoiseInputMap::Zero();
    b(0, 0) = sa;
    b(0, 2) = sg * c;
    b(0, 3) = -sg * s;
    b(1, 1) = sa;
    b(1, 2) = -sg * s;
    b(1, 3) = -sg * c;
    b(2, 4) = sb;
    b(3, 5) = sb;
    return b;
}

Matrix4cd susceptibility(const DriftMatrix& drift, double omega) {
    Matrix4cd m = drift.R.cast<cplx>();
    m.diagonal().array() += cplx(0.0, omega);
    Eigen::PartialPivLU<Matrix4cd> lu(m);
    if (!(lu.rcond() > kSingularRcond)) {
        std::ostringstream os;
        os << "R + i w I is singular at w = " << omega;
        throw Error(ErrorKind::SingularAtFrequency, os.str());
    }
    return -lu.inverse();
}

double noise_gain(const SystemParams& p, const SteadyState& state, double theta, double omega) {
    const auto t = first_row(p, state, theta, omega);
    const double ka = p.kappa_a;
    const double a11 = std::norm(t(0));
    const double a12 = std::norm(t(1));
    return std::norm(1.0 - 2.0 * ka * t(0)) + 4.0 * ka * ka * a12 +
           4.0 * ka * p.kappa_g * (a11 + a12) + 4.0 * ka * p.kappa_b * (std::norm(t(2)) + std::norm(t(3)));
}

double output_spectrum(const SystemParams& p, const SteadyState& state, double theta,
                       double omega) {
    const Matrix4cd t = susceptibility(drift_matrix(p, state, theta), omega);
    const NoiseInputMap b = noise_input_map(p, theta);
    Eigen::Matrix<cplx, 1, 6> out = -std::sqrt(2.0 * p.kappa_a) * (t.row(0) * b.cast<cplx>());
    out(0) += 1.0;
    // Each input quadrature carries symmetrized vacuum noise 1/2.
    return 0.5 * out.cwiseAbs2().sum();
}

double noise_figure(double G_n, double G_s) {
    if (!(G_s > 0.0)) {
        throw Error(ErrorKind::ZeroSignalGain, "noise figure needs G_s > 0");
    }
    return G_n / G_s;
}

NoiseResult analyze_noise(const SystemParams& p, const DriveParams& drive, const SteadyState& state,
                          double theta, double omega) {
    NoiseResult r;
    r.G_n = noise_gain(p, state, theta, omega);
    r.S_out = output_spectrum(p, state, theta, omega);
    r.F = noise_figure(r.G_n, signal_gain(p, drive, state, theta));
    r.stable = state.stable;
    return r;
}

BrightNoiseAnalytics bright_noise_analytics(const SystemParams& p, const DriveParams& drive) {
    const auto sig = bright_analytics(p, drive);
    const double net = p.kappa_n();
    BrightNoiseAnalytics out;
    out.F_highgain = 2.0 * (p.kappa_a + net) / (9.0 * net);
    out.G_n_bm = 1.0 + sig.G_s * out.F_highgain;
    out.F_bm = 1.0 / sig.G_s + out.F_highgain;
    return out;
}

}  // namespace kerramp
