#include "kerramp/langevin.hpp"

#include "kerramp/eigenmodes.hpp"
#include "kerramp/error.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <random>
#include <sstream>

namespace kerramp {

namespace {

constexpr int kSym = 10;
using SymAccum = std::array<double, kSym>;

constexpr std::array<std::pair<int, int>, kSym> kUpper{{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1},
                                                        {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}};

void fail(const std::string& what) {
    throw Error(ErrorKind::ValidationError, what);
}

struct MeanFieldRhs {
    cplx h_aa;
    cplx h_bb;
    double J;
    double K;
    cplx drive;

    void operator()(cplx a, cplx b, cplx& da, cplx& db) const {
        const cplx i(0.0, 1.0);
        da = -i * (h_aa + 2.0 * K * std::norm(a)) * a - i * J * b;
        db = -i * J * a - i * h_bb * b + drive;
    }
};

Matrix4d noise_factor(const Matrix4d& D) {
    if (!D.isApprox(D.transpose(), 1e-12)) {
        throw Error(ErrorKind::NonPSDDiffusion, "diffusion matrix is not symmetric");
    }
    const double scale = std::max(1.0, D.cwiseAbs().maxCoeff());
    if (Matrix4d(D.diagonal().asDiagonal()) == D) {
        if ((D.diagonal().array() < -1e-12 * scale).any()) {
            throw Error(ErrorKind::NonPSDDiffusion, "diffusion matrix has a negative diagonal entry");
        }
        return D.diagonal().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    }
    Eigen::SelfAdjointEigenSolver<Matrix4d> es(D);
    if (es.eigenvalues().minCoeff() < -1e-12 * scale) {
        throw Error(ErrorKind::NonPSDDiffusion, "diffusion matrix has a negative eigenvalue");
    }
    const Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

struct SdePlan {
    Matrix4d step;   // I + R dt
    Matrix4d kick;   // B sqrt(dt)
    long burn = 0;
    long batch_len = 0;
    int batches = 0;
    std::uint64_t seed = 0;
};

// Fills the `batches` batch means of trajectory `traj`.
void run_trajectory(const SdePlan& plan, int traj, SymAccum* out) {
    std::seed_seq seq{static_cast<std::uint32_t>(plan.seed), static_cast<std::uint32_t>(plan.seed >> 32),
                      static_cast<std::uint32_t>(traj), static_cast<std::uint32_t>(
                          static_cast<std::uint64_t>(traj) >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Vector4d u = Eigen::Vector4d::Zero();
    Eigen::Vector4d xi;
    auto advance = [&] {
        for (int k = 0; k < 4; ++k) {
            xi(k) = normal(rng);
        }
        u = plan.step * u + plan.kick * xi;
    };
    for (long n = 0; n < plan.burn; ++n) {
        advance();
    }
    const double inv_len = 1.0 / static_cast<double>(plan.batch_len);
    for (int b = 0; b < plan.batches; ++b) {
        SymAccum acc{};
        for (long n = 0; n < plan.batch_len; ++n) {
            advance();
            for (int e = 0; e < kSym; ++e) {
                acc[e] += u(kUpper[e].first) * u(kUpper[e].second);
            }
        }
        for (double& v : acc) {
            v *= inv_len;
        }
        out[b] = acc;
    }
}

}  // namespace

void IntegrationConfig::validate(double max_rate) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        fail("dt must be > 0");
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        fail("t_max must be > 0");
    }
    if (n_traj < 1) {
        fail("n_traj must be >= 1");
    }
    if (!(burn_in >= 0.0 && burn_in < 1.0)) {
        fail("burn_in must lie in [0, 1)");
    }
    if (batches < 1) {
        fail("batches must be >= 1");
    }
    if (record_stride < 1) {
        fail("record_stride must be >= 1");
    }
    if (!(divergence_threshold > 0.0)) {
        fail("divergence_threshold must be > 0");
    }
    if (max_rate > 0.0 && dt > 1e-3 / max_rate * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "dt = " << dt << " exceeds 1e-3 / max rate = " << 1e-3 / max_rate;
        fail(os.str());
    }
}

double mean_field_rate(const SystemParams& p) {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(effective_hamiltonian(p), false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

MeanFieldTrajectory integrate_mean_field(const SystemParams& p, const DriveParams& drive,
                                         const IntegrationConfig& config, MeanFields initial) {
    p.validate();
    drive.validate();
    config.validate(mean_field_rate(p));

    const MeanFieldRhs rhs{cplx(p.detuning_a(), p.kappa_g - p.kappa_a),
                           cplx(p.detuning_b(), -p.kappa_b), p.J, p.K,
                           std::sqrt(2.0 * p.kappa_b) * drive.epsilon_in(p.kappa_b)};
    const double h = config.dt;
    const long steps = std::lround(config.t_max / h);

    MeanFieldTrajectory traj;
    const auto expected = static_cast<std::size_t>(steps / config.record_stride + 2);
    traj.t.reserve(expected);
    traj.a.reserve(expected);
    traj.b.reserve(expected);
    cplx a = initial.a;
    cplx b = initial.b;
    auto record = [&](long n) {
        traj.t.push_back(static_cast<double>(n) * h);
        traj.a.push_back(a);
        traj.b.push_back(b);
    };
    record(0);
    for (long n = 1; n <= steps; ++n) {
        cplx ka1, kb1, ka2, kb2, ka3, kb3, ka4, kb4;
        rhs(a, b, ka1, kb1);
        rhs(a + 0.5 * h * ka1, b + 0.5 * h * kb1, ka2, kb2);
        rhs(a + 0.5 * h * ka2, b + 0.5 * h * kb2, ka3, kb3);
        rhs(a + h * ka3, b + h * kb3, ka4, kb4);
        a += h / 6.0 * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
        b += h / 6.0 * (kb1 + 2.0 * kb2 + 2.0 * kb3 + kb4);
        const double intensity = std::norm(a);
        if (!(intensity <= config.divergence_threshold)) {
            std::ostringstream os;
            os << "|<a>|^2 = " << intensity << " exceeded " << config.divergence_threshold
               << " at t = " << static_cast<double>(n) * h;
            throw Error(ErrorKind::Diverged, os.str());
        }
        if (n % config.record_stride == 0 || n == steps) {
            record(n);
        }
    }
    return traj;
}

Matrix4d lyapunov_covariance(const Matrix4d& R, const Matrix4d& D) {
    if (!stability(R)) {
        throw Error(ErrorKind::UnstableDrift, "Lyapunov equation needs a stable drift matrix");
    }
    // Column e holds (R E + E R^T) restricted to the upper triangle, where E is
    // the symmetric unit matrix of unknown e.
    Eigen::Matrix<double, kSym, kSym> A;
    Eigen::Matrix<double, kSym, 1> rhs;
    for (int e = 0; e < kSym; ++e) {
        Matrix4d E = Matrix4d::Zero();
        E(kUpper[e].first, kUpper[e].second) = 1.0;
        E(kUpper[e].second, kUpper[e].first) = 1.0;
        const Matrix4d img = R * E + E * R.transpose();
        for (int row = 0; row < kSym; ++row) {
            A(row, e) = img(kUpper[row].first, kUpper[row].second);
        }
        rhs(e) = -D(kUpper[e].first, kUpper[e].second);
    }
    const Eigen::Matrix<double, kSym, 1> x = A.fullPivLu().solve(rhs);
    Matrix4d V;
    for (int e = 0; e < kSym; ++e) {
        V(kUpper[e].first, kUpper[e].second) = x(e);
        V(kUpper[e].second, kUpper[e].first) = x(e);
    }
    return V;
}

CovarianceEstimate integrate_linear_sde(const Matrix4d& R, const Matrix4d& D,
                                        const IntegrationConfig& config, Execution exec) {
    if (!stability(R)) {
        throw Error(ErrorKind::UnstableDrift, "Langevin ensemble needs a stable drift matrix");
    }
    config.validate(spectral_radius(R));
    const Matrix4d factor = noise_factor(D);

    SdePlan plan;
    plan.step = Matrix4d::Identity() + R * config.dt;
    plan.kick = factor * std::sqrt(config.dt);
    const long steps = std::lround(config.t_max / config.dt);
    plan.burn = static_cast<long>(std::floor(config.burn_in * static_cast<double>(steps)));
    plan.batches = config.batches;
    plan.batch_len = (steps - plan.burn) / config.batches;
    plan.seed = config.seed;
    if (plan.batch_len < 1) {
        fail("t_max too short for the requested number of batches");
    }
    const int total = config.n_traj * config.batches;
    if (total < 32) {
        fail("batch means need at least 32 batches (n_traj * batches)");
    }

    std::vector<SymAccum> batch_means(static_cast<std::size_t>(total));
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < config.n_traj; ++k) {
            run_trajectory(plan, k, batch_means.data() + static_cast<std::ptrdiff_t>(k) * plan.batches);
        }
    } else {
        for (int k = 0; k < config.n_traj; ++k) {
            run_trajectory(plan, k, batch_means.data() + static_cast<std::ptrdiff_t>(k) * plan.batches);
        }
    }

    SymAccum mean{};
    for (const auto& bm : batch_means) {
        for (int e = 0; e < kSym; ++e) {
            mean[e] += bm[e];
        }
    }
    for (double& v : mean) {
        v /= total;
    }
    SymAccum var{};
    for (const auto& bm : batch_means) {
        for (int e = 0; e < kSym; ++e) {
            const double d = bm[e] - mean[e];
            var[e] += d * d;
        }
    }
    CovarianceEstimate out;
    out.n_batches = total;
    for (int e = 0; e < kSym; ++e) {
        const double se = std::sqrt(var[e] / (total - 1) / total);
        const auto [i, j] = kUpper[e];
        out.V_hat(i, j) = out.V_hat(j, i) = mean[e];
        out.standard_error(i, j) = out.standard_error(j, i) = se;
    }
    return out;
}

}  // namespace kerramp
