#include "kerramp/steady_state.hpp"

#include "kerramp/eigenmodes.hpp"
#include "kerramp/error.hpp"
#include "kerramp/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace kerramp {

namespace {

constexpr int kPolishSteps = 60;

double wrap_phase(double phi) {
    return std::remainder(phi, 2.0 * std::numbers::pi);
}

double polish(const CubicProblem& p, double n_in, double x) {
    for (int i = 0; i < kPolishSteps; ++i) {
        const double f = p.residual(x, n_in);
        const double df = (3.0 * p.c3 * x + 2.0 * p.c2) * x + p.c1;
        if (f == 0.0 || df == 0.0) {
            break;
        }
        const double step = f / df;
        x -= step;
        if (std::abs(step) <= 1e-16 * std::abs(x)) {
            break;
        }
    }
    return x;
}

// Real roots of x^3 + a x^2 + b x + c.
std::vector<double> monic_cubic_roots(double a, double b, double c) {
    const double q = (a * a - 3.0 * b) / 9.0;
    const double r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    const double q3 = q * q * q;
    const double shift = a / 3.0;
    if (r * r < q3) {
        const double phi = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
        const double m = -2.0 * std::sqrt(q);
        const double third = 2.0 * std::numbers::pi / 3.0;
        return {m * std::cos(phi / 3.0) - shift, m * std::cos(phi / 3.0 + third) - shift,
                m * std::cos(phi / 3.0 - third) - shift};
    }
    const double big = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q3)), r);
    const double small = big != 0.0 ? q / big : 0.0;
    return {big + small - shift};
}

std::vector<double> positive_quadratic_roots(double a, double b, double c) {
    std::vector<double> out;
    if (a == 0.0) {
        if (b != 0.0 && -c / b > 0.0) {
            out.push_back(-c / b);
        }
        return out;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        return out;
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    for (double x : {q / a, q != 0.0 ? c / q : 0.0}) {
        if (x > 0.0) {
            out.push_back(x);
        }
    }
    return out;
}

void sort_unique(std::vector<double>& xs) {
    std::sort(xs.begin(), xs.end());
    auto last = std::unique(xs.begin(), xs.end(), [](double u, double v) {
        return std::abs(u - v) <= 1e-10 * std::max(1.0, std::abs(v));
    });
    xs.erase(last, xs.end());
}

}  // namespace

const SteadyState* SteadyStateSolution::lowest_stable() const noexcept {
    for (const auto& s : branches) {
        if (s.stable) {
            return &s;
        }
    }
    return nullptr;
}

std::size_t SteadyStateSolution::stable_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(branches.begin(), branches.end(), [](const SteadyState& s) { return s.stable; }));
}

CubicProblem cubic_coefficients(const SystemParams& p, const DriveParams& drive) {
    drive.validate();
    if (p.J == 0.0) {
        throw Error(ErrorKind::ZeroCoupling, "J = 0 leaves mode a without a path to the input");
    }
    const auto c = eigen_coefficients(p);
    const double db = p.detuning_b();
    const double norm = p.kappa_b * p.kappa_b * p.J * p.J;
    CubicProblem prob;
    prob.c1 = (c.C1 * c.C1 + c.C2 * c.C2) / (4.0 * norm);
    prob.c2 = -p.K * (c.C1 * db - c.C2 * p.kappa_b) / norm;
    prob.c3 = p.K * p.K * (p.kappa_b * p.kappa_b + db * db) / norm;
    return prob;
}

std::vector<double> solve_intensity(const CubicProblem& prob, const DriveParams& drive) {
    drive.validate();
    const double n = drive.N_in;
    std::vector<double> roots;
    if (n == 0.0) {
        roots.push_back(0.0);
        for (double x : positive_quadratic_roots(prob.c3, prob.c2, prob.c1)) {
            roots.push_back(polish(prob, n, x));
        }
        sort_unique(roots);
        return roots;
    }
    if (prob.c3 == 0.0) {
        for (double x : positive_quadratic_roots(prob.c2, prob.c1, -n)) {
            roots.push_back(polish(prob, n, x));
        }
        sort_unique(roots);
        return roots;
    }
    for (double x : monic_cubic_roots(prob.c2 / prob.c3, prob.c1 / prob.c3, -n / prob.c3)) {
        x = polish(prob, n, x);
        if (x > 0.0) {
            roots.push_back(x);
        }
    }
    sort_unique(roots);
    return roots;
}

MeanFields mean_fields(const SystemParams& p, const DriveParams& drive, double intensity) {
    if (drive.N_in == 0.0 && intensity == 0.0) {
        return {};
    }
    // (H + 2K x M) v = -i f with f = (0, sqrt(2 kappa_b) eps_in).
    Eigen::Matrix2cd h = effective_hamiltonian(p);
    h(0, 0) += 2.0 * p.K * intensity;
    const cplx det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
    const double scale = std::max(1.0, h.cwiseAbs2().sum());
    if (std::abs(det) <= 1e-14 * scale) {
        throw Error(ErrorKind::SingularSystem,
                    "steady-state system is singular (undamped resonance without Kerr saturation)");
    }
    const cplx rhs = -cplx(0.0, 1.0) * std::sqrt(2.0 * p.kappa_b) * drive.epsilon_in(p.kappa_b);
    MeanFields m;
    m.a = -h(0, 1) * rhs / det;
    m.b = h(0, 0) * rhs / det;
    return m;
}

cplx output_amplitude(const SystemParams& p, cplx a_mean) {
    return -std::sqrt(2.0 * p.kappa_a) * a_mean;
}

SteadyState make_steady_state(const SystemParams& p, const DriveParams& drive, double intensity) {
    const auto fields = mean_fields(p, drive, intensity);
    SteadyState s;
    s.intensity = intensity;
    s.a_mean = fields.a;
    s.b_mean = fields.b;
    s.a_out_mean = output_amplitude(p, fields.a);
    s.theta_s = s.a_out_mean == cplx{} ? 0.0 : wrap_phase(std::arg(s.a_out_mean) - drive.theta_0);
    // Drift eigenvalues do not depend on the quadrature angle.
    s.stable = stability(drift_matrix(p, s, 0.0));
    return s;
}

SteadyStateSolution solve_steady_state(const SystemParams& p, const DriveParams& drive) {
    p.validate();
    const auto roots = solve_intensity(cubic_coefficients(p, drive), drive);
    SteadyStateSolution out;
    out.branches.reserve(roots.size());
    for (double x : roots) {
        out.branches.push_back(make_steady_state(p, drive, x));
    }
    return out;
}

double signal_gain(const SystemParams& p, const DriveParams& drive, const SteadyState& state,
                   double theta) {
    if (drive.N_in <= 0.0) {
        throw Error(ErrorKind::ZeroInput, "signal gain is undefined without input (N_in = 0)");
    }
    // <X_out> = sqrt(2) Re(a_out e^{-i theta}); I_in = 2 |eps_in|^2.
    const double projected = std::real(state.a_out_mean * std::polar(1.0, -theta));
    return projected * projected / std::norm(drive.epsilon_in(p.kappa_b));
}

double signal_gain(const SystemParams& p, const DriveParams& drive, const SteadyState& state) {
    return signal_gain(p, drive, state, state.theta_s + drive.theta_0);
}

double bright_phase_shift(const SystemParams& p) {
    return std::arg(cplx(1.0, -p.detuning_b() / p.kappa_b));
}

bool is_bright_point(const SystemParams& p, double tol) {
    const auto c = eigen_coefficients(p);
    return std::abs(c.C1) <= tol && std::abs(c.C2) <= tol;
}

BrightAnalytics bright_analytics(const SystemParams& p, const DriveParams& drive) {
    drive.validate();
    if (!is_bright_point(p)) {
        const auto c = eigen_coefficients(p);
        std::ostringstream os;
        os << "C1 = " << c.C1 << ", C2 = " << c.C2 << " do not vanish";
        throw Error(ErrorKind::NotBrightPoint, os.str());
    }
    if (p.K == 0.0) {
        throw Error(ErrorKind::ZeroKerr, "K = 0 at a bright point: intensity and gain diverge");
    }
    if (drive.N_in <= 0.0) {
        throw Error(ErrorKind::ZeroInput, "closed-form gain needs N_in > 0");
    }
    const double net = p.kappa_n();
    const double k2 = p.K * p.K;
    BrightAnalytics out;
    out.intensity = std::cbrt(drive.N_in * net * p.kappa_b / k2);
    out.G_s = p.kappa_a * std::cbrt(net / (drive.N_in * drive.N_in * p.kappa_b * p.kappa_b * k2));
    // Negative K rotates the output by pi relative to the K > 0 closed form.
    const double sign = p.K > 0.0 ? 1.0 : -1.0;
    out.a_out = sign * std::sqrt(out.G_s) * drive.epsilon_in(p.kappa_b) *
                std::polar(1.0, bright_phase_shift(p));
    return out;
}

}  // namespace kerramp
