#include "kerramp/eigenmodes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace kerramp {

namespace {

constexpr int kScanIntervals = 1024;
constexpr int kBisectionSteps = 40;
constexpr int kNewtonSteps = 60;

struct Bracket {
    double lo;
    double hi;
};

double bright_condition_slope(const SystemParams& p, double kappa_g) {
    const double split = p.omega_b - p.omega_a;
    const double net = kappa_g - p.kappa_a;
    const double s = net - p.kappa_b;
    const double ratio = split * split / (s * s);
    return p.kappa_b * (ratio + 1.0) - 2.0 * p.kappa_b * net * ratio / s;
}

// Bisection to shrink the bracket, then Newton steps kept inside it.
double refine_root(const SystemParams& p, Bracket b) {
    double f_lo = bright_condition_residual(p, b.lo);
    for (int i = 0; i < kBisectionSteps; ++i) {
        const double mid = 0.5 * (b.lo + b.hi);
        const double f_mid = bright_condition_residual(p, mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            b.lo = mid;
            f_lo = f_mid;
        } else {
            b.hi = mid;
        }
    }
    double x = 0.5 * (b.lo + b.hi);
    for (int i = 0; i < kNewtonSteps; ++i) {
        const double f = bright_condition_residual(p, x);
        const double df = bright_condition_slope(p, x);
        if (f == 0.0 || df == 0.0) {
            break;
        }
        double next = x - f / df;
        if (!(next > b.lo && next < b.hi)) {
            next = 0.5 * (b.lo + b.hi);
        }
        if ((f < 0.0) == (f_lo < 0.0)) {
            b.lo = x;
        } else {
            b.hi = x;
        }
        const double step = std::abs(next - x);
        x = next;
        if (step <= 1e-15 * std::max(1.0, std::abs(x))) {
            break;
        }
    }
    return x;
}

BrightPoint make_bright_point(const SystemParams& p, double kappa_g) {
    const double net = kappa_g - p.kappa_a;
    BrightPoint bp;
    bp.kappa_g_star = kappa_g;
    bp.kappa_n = net;
    bp.omega_d_star = (p.omega_b * net - p.omega_a * p.kappa_b) / (net - p.kappa_b);
    return bp;
}

std::string describe_roots(const std::vector<BrightPoint>& roots) {
    std::ostringstream os;
    os << roots.size() << " gain rates satisfy the bright condition:";
    for (const auto& r : roots) {
        os << ' ' << r.kappa_g_star;
    }
    return os.str();
}

}  // namespace

AmbiguousRootError::AmbiguousRootError(std::vector<BrightPoint> roots)
    : Error(ErrorKind::AmbiguousRoot, describe_roots(roots)), roots_(std::move(roots)) {}

Eigen::Matrix2cd effective_hamiltonian(const SystemParams& p) {
    Eigen::Matrix2cd h;
    h << cplx(p.detuning_a(), p.kappa_g - p.kappa_a), cplx(p.J, 0.0),
         cplx(p.J, 0.0), cplx(p.detuning_b(), -p.kappa_b);
    return h;
}

EigenCoefficients eigen_coefficients(const SystemParams& p) {
    const double da = p.detuning_a();
    const double db = p.detuning_b();
    const double net = p.kappa_n();
    EigenCoefficients c;
    c.Delta_tilde = cplx(da + db, -(p.kappa_a + p.kappa_b - p.kappa_g));
    c.delta_tilde = cplx(da - db, p.kappa_g - p.kappa_a + p.kappa_b);
    c.C1 = p.J * p.J - da * db - net * p.kappa_b;
    c.C2 = da * p.kappa_b - db * net;
    return c;
}

Eigenfrequencies eigenfrequencies(const SystemParams& p) {
    const auto c = eigen_coefficients(p);
    // Delta_tilde^2 + 4 (C1 + i C2) rewritten as delta_tilde^2 + 4 J^2, which
    // does not cancel catastrophically near an exceptional point.
    const cplx disc = c.delta_tilde * c.delta_tilde + 4.0 * p.J * p.J;
    cplx root = std::sqrt(disc);
    if (std::real(root * std::conj(c.Delta_tilde)) < 0.0) {
        root = -root;
    }
    Eigenfrequencies out;
    if (std::abs(root) < kDegeneracyTolerance * std::max(1.0, std::abs(c.Delta_tilde))) {
        out.plus = out.minus = 0.5 * c.Delta_tilde;
        out.exceptional_point = true;
        return out;
    }
    out.plus = 0.5 * (c.Delta_tilde + root);
    out.minus = 0.5 * (c.Delta_tilde - root);
    return out;
}

Eigenmodes eigenmodes(const SystemParams& p) {
    const auto w = eigenfrequencies(p);
    if (w.exceptional_point) {
        throw Error(ErrorKind::DegenerateEigenmodes,
                    "eigenfrequencies coalesce; the eigenmode decomposition is singular");
    }
    const auto c = eigen_coefficients(p);
    const cplx split = w.plus - w.minus;
    Eigenmodes m;
    m.m_plus = std::sqrt((split + c.delta_tilde) / (2.0 * split));
    m.m_minus = std::sqrt((split - c.delta_tilde) / (2.0 * split));
    // The square roots fix each coefficient only up to sign; pick the relative
    // sign that makes P- = m- a - m+ b an eigenvector of H.
    const cplx lhs = (c.delta_tilde + split) * m.m_minus;
    const cplx rhs = 2.0 * p.J * m.m_plus;
    if (std::abs(lhs - rhs) > std::abs(lhs + rhs)) {
        m.m_plus = -m.m_plus;
    }
    return m;
}

EigenSolution eigen_solution(const SystemParams& p) {
    const auto c = eigen_coefficients(p);
    const auto w = eigenfrequencies(p);
    const auto m = eigenmodes(p);
    EigenSolution s;
    s.omega_tilde_plus = w.plus;
    s.omega_tilde_minus = w.minus;
    s.m_plus = m.m_plus;
    s.m_minus = m.m_minus;
    s.C1 = c.C1;
    s.C2 = c.C2;
    s.Delta_tilde = c.Delta_tilde;
    s.delta_tilde = c.delta_tilde;
    return s;
}

double bright_condition_residual(const SystemParams& p, double kappa_g) {
    const double split = p.omega_b - p.omega_a;
    const double net = kappa_g - p.kappa_a;
    const double s = net - p.kappa_b;
    return (split * split / (s * s) + 1.0) * net * p.kappa_b - p.J * p.J;
}

BrightPoint solve_bright_gain(const SystemParams& p) {
    p.validate();
    const double lo = p.kappa_a;
    const double width = p.kappa_b;
    const double split = p.omega_b - p.omega_a;

    // Samples on the open interval, flanked by the one-sided limits.
    std::array<double, kScanIntervals + 1> xs{};
    std::array<double, kScanIntervals + 1> fs{};
    xs[0] = lo;
    fs[0] = -p.J * p.J;
    for (int i = 1; i < kScanIntervals; ++i) {
        xs[i] = lo + width * static_cast<double>(i) / kScanIntervals;
        fs[i] = bright_condition_residual(p, xs[i]);
    }
    xs[kScanIntervals] = lo + width;
    fs[kScanIntervals] = split != 0.0 ? std::numeric_limits<double>::infinity()
                                      : width * width - p.J * p.J;

    std::vector<double> roots;
    for (int i = 1; i < kScanIntervals; ++i) {
        if (fs[i] == 0.0) {
            roots.push_back(xs[i]);
        }
    }
    for (int i = 0; i < kScanIntervals; ++i) {
        const bool change = (fs[i] < 0.0 && fs[i + 1] > 0.0) || (fs[i] > 0.0 && fs[i + 1] < 0.0);
        if (change) {
            roots.push_back(refine_root(p, {xs[i], xs[i + 1]}));
        }
    }
    if (roots.empty()) {
        std::ostringstream os;
        os << "no gain rate in (" << lo << ", " << lo + width
           << ") removes the decay of P-; J = " << p.J << " is out of range for this detuning";
        throw Error(ErrorKind::NoBrightPoint, os.str());
    }
    std::sort(roots.begin(), roots.end());
    if (roots.size() > 1) {
        std::vector<BrightPoint> all;
        all.reserve(roots.size());
        for (double r : roots) {
            all.push_back(make_bright_point(p, r));
        }
        throw AmbiguousRootError(std::move(all));
    }
    return make_bright_point(p, roots.front());
}

SystemParams at_bright_point(SystemParams params, const BrightPoint& bp) {
    params.kappa_g = bp.kappa_g_star;
    params.omega_d = bp.omega_d_star;
    return params;
}

}  // namespace kerramp
