// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "kerramp/eigenmodes.hpp"
#include "kerramp/error.hpp"
#include "kerramp/experiments.hpp"
#include "kerramp/fluctuations.hpp"
#include "kerramp/langevin.hpp"
#include "kerramp/steady_state.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace kerramp;

namespace {

constexpr double kPi = 3.14159265358979323846;

SystemParams reference_device(double K = 1e-4) {
    SystemParams p;
    p.omega_a = 0.0;
    p.omega_b = 0.2;
    p.omega_d = 0.0;  // set by the bright-point solve
    p.kappa_a = 0.25;
    p.kappa_b = 1.0;
    p.J = std::sqrt(3.0) / 2.0;
    p.K = K;
    return p;
}

SystemParams bright_device(double K = 1e-4) {
    auto p = reference_device(K);
    return at_bright_point(p, solve_bright_gain(p));
}

double db(double x) { return 10.0 * std::log10(x); }

struct Check {
    std::ostringstream detail;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

// Every operating point used by a criterion, checked by the stability criterion.
struct UsedPoint {
    std::string label;
    SystemParams params;
    DriveParams drive;
};
std::vector<UsedPoint> g_used;

int g_failures = 0;

void run(const std::string& name, double budget_s, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
        c.ok = false;
        c.detail << " [over budget " << budget_s << " s]";
    }
    g_failures += !c.ok;
    std::printf("%s  %-26s %7.2f s %s\n", c.ok ? "PASS" : "FAIL", name.c_str(), secs, c.detail.str().c_str());
    std::fflush(stdout);
}

SteadyState single_state(const SystemParams& p, const DriveParams& d) {
    const auto sol = solve_steady_state(p, d);
    if (sol.branches.size() != 1) {
        throw Error(ErrorKind::ValidationError, "expected a unique steady state");
    }
    return sol.branches.front();
}

void bright_solver(Check& c) {
    const auto p = reference_device();
    const auto bp = solve_bright_gain(p);
    const auto q = at_bright_point(p, bp);
    const auto coeff = eigen_coefficients(q);
    const auto w = eigenfrequencies(q);
    const double e_kg = std::abs(bp.kappa_g_star - 0.85) / 0.85;
    const double e_wd = std::abs(bp.omega_d_star + 0.3) / 0.3;
    c.detail << "kappa_g*=" << bp.kappa_g_star << " omega_d*=" << bp.omega_d_star
             << " |C1|=" << std::abs(coeff.C1) << " |C2|=" << std::abs(coeff.C2)
             << " |Im w-|=" << std::abs(w.minus.imag());
    c.expect(e_kg < 1e-10, "kappa_g* rel err < 1e-10");
    c.expect(e_wd < 1e-10, "omega_d* rel err < 1e-10");
    c.expect(std::abs(coeff.C1) < 1e-10 && std::abs(coeff.C2) < 1e-10, "C1, C2 < 1e-10");
    c.expect(std::abs(w.minus.imag()) < 1e-10, "Im w- < 1e-10");
}

void steady_equivalence(Check& c) {
    const auto p = bright_device();
    const DriveParams d{0.5, 0.0};
    g_used.push_back({"bright K=1e-4 N=0.5", p, d});
    const double closed = std::cbrt(d.N_in * p.kappa_n() * p.kappa_b / (p.K * p.K));
    const auto roots = solve_intensity(cubic_coefficients(p, d), d);
    c.expect(roots.size() == 1, "unique root");
    const double x = roots.front();
    IntegrationConfig cfg;
    cfg.dt = 1e-3 / mean_field_rate(p);
    cfg.t_max = 500.0;
    cfg.record_stride = 1 << 30;
    const double rk4 = integrate_mean_field(p, d, cfg).terminal_intensity();
    c.detail << "closed=" << closed << " cubic=" << x << " rk4(t=500)=" << rk4;
    c.expect(std::abs(x - closed) <= 1e-3 * closed, "cubic within 0.1%");
    c.expect(std::abs(x - 310.72) <= 1e-3 * 310.72, "cubic ~ 310.72");
    c.expect(std::abs(rk4 - x) <= 1e-4 * x, "RK4 within 1e-4");
}

// Gain, noise gain and noise figure from the matrix pipeline, compared with the
// bright-mode closed forms evaluated here and with the pinned decibel values.
void closed_forms(Check& c, double K, double n, double gs_shift_db) {
    const auto p = bright_device(K);
    const DriveParams d{n, 0.0};
    std::ostringstream label;
    label << "bright K=" << K << " N=" << n;
    g_used.push_back({label.str(), p, d});
    const auto s = single_state(p, d);
    const double theta = s.theta_s + d.theta_0;
    const auto r = analyze_noise(p, d, s, theta);
    const double gs = signal_gain(p, d, s, theta);

    const double kn = p.kappa_n();
    const double gs_bm = p.kappa_a * std::cbrt(kn / (n * n * p.kappa_b * p.kappa_b * K * K));
    const double excess = 2.0 * (p.kappa_a + kn) / (9.0 * kn);
    const double gn_bm = 1.0 + gs_bm * excess;
    const double f_bm = 1.0 / gs_bm + excess;

    c.detail << "G_s=" << db(gs) << " dB G_n=" << db(r.G_n) << " dB F=" << db(r.F) << " dB"
             << " (closed " << db(gs_bm) << ", " << db(gn_bm) << ", " << db(f_bm) << ")";
    c.expect(std::abs(db(gs) - (21.91 + gs_shift_db)) <= 0.05, "G_s within 0.05 dB of pinned value");
    c.expect(std::abs(db(gs) - db(gs_bm)) <= 0.05, "G_s within 0.05 dB of closed form");
    c.expect(std::abs(db(r.G_n) - db(gn_bm)) <= 0.1, "G_n within 0.1 dB of closed form");
    c.expect(std::abs(db(r.F) - db(f_bm)) <= 0.1, "F within 0.1 dB of closed form");
    if (gs_shift_db == 0.0) {
        c.expect(std::abs(db(r.G_n) - 16.98) <= 0.1, "G_n = 16.98 dB");
        c.expect(std::abs(db(r.F) + 4.93) <= 0.1, "F = -4.93 dB");
    }
}

void oracle_equivalence(Check& c) {
    const auto base = bright_device();
    const DriveParams d{0.5, 0.0};
    const double theta = d.theta_0 + bright_phase_shift(base);
    double worst_z = 0.0;
    double worst_rel_se = 0.0;
    for (double delta : {0.0, -0.1, 0.1}) {
        auto p = base;
        p.omega_d += delta;
        std::ostringstream label;
        label << "mc delta=" << delta;
        g_used.push_back({label.str(), p, d});
        const auto s = single_state(p, d);
        const auto R = drift_matrix(p, s, theta).R;
        const auto D = diffusion_matrix(p, theta);
        const Matrix4d V = lyapunov_covariance(R, D);
        IntegrationConfig cfg;
        cfg.dt = 1e-3 / spectral_radius(R);
        cfg.t_max = 4000.0;
        cfg.n_traj = 8;
        cfg.burn_in = 0.05;
        cfg.batches = 32;
        cfg.seed = 20240601;
        const auto est = integrate_linear_sde(R, D, cfg);
        for (int i = 0; i < 4; ++i) {
            for (int j = i; j < 4; ++j) {
                const double se = est.standard_error(i, j);
                const double z = std::abs(est.V_hat(i, j) - V(i, j)) / se;
                const double scale = std::sqrt(V(i, i) * V(j, j));
                worst_z = std::max(worst_z, z);
                worst_rel_se = std::max(worst_rel_se, se / scale);
            }
        }
    }
    c.detail << "max |z|=" << worst_z << " max stderr/diag=" << worst_rel_se;
    c.expect(worst_z <= 3.0, "all entries within 3 stderr");
    c.expect(worst_rel_se <= 0.05, "stderr <= 5% of diagonal scale");
}

void phase_sensitivity(Check& c) {
    const auto p = bright_device();
    const DriveParams d{0.5, 0.0};
    const auto s = single_state(p, d);
    const double theta = s.theta_s + d.theta_0;
    const double g0 = noise_gain(p, s, theta);
    const double g90 = noise_gain(p, s, theta + kPi / 2);

    auto q = reference_device(0.0);
    q.kappa_g = 0.6;
    q.omega_d = -0.3;
    const DriveParams dq{0.5, 0.3};
    g_used.push_back({"K=0 phase grid", q, dq});
    const auto s0 = single_state(q, dq);
    double lo = INFINITY, hi = -INFINITY;
    for (int k = 0; k < 32; ++k) {
        const double g = noise_gain(q, s0, 2.0 * kPi * k / 32.0);
        lo = std::min(lo, g);
        hi = std::max(hi, g);
    }
    c.detail << "G_n(theta)=" << g0 << " G_n(theta+pi/2)=" << g90 << " K=0 spread=" << hi - lo;
    c.expect(g90 > g0, "conjugate quadrature noisier");
    c.expect(hi - lo < 1e-10, "K=0 spread < 1e-10");
}

void passive_bounds(Check& c) {
    std::mt19937 rng(424242);
    auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    double max_gs = 0.0, min_gn = INFINITY, min_f = INFINITY;
    for (int i = 0; i < 1000; ++i) {
        SystemParams p;
        p.omega_a = u(-1, 1);
        p.omega_b = u(-1, 1);
        p.omega_d = u(-1, 1);
        p.kappa_a = u(0.01, 2);
        p.kappa_b = u(0.2, 2);
        p.J = u(0.01, 2);
        const DriveParams d{u(0.01, 4), u(-kPi, kPi)};
        if (i % 100 == 0) {
            g_used.push_back({"passive draw", p, d});
        }
        const auto s = single_state(p, d);
        const double theta = s.theta_s + d.theta_0;
        const auto r = analyze_noise(p, d, s, theta);
        max_gs = std::max(max_gs, signal_gain(p, d, s, theta));
        min_gn = std::min(min_gn, r.G_n);
        min_f = std::min(min_f, r.F);
    }
    c.detail << "max G_s=" << max_gs << " min G_n=" << min_gn << " min F=" << min_f;
    c.expect(max_gs <= 1.0 + 1e-9, "G_s <= 1");
    c.expect(min_gn >= 1.0 - 1e-9, "G_n >= 1");
    c.expect(min_f >= 1.0 - 1e-9, "F >= 1");
}

void trend_suite(Check& c) {
    struct Set {
        double K;
        double n;
    };
    const Set sets[] = {{1e-4, 0.5}, {5e-5, 0.5}, {5e-5, 0.7}};

    // (i) SNR window around the bright gain rate.
    const auto kg = linspace(0.25, 1.25, 401);
    bool windows = true;
    c.detail << "(i)";
    for (const auto& s : sets) {
        const auto p = bright_device(s.K);
        const auto t = noise_sweep(p, DriveParams{s.n, 0.0}, kg);
        const auto w = noise_window(t, p.kappa_g);
        windows = windows && w.found && w.lo < p.kappa_g && w.hi > p.kappa_g;
        c.detail << " [" << w.lo << "," << w.hi << "]";
    }
    c.expect(windows, "(i) nonempty F<1 window around kappa_g*");

    // (ii) high-gain noise figure against intrinsic loss. The finite-gain
    // figure is F_highgain + 1/G_s, so the K and N_in dependence must sit
    // entirely in that correction.
    const auto ka = linspace(0.05, 0.5, 401);
    bool monotone = true;
    double worst_residual = 0.0;
    for (const auto& s : sets) {
        const auto p = bright_device(s.K);
        const DriveParams d{s.n, 0.0};
        const auto rows = kappa_a_sweep(p, d, ka, p.kappa_n());
        for (std::size_t i = 0; i < ka.size(); ++i) {
            const auto& r = rows[i];
            if (i % 40 == 0) {
                auto q = p;
                q.kappa_a = r.kappa_a;
                q.kappa_g = r.kappa_g;
                g_used.push_back({"kappa_a sweep", q, d});
            }
            if (i > 0) {
                monotone = monotone && r.F_highgain > rows[i - 1].F_highgain;
            }
            const double correction = r.numeric.point.F - r.F_highgain;
            worst_residual = std::max(worst_residual,
                                      std::abs(correction * r.numeric.point.G_s - 1.0));
        }
    }
    c.detail << " (ii) max |(F - F_hg) G_s - 1|=" << worst_residual;
    c.expect(monotone, "(ii) F_highgain increasing in kappa_a");
    c.expect(worst_residual < 1e-6, "(ii) K, N_in enter only through 1/G_s");

    // (iii) and (iv): bandwidth and gain-bandwidth product against drive.
    const auto ns = linspace(0.3, 1.0, 8);
    const auto rows = gbp_scan(bright_device(), DriveParams{0.5, 0.0}, {1e-4, 5e-5}, ns);
    bool bw_up = true, gain_down = true, gbp_down = true;
    for (std::size_t k = 0; k < 2; ++k) {
        c.detail << " K=" << rows[k * ns.size()].K << " gbp";
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const auto& cur = rows[k * ns.size() + i];
            c.detail << ' ' << cur.band.gbp;
            auto q = bright_device(cur.K);
            q.omega_d += cur.band.delta_peak;
            g_used.push_back({"band peak", q, DriveParams{cur.N_in, 0.0}});
            if (i == 0) continue;
            const auto& prev = rows[k * ns.size() + i - 1];
            bw_up = bw_up && cur.band.delta_omega >= prev.band.delta_omega;
            gain_down = gain_down && cur.band.G_s_peak <= prev.band.G_s_peak;
            gbp_down = gbp_down && cur.band.gbp <= prev.band.gbp;
        }
    }
    c.expect(bw_up, "(iii) delta_omega non-decreasing in N_in");
    c.expect(gain_down, "(iii) peak gain non-increasing in N_in");
    c.expect(gbp_down, "(iv) GBP non-increasing in N_in");
}

void stability_check(Check& c) {
    int stable = 0;
    double worst = -INFINITY;
    for (const auto& u : g_used) {
        const auto sol = solve_steady_state(u.params, u.drive);
        const auto* s = sol.lowest_stable();
        if (s == nullptr) {
            c.expect(false, u.label + " has no stable branch");
            continue;
        }
        const double m = max_real_eigenvalue(drift_matrix(u.params, *s, 0.0).R);
        worst = std::max(worst, m);
        stable += m < 0.0;
    }
    c.detail << stable << "/" << g_used.size() << " points, max Re(lambda)=" << worst;
    c.expect(stable == static_cast<int>(g_used.size()), "every point has Re(lambda) < 0");
}

}  // namespace

int main() {
    run("bright-point solver", 1.0, bright_solver);
    run("steady-state equivalence", 10.0, steady_equivalence);
    run("closed forms K=1e-4 N=0.5", 1.0, [](Check& c) { closed_forms(c, 1e-4, 0.5, 0.0); });
    run("closed forms K=5e-5 N=0.5", 1.0, [](Check& c) { closed_forms(c, 5e-5, 0.5, 2.01); });
    run("closed forms K=5e-5 N=0.7", 1.0, [](Check& c) { closed_forms(c, 5e-5, 0.7, 2.01 - 0.97); });
    run("oracle equivalence", 60.0, oracle_equivalence);
    run("phase sensitivity", 1.0, phase_sensitivity);
    run("passive bounds", 10.0, passive_bounds);
    run("trend suite", 300.0, trend_suite);
    run("stability", 10.0, stability_check);
    std::printf("%d failure(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
