#include "kerramp/cli.hpp"

#include "kerramp/csv.hpp"
#include "kerramp/eigenmodes.hpp"
#include "kerramp/error.hpp"
#include "kerramp/experiments.hpp"
#include "kerramp/fluctuations.hpp"
#include "kerramp/langevin.hpp"
#include "kerramp/steady_state.hpp"

#include <cmath>
#include <map>

namespace kerramp {

namespace {

using Columns = std::vector<std::string>;

const std::map<std::string, Columns, std::less<>>& column_table() {
    static const std::map<std::string, Columns, std::less<>> table = {
        {"bright-point",
         {"kappa_g_star", "omega_d_star", "kappa_n", "omega_tilde_plus_re", "omega_tilde_plus_im",
          "omega_tilde_minus_re", "omega_tilde_minus_im", "C1", "C2"}},
        {"steady-state",
         {"root", "intensity", "a_re", "a_im", "b_re", "b_im", "a_out_re", "a_out_im", "theta_s",
          "stable", "G_s_dB", "G_n_dB", "F_dB", "S_out"}},
        {"gain-sweep", {"kappa_g", "intensity", "G_s_dB", "stable"}},
        {"noise-sweep", {"kappa_g", "intensity", "G_s_dB", "G_n_dB", "F_dB", "stable"}},
        {"kappa-a-sweep",
         {"kappa_a", "kappa_g", "G_s_bm_dB", "G_n_bm_dB", "F_bm_dB", "F_highgain_dB", "G_s_dB",
          "G_n_dB", "F_dB", "stable"}},
        {"detuning-sweep", {"delta", "intensity", "G_s_dB", "G_n_dB", "F_dB", "stable", "n_stable"}},
        {"bandwidth",
         {"K", "N_in", "delta_lo", "delta_hi", "delta_omega", "delta_peak", "G_s_peak_dB", "gbp"}},
        {"gbp", {"K", "N_in", "delta_lo", "delta_hi", "delta_omega", "delta_peak", "G_s_peak_dB", "gbp"}},
        {"mc-validate", {"delta", "i", "j", "V_lyapunov", "V_mc", "standard_error", "z_score"}},
    };
    return table;
}

SweepOptions sweep_options(const RunConfig& c) {
    SweepOptions o;
    o.theta_s = c.theta_s;
    o.omega = c.omega;
    return o;
}

BandOptions band_options(const RunConfig& c) {
    BandOptions o;
    o.delta_min = c.detuning.start;
    o.delta_max = c.detuning.stop;
    o.points = c.detuning.points;
    o.sweep = sweep_options(c);
    return o;
}

std::vector<double> grid(const GridConfig& g) {
    return linspace(g.start, g.stop, g.points);
}

void band_row(CsvWriter& w, double K, double n_in, const BandwidthResult& b) {
    w.row({K, n_in, b.interval.first, b.interval.second, b.delta_omega, b.delta_peak, to_db(b.G_s_peak),
           b.gbp});
}

void run_bright_point(const RunConfig& c, CsvWriter& w) {
    const auto bp = solve_bright_gain(c.system);
    const auto at = at_bright_point(c.system, bp);
    const auto freq = eigenfrequencies(at);
    const auto coef = eigen_coefficients(at);
    w.row({bp.kappa_g_star, bp.omega_d_star, bp.kappa_n, freq.plus.real(), freq.plus.imag(),
           freq.minus.real(), freq.minus.imag(), coef.C1, coef.C2});
}

void run_steady_state(const RunConfig& c, CsvWriter& w) {
    const auto solution = solve_steady_state(c.system, c.drive);
    const double theta = sweep_quadrature(c.system, c.drive, sweep_options(c));
    long long index = 0;
    for (const auto& s : solution.branches) {
        const double gs = c.drive.N_in > 0.0 ? signal_gain(c.system, c.drive, s, theta) : 0.0;
        const double gn = noise_gain(c.system, s, theta, c.omega);
        const double f = gs > 0.0 ? gn / gs : INFINITY;
        w.row({index++, s.intensity, s.a_mean.real(), s.a_mean.imag(), s.b_mean.real(), s.b_mean.imag(),
               s.a_out_mean.real(), s.a_out_mean.imag(), s.theta_s, s.stable, to_db(gs), to_db(gn),
               to_db(f), output_spectrum(c.system, s, theta, c.omega)});
    }
}

void run_noise_sweep(const RunConfig& c, CsvWriter& w, std::ostream& log) {
    const auto table = noise_sweep(c.system, c.drive, grid(c.kappa_g_sweep), sweep_options(c));
    for (const auto& r : table.rows) {
        w.row({r.value, r.point.intensity, to_db(r.point.G_s), to_db(r.point.G_n), to_db(r.point.F),
               r.point.stable});
    }
    try {
        const auto bp = solve_bright_gain(c.system);
        const auto win = noise_window(table, bp.kappa_g_star);
        if (win.found) {
            log << "F < 0 dB window: kappa_g in [" << win.lo << ", " << win.hi << "] (" << win.count
                << " points)\n";
        } else {
            log << "no F < 0 dB window around kappa_g* = " << bp.kappa_g_star << '\n';
        }
    } catch (const Error& e) {
        log << "window not reported: " << e.what() << '\n';
    }
}

void run_mc_validate(const RunConfig& c, CsvWriter& w, std::ostream& log) {
    const double theta = sweep_quadrature(c.system, c.drive, sweep_options(c));
    for (double delta : c.mc.deltas) {
        SystemParams p = c.system;
        p.omega_d += delta;
        const auto solution = solve_steady_state(p, c.drive);
        const SteadyState* state = solution.lowest_stable();
        if (state == nullptr) {
            throw Error(ErrorKind::UnstableDrift, "no stable steady state at delta = " + format_double(delta));
        }
        const auto drift = drift_matrix(p, *state, theta);
        const Matrix4d D = diffusion_matrix(p, theta);
        const Matrix4d V = lyapunov_covariance(drift.R, D);

        IntegrationConfig ic;
        ic.dt = c.mc.dt.value_or(1e-3 / spectral_radius(drift.R));
        ic.t_max = c.mc.t_max;
        ic.n_traj = c.mc.n_traj;
        ic.seed = c.seed;
        ic.burn_in = c.mc.burn_in;
        ic.batches = c.mc.batches;
        const auto est = integrate_linear_sde(drift.R, D, ic);
        for (int i = 0; i < 4; ++i) {
            for (int j = i; j < 4; ++j) {
                const double se = est.standard_error(i, j);
                const double z = se > 0.0 ? (est.V_hat(i, j) - V(i, j)) / se : 0.0;
                w.row({delta, static_cast<long long>(i), static_cast<long long>(j), V(i, j), est.V_hat(i, j), se, z});
            }
        }

        IntegrationConfig mf;
        mf.dt = 1e-3 / mean_field_rate(p);
        mf.t_max = c.mc.mean_field_t_max;
        mf.record_stride = 1 << 30;
        const auto traj = integrate_mean_field(p, c.drive, mf);
        log << "delta = " << delta << ": mean-field terminal intensity " << traj.terminal_intensity()
            << " vs cubic root " << state->intensity << '\n';
    }
}

void dispatch(std::string_view name, const RunConfig& c, CsvWriter& w, std::ostream& log) {
    if (name == "bright-point") {
        run_bright_point(c, w);
    } else if (name == "steady-state") {
        run_steady_state(c, w);
    } else if (name == "gain-sweep") {
        const auto table = gain_sweep(c.system, c.drive, grid(c.kappa_g_sweep), sweep_options(c));
        for (const auto& r : table.rows) {
            w.row({r.value, r.point.intensity, to_db(r.point.G_s), r.point.stable});
        }
    } else if (name == "noise-sweep") {
        run_noise_sweep(c, w, log);
    } else if (name == "kappa-a-sweep") {
        const double kn = c.kappa_n.value_or(c.system.kappa_n());
        for (const auto& r : kappa_a_sweep(c.system, c.drive, grid(c.kappa_a_sweep), kn, sweep_options(c))) {
            const auto& pt = r.numeric.point;
            w.row({r.kappa_a, r.kappa_g, to_db(r.G_s_bm), to_db(r.G_n_bm), to_db(r.F_bm), to_db(r.F_highgain),
                   to_db(pt.G_s), to_db(pt.G_n), to_db(pt.F), pt.stable});
        }
    } else if (name == "detuning-sweep") {
        const auto table = detuning_sweep(c.system, c.drive, grid(c.detuning), sweep_options(c));
        for (const auto& r : table.rows) {
            w.row({r.value, r.point.intensity, to_db(r.point.G_s), to_db(r.point.G_n), to_db(r.point.F),
                   r.point.stable, static_cast<long long>(r.n_stable)});
        }
        if (table.multistable()) {
            log << "warning: several stable branches coexist on part of the detuning grid\n";
        }
    } else if (name == "bandwidth") {
        band_row(w, c.system.K, c.drive.N_in, bandwidth(c.system, c.drive, band_options(c)));
    } else if (name == "gbp") {
        for (const auto& r : gbp_scan(c.system, c.drive, c.gbp_K, c.gbp_N_in, band_options(c))) {
            band_row(w, r.K, r.N_in, r.band);
        }
    } else if (name == "mc-validate") {
        run_mc_validate(c, w, log);
    }
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
    static const std::vector<std::string> names = {
        "bright-point", "steady-state", "gain-sweep", "noise-sweep", "kappa-a-sweep",
        "detuning-sweep", "bandwidth", "gbp", "mc-validate"};
    return names;
}

std::vector<std::string> csv_columns(std::string_view subcommand) {
    const auto it = column_table().find(subcommand);
    if (it == column_table().end()) {
        throw Error(ErrorKind::ValidationError, "unknown subcommand '" + std::string(subcommand) + "'");
    }
    return it->second;
}

int run_subcommand(std::string_view name, const RunConfig& config, std::ostream& csv, std::ostream& log) {
    try {
        CsvWriter writer(csv, csv_columns(name));
        for (const auto& advisory : config.system.advisories()) {
            log << "warning: " << advisory << '\n';
        }
        dispatch(name, config, writer, log);
        return 0;
    } catch (const Error& e) {
        log << name << ": " << e.what() << '\n';
        return 1;
    }
}

}  // namespace kerramp
