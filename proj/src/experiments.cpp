#include "kerramp/experiments.hpp"

#include "kerramp/eigenmodes.hpp"
#include "kerramp/error.hpp"
#include "kerramp/fluctuations.hpp"
#include "kerramp/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kerramp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kGainWindowDb = 3.0;

void require_monotone(const std::vector<double>& values, const char* axis) {
    if (values.empty()) {
        throw Error(ErrorKind::ValidationError, std::string(axis) + " grid is empty");
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw Error(ErrorKind::ValidationError,
                        std::string(axis) + " grid must be strictly increasing");
        }
    }
}

std::size_t nearest_index(const std::vector<double>& values, double target) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (std::abs(values[i] - target) < std::abs(values[best] - target)) {
            best = i;
        }
    }
    return best;
}

SweepRow make_row(double value, const PointBranches& pb, int selected) {
    SweepRow row;
    row.value = value;
    row.n_roots = static_cast<int>(pb.branches.size());
    row.n_stable = pb.stable_count();
    row.has_root = !pb.branches.empty();
    if (selected >= 0) {
        row.point = pb.branches[static_cast<std::size_t>(selected)];
    } else if (row.has_root) {
        row.point = pb.branches.front();
    } else {
        row.point = {kNaN, false, kNaN, kNaN, kNaN};
    }
    return row;
}

SweepTable run_sweep(std::string axis, const std::vector<double>& values,
                     const std::vector<GridPoint>& grid, double theta, double omega, Execution exec,
                     std::size_t start) {
    const auto points = evaluate_grid(grid, theta, omega, exec);
    const auto picks = select_continuation(points, start);
    SweepTable table;
    table.axis = std::move(axis);
    table.theta = theta;
    table.rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        table.rows.push_back(make_row(values[i], points[i], picks[i]));
    }
    return table;
}

bool satisfies_band(const SweepRow& row, double threshold_db) {
    return row.point.stable && to_db(row.point.G_s) >= threshold_db && row.point.F < 1.0;
}

// Parabolic refinement of the dB gain peak from three grid samples.
std::pair<double, double> refine_peak(const SweepTable& t, std::size_t i) {
    const auto& rows = t.rows;
    const double x1 = rows[i].value;
    const double y1 = to_db(rows[i].point.G_s);
    if (i == 0 || i + 1 >= rows.size() || !rows[i - 1].point.stable || !rows[i + 1].point.stable) {
        return {x1, y1};
    }
    const double y0 = to_db(rows[i - 1].point.G_s);
    const double y2 = to_db(rows[i + 1].point.G_s);
    const double h = rows[i + 1].value - x1;
    const double curv = y0 - 2.0 * y1 + y2;
    if (!(curv < 0.0)) {
        return {x1, y1};
    }
    const double shift = 0.5 * (y0 - y2) / curv;
    return {x1 + shift * h, y1 - 0.25 * (y0 - y2) * shift};
}

// Edge between an accepted row and its rejected neighbour, at the first
// condition crossing met when moving outward.
double band_edge(const SweepRow& inside, const SweepRow& outside, double threshold_db) {
    if (!outside.point.stable) {
        return inside.value;
    }
    double frac = 1.0;
    auto crossing = [&](double in, double out, double level) {
        if (!std::isfinite(in) || !std::isfinite(out)) {
            return 0.0;
        }
        if (out == in) {
            return 1.0;
        }
        return std::clamp((level - in) / (out - in), 0.0, 1.0);
    };
    const double g_in = to_db(inside.point.G_s);
    const double g_out = to_db(outside.point.G_s);
    if (!(g_out >= threshold_db)) {
        frac = std::min(frac, crossing(g_in, g_out, threshold_db));
    }
    const double f_in = to_db(inside.point.F);
    const double f_out = to_db(outside.point.F);
    if (!(outside.point.F < 1.0)) {
        frac = std::min(frac, crossing(f_in, f_out, 0.0));
    }
    return inside.value + frac * (outside.value - inside.value);
}

}  // namespace

double to_db(double x) {
    if (std::isnan(x)) {
        return x;
    }
    return x < 1e-12 ? kDbFloor : 10.0 * std::log10(x);
}

int PointBranches::stable_count() const noexcept {
    return static_cast<int>(std::count_if(branches.begin(), branches.end(),
                                          [](const OperatingPoint& p) { return p.stable; }));
}

bool SweepTable::multistable() const noexcept {
    return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.n_stable > 1; });
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) {
        throw Error(ErrorKind::ValidationError, "grid needs at least one point");
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    }
    return out;
}

double sweep_quadrature(const SystemParams& base, const DriveParams& drive,
                        const SweepOptions& options) {
    return drive.theta_0 + options.theta_s.value_or(bright_phase_shift(base));
}

PointBranches evaluate_point(const SystemParams& params, const DriveParams& drive, double theta,
                             double omega) {
    PointBranches out;
    const auto solution = solve_steady_state(params, drive);
    out.branches.reserve(solution.branches.size());
    for (const auto& state : solution.branches) {
        OperatingPoint op;
        op.intensity = state.intensity;
        op.stable = state.stable;
        op.G_s = drive.N_in > 0.0 ? signal_gain(params, drive, state, theta) : 0.0;
        try {
            op.G_n = noise_gain(params, state, theta, omega);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SingularAtFrequency) {
                throw;
            }
            op.G_n = kNaN;
        }
        op.F = op.G_s > 0.0 ? op.G_n / op.G_s : std::numeric_limits<double>::infinity();
        out.branches.push_back(op);
    }
    return out;
}

std::vector<PointBranches> evaluate_grid(const std::vector<GridPoint>& grid, double theta,
                                         double omega, Execution exec) {
    std::vector<PointBranches> out(grid.size());
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
    if (exec == Execution::Parallel) {
        // Exceptions may not leave an OpenMP region; keep the first and rethrow.
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                const auto& g = grid[static_cast<std::size_t>(i)];
                out[static_cast<std::size_t>(i)] = evaluate_point(g.params, g.drive, theta, omega);
            } catch (...) {
#pragma omp critical(kerramp_grid_failure)
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto& g = grid[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i)] = evaluate_point(g.params, g.drive, theta, omega);
        }
    }
    return out;
}

std::vector<int> select_continuation(const std::vector<PointBranches>& points, std::size_t start) {
    std::vector<int> picks(points.size(), -1);
    if (points.empty()) {
        return picks;
    }
    start = std::min(start, points.size() - 1);
    auto pick = [&](std::size_t i, std::optional<double> previous) {
        const auto& br = points[i].branches;
        int best = -1;
        for (std::size_t k = 0; k < br.size(); ++k) {
            if (!br[k].stable) {
                continue;
            }
            if (!previous) {
                return static_cast<int>(k);
            }
            if (best < 0 || std::abs(br[k].intensity - *previous) <
                                std::abs(br[static_cast<std::size_t>(best)].intensity - *previous)) {
                best = static_cast<int>(k);
            }
        }
        return best;
    };
    auto intensity_of = [&](std::size_t i) -> std::optional<double> {
        if (picks[i] < 0) {
            return std::nullopt;
        }
        return points[i].branches[static_cast<std::size_t>(picks[i])].intensity;
    };
    picks[start] = pick(start, std::nullopt);
    for (std::size_t i = start + 1; i < points.size(); ++i) {
        picks[i] = pick(i, intensity_of(i - 1));
    }
    for (std::size_t i = start; i-- > 0;) {
        picks[i] = pick(i, intensity_of(i + 1));
    }
    return picks;
}

SweepTable gain_sweep(const SystemParams& base, const DriveParams& drive,
                      const std::vector<double>& kappa_g, const SweepOptions& options) {
    base.validate();
    require_monotone(kappa_g, "kappa_g");
    std::vector<GridPoint> grid;
    grid.reserve(kappa_g.size());
    for (double kg : kappa_g) {
        SystemParams p = base;
        p.kappa_g = kg;
        grid.push_back({p, drive});
    }
    return run_sweep("kappa_g", kappa_g, grid, sweep_quadrature(base, drive, options), options.omega,
                     options.exec, 0);
}

SweepTable noise_sweep(const SystemParams& base, const DriveParams& drive,
                       const std::vector<double>& kappa_g, const SweepOptions& options) {
    return gain_sweep(base, drive, kappa_g, options);
}

NoiseWindow noise_window(const SweepTable& table, double kappa_g_star) {
    NoiseWindow w;
    if (table.rows.empty()) {
        return w;
    }
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (const auto& r : table.rows) {
        values.push_back(r.value);
    }
    const std::size_t c = nearest_index(values, kappa_g_star);
    auto ok = [&](std::size_t i) { return table.rows[i].point.stable && table.rows[i].point.F < 1.0; };
    if (!ok(c)) {
        return w;
    }
    std::size_t lo = c;
    std::size_t hi = c;
    while (lo > 0 && ok(lo - 1)) {
        --lo;
    }
    while (hi + 1 < table.rows.size() && ok(hi + 1)) {
        ++hi;
    }
    w.found = true;
    w.lo = table.rows[lo].value;
    w.hi = table.rows[hi].value;
    w.count = static_cast<int>(hi - lo + 1);
    return w;
}

std::vector<KappaARow> kappa_a_sweep(const SystemParams& base, const DriveParams& drive,
                                     const std::vector<double>& kappa_a, double kappa_n,
                                     const SweepOptions& options) {
    base.validate();
    require_monotone(kappa_a, "kappa_a");
    std::vector<GridPoint> grid;
    grid.reserve(kappa_a.size());
    for (double ka : kappa_a) {
        SystemParams p = base;
        p.kappa_a = ka;
        p.kappa_g = ka + kappa_n;
        grid.push_back({p, drive});
    }
    const double theta = sweep_quadrature(base, drive, options);
    const auto table = run_sweep("kappa_a", kappa_a, grid, theta, options.omega, options.exec, 0);
    std::vector<KappaARow> out;
    out.reserve(kappa_a.size());
    for (std::size_t i = 0; i < kappa_a.size(); ++i) {
        const auto& p = grid[i].params;
        const auto sig = bright_analytics(p, drive);
        const auto noise = bright_noise_analytics(p, drive);
        KappaARow row;
        row.kappa_a = p.kappa_a;
        row.kappa_g = p.kappa_g;
        row.G_s_bm = sig.G_s;
        row.G_n_bm = noise.G_n_bm;
        row.F_bm = noise.F_bm;
        row.F_highgain = noise.F_highgain;
        row.numeric = table.rows[i];
        out.push_back(row);
    }
    return out;
}

SweepTable detuning_sweep_from(const SystemParams& base, const DriveParams& drive,
                               const std::vector<double>& delta, std::size_t start,
                               const SweepOptions& options) {
    base.validate();
    require_monotone(delta, "delta");
    std::vector<GridPoint> grid;
    grid.reserve(delta.size());
    for (double d : delta) {
        SystemParams p = base;
        p.omega_d = base.omega_d + d;
        grid.push_back({p, drive});
    }
    return run_sweep("delta", delta, grid, sweep_quadrature(base, drive, options), options.omega,
                     options.exec, start);
}

SweepTable detuning_sweep(const SystemParams& base, const DriveParams& drive,
                          const std::vector<double>& delta, const SweepOptions& options) {
    require_monotone(delta, "delta");
    return detuning_sweep_from(base, drive, delta, nearest_index(delta, 0.0), options);
}

BandwidthResult bandwidth(const SystemParams& base, const DriveParams& drive,
                          const BandOptions& options) {
    if (options.points < 3 || !(options.delta_max > options.delta_min)) {
        throw Error(ErrorKind::ValidationError, "bandwidth scan needs >= 3 points on a nonempty range");
    }
    const auto deltas = linspace(options.delta_min, options.delta_max, options.points);
    const auto table = detuning_sweep(base, drive, deltas, options.sweep);
    const auto& rows = table.rows;

    std::size_t peak = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].point.stable && std::isfinite(rows[i].point.G_s) &&
            (peak == rows.size() || rows[i].point.G_s > rows[peak].point.G_s)) {
            peak = i;
        }
    }
    if (peak == rows.size()) {
        throw Error(ErrorKind::EmptyBand, "no stable operating point in the detuning scan");
    }
    const auto [delta_peak, peak_db] = refine_peak(table, peak);
    const double threshold = peak_db - kGainWindowDb;
    std::vector<char> ok(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ok[i] = satisfies_band(rows[i], threshold) ? 1 : 0;
    }
    if (!ok[peak]) {
        std::ostringstream os;
        os << "noise figure at the gain peak (delta = " << rows[peak].value
           << ") is not below 0 dB";
        throw Error(ErrorKind::EmptyBand, os.str());
    }
    std::size_t lo = peak;
    std::size_t hi = peak;
    while (lo > 0 && ok[lo - 1]) {
        --lo;
    }
    while (hi + 1 < rows.size() && ok[hi + 1]) {
        ++hi;
    }

    BandwidthResult out;
    out.interval.first = lo > 0 ? band_edge(rows[lo], rows[lo - 1], threshold) : rows[lo].value;
    out.interval.second = hi + 1 < rows.size() ? band_edge(rows[hi], rows[hi + 1], threshold) : rows[hi].value;
    out.delta_omega = out.interval.second - out.interval.first;
    out.G_s_peak = std::pow(10.0, peak_db / 10.0);
    out.delta_peak = delta_peak;
    out.gbp = std::sqrt(out.G_s_peak) * out.delta_omega;

    for (std::size_t i = 0; i < rows.size();) {
        if (!ok[i] || (i >= lo && i <= hi)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < rows.size() && ok[j + 1]) {
            ++j;
        }
        out.islands.emplace_back(rows[i].value, rows[j].value);
        i = j + 1;
    }
    return out;
}

std::vector<GbpRow> gbp_scan(const SystemParams& base, const DriveParams& drive,
                             const std::vector<double>& K_values,
                             const std::vector<double>& N_in_values, const BandOptions& options) {
    std::vector<GbpRow> out;
    out.reserve(K_values.size() * N_in_values.size());
    for (double k : K_values) {
        for (double n : N_in_values) {
            SystemParams p = base;
            p.K = k;
            DriveParams d = drive;
            d.N_in = n;
            out.push_back({k, n, bandwidth(p, d, options)});
        }
    }
    return out;
}

}  // namespace kerramp
