#pragma once

// Parameter sweeps over gain rate, decay rate and drive detuning, plus the
// operational bandwidth and gain-bandwidth product.
//
// Grid evaluation is the data-parallel kernel: every point computes all
// steady-state branches independently (serial reference or OpenMP). Branch
// selection by continuation then runs as a cheap sequential pass.

#include "kerramp/execution.hpp"
#include "kerramp/params.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kerramp {

/// 10 log10(x), with values below 1e-12 pinned to -120 dB.
[[nodiscard]] double to_db(double x);

inline constexpr double kDbFloor = -120.0;

struct OperatingPoint {
    double intensity{0.0};
    bool stable{false};
    double G_s{0.0};
    double G_n{0.0};
    double F{0.0};
};

/// All steady-state branches at one grid point, ascending in intensity.
struct PointBranches {
    std::vector<OperatingPoint> branches;

    [[nodiscard]] int stable_count() const noexcept;
};

struct GridPoint {
    SystemParams params;
    DriveParams drive;
};

struct SweepOptions {
    /// Quadrature phase relative to theta_0. Defaults to the bright-point output
    /// phase Arg(1 - i Delta_b / kappa_b) of the baseline, held fixed over the sweep.
    std::optional<double> theta_s;
    double omega{0.0};
    Execution exec{Execution::Parallel};
};

struct SweepRow {
    double value{0.0};
    int n_roots{0};
    int n_stable{0};
    bool has_root{false};
    OperatingPoint point;  // selected stable branch, else the lowest root flagged unstable
};

struct SweepTable {
    std::string axis;
    double theta{0.0};  // quadrature angle used for every row
    std::vector<SweepRow> rows;

    /// True when some row had more than one stable branch.
    [[nodiscard]] bool multistable() const noexcept;
};

struct NoiseWindow {
    bool found{false};
    double lo{0.0};
    double hi{0.0};
    int count{0};
};

struct KappaARow {
    double kappa_a{0.0};
    double kappa_g{0.0};
    double G_s_bm{0.0};
    double G_n_bm{0.0};
    double F_bm{0.0};
    double F_highgain{0.0};
    SweepRow numeric;
};

struct BandOptions {
    double delta_min{-2.0};
    double delta_max{2.0};
    int points{2001};
    SweepOptions sweep;
};

struct BandwidthResult {
    double delta_omega{0.0};
    double G_s_peak{0.0};
    double delta_peak{0.0};
    double gbp{0.0};
    std::pair<double, double> interval{0.0, 0.0};
    /// Disjoint satisfying regions away from the peak; not counted in delta_omega.
    std::vector<std::pair<double, double>> islands;
};

struct GbpRow {
    double K{0.0};
    double N_in{0.0};
    BandwidthResult band;
};

/// Quadrature angle theta_0 + theta_s used by the sweeps for this baseline.
[[nodiscard]] double sweep_quadrature(const SystemParams& base, const DriveParams& drive,
                                      const SweepOptions& options);

[[nodiscard]] PointBranches evaluate_point(const SystemParams& params, const DriveParams& drive,
                                           double theta, double omega);

/// Data-parallel kernel: evaluate_point over every grid point.
[[nodiscard]] std::vector<PointBranches> evaluate_grid(const std::vector<GridPoint>& grid,
                                                       double theta, double omega, Execution exec);

/// Branch index per point, walking outward from `start` in both directions and
/// picking the stable branch nearest the previous intensity. The first pick is
/// the lowest stable branch. -1 marks points without a stable branch.
[[nodiscard]] std::vector<int> select_continuation(const std::vector<PointBranches>& points,
                                                   std::size_t start);

[[nodiscard]] SweepTable gain_sweep(const SystemParams& base, const DriveParams& drive,
                                    const std::vector<double>& kappa_g, const SweepOptions& options = {});

/// Same table as gain_sweep; the window is read off with noise_window().
[[nodiscard]] SweepTable noise_sweep(const SystemParams& base, const DriveParams& drive,
                                     const std::vector<double>& kappa_g, const SweepOptions& options = {});

/// Contiguous run of stable rows with F < 1 around the grid point nearest kappa_g_star.
[[nodiscard]] NoiseWindow noise_window(const SweepTable& table, double kappa_g_star);

/// kappa_g follows kappa_a + kappa_n; J and omega_d stay at the baseline.
[[nodiscard]] std::vector<KappaARow> kappa_a_sweep(const SystemParams& base, const DriveParams& drive,
                                                   const std::vector<double>& kappa_a, double kappa_n,
                                                   const SweepOptions& options = {});

/// omega_d -> omega_d + delta. Continuation starts at the point nearest delta = 0.
[[nodiscard]] SweepTable detuning_sweep(const SystemParams& base, const DriveParams& drive,
                                        const std::vector<double>& delta, const SweepOptions& options = {});

/// Like detuning_sweep but continuation starts at `start` (used for hysteresis checks).
[[nodiscard]] SweepTable detuning_sweep_from(const SystemParams& base, const DriveParams& drive,
                                             const std::vector<double>& delta, std::size_t start,
                                             const SweepOptions& options = {});

/// Contiguous band around the gain peak where the gain stays within 3 dB of the
/// peak and F < 1, with interpolated edges. Throws EmptyBand.
[[nodiscard]] BandwidthResult bandwidth(const SystemParams& base, const DriveParams& drive,
                                        const BandOptions& options = {});

/// Bandwidth for every (K, N_in) pair, K-major.
[[nodiscard]] std::vector<GbpRow> gbp_scan(const SystemParams& base, const DriveParams& drive,
                                           const std::vector<double>& K_values,
                                           const std::vector<double>& N_in_values,
                                           const BandOptions& options = {});

/// n evenly spaced values from lo to hi inclusive.
[[nodiscard]] std::vector<double> linspace(double lo, double hi, int n);

}  // namespace kerramp
