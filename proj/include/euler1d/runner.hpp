#ifndef EULER1D_RUNNER_HPP
#define EULER1D_RUNNER_HPP

#include <filesystem>
#include <optional>
#include <vector>

#include "euler1d/config.hpp"
#include "euler1d/integrator.hpp"

namespace euler1d {

struct Snapshot {
    double time = 0.0;
    std::vector<double> z;
    std::vector<double> u;
    std::vector<double> omega;
    std::vector<double> v;
};

struct RunOutput {
    SimConfig config_echo;
    TerminationReason termination_reason = TerminationReason::t_end;
    std::vector<DiagnosticsRecord> records;
    std::vector<Snapshot> snapshots;
    double wall_time_seconds = 0.0;
    long long steps = 0;
    double c0 = 0.0;
    double t_star_bound = 0.0;  // pi / c0; +inf when c0 = 0
    std::optional<BlowupFit> blowup_fit;
    /// First record time at which the energy fraction in the top quarter of
    /// the *retained* band (N/3 under dealiasing, N/2 otherwise) exceeds the
    /// configured tail_fraction_limit. Diagnostics past this time sit on
    /// under-resolved states.
    std::optional<double> resolution_loss_time;
};

/// Pure simulation driver (no file I/O).
RunOutput simulate(const SimConfig& config);

/// Writes timeseries.csv, snapshot_<i>.csv and run.json into dir.
void write_run_output(const RunOutput& output, const std::filesystem::path& dir);

/// simulate() + write_run_output() into dir (defaults to config.output_dir).
RunOutput run_simulation(const SimConfig& config, const std::filesystem::path& dir);

/// CSV header for the time series at a given diagnostics depth.
std::string timeseries_header(int k_max);
std::string record_to_csv_row(const DiagnosticsRecord& record);

struct RefinementPair {
    int n_coarse = 0;
    int n_fine = 0;
    /// Largest record time T such that h1, h2 and max|omega| of the two levels
    /// agree within 1% (relative to 1 + |finer value|) at every record <= T.
    double agree_until = 0.0;
};

struct RefinementReport {
    std::vector<int> levels;
    std::vector<RefinementPair> pairs;
    std::vector<RunOutput> runs;
};

/// Runs the base config at N, 2N, ..., aligns records by time and writes
/// refine_report.csv (per-quantity inter-level differences) plus
/// refine_summary.json. Runs use a common fixed step (dt_max when the base
/// config does not set fixed_dt) so record times align exactly.
RefinementReport refinement_study(const SimConfig& base, int levels,
                                  const std::filesystem::path& dir);

struct PerturbationReport {
    std::vector<double> scales;
    std::vector<double> max_w1_distance;
};

/// For each scale s, perturbs the initial data by s times a fixed band-limited
/// zero-mean bump (u for the boundary system, the scalar field otherwise),
/// runs to the base config's t_end and reports the max-over-time W^1 distance
/// to the base solution. Writes perturb_report.csv.
PerturbationReport perturbation_study(const SimConfig& base, const std::vector<double>& scales,
                                      const std::filesystem::path& dir);

/// 0 for expected physics outcomes (t_end, resolution_lost, amplitude_limit);
/// nonzero for dt_floor and overflow.
int exit_code_for(TerminationReason reason);

/// Study parallelism cap: SIM_THREADS env var, else hardware concurrency.
int study_thread_cap();

}  // namespace euler1d

#endif
