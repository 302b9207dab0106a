#include "euler1d/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <sstream>
#include <thread>

#include "euler1d/csv.hpp"

namespace euler1d {

namespace {

using nlohmann::json;

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

Snapshot take_snapshot(const ModelState& state) {
    Snapshot snap;
    snap.time = state.time;
    snap.z = state.u.grid().points();
    snap.u = state.u.values();
    snap.omega = state.omega.values();
    snap.v = velocity_from_vorticity(state.omega).values();
    return snap;
}

void write_snapshot(const Snapshot& snap, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "z,u,omega,v\n";
    for (std::size_t i = 0; i < snap.z.size(); ++i) {
        out << csv::format_double(snap.z[i]) << ',' << csv::format_double(snap.u[i]) << ','
            << csv::format_double(snap.omega[i]) << ',' << csv::format_double(snap.v[i]) << '\n';
    }
}

/// Keeps a bounded, deterministically thinned subsequence of the records seen
/// so far; used to hold snapshot candidates without storing every record.
class SnapshotReservoir {
  public:
    explicit SnapshotReservoir(int target) : target_(std::max(1, target)) {}

    void offer(const ModelState& state, long long record_index) {
        if (record_index % stride_ != 0) return;
        snaps_.push_back(take_snapshot(state));
        if (static_cast<int>(snaps_.size()) > 4 * target_) {
            std::vector<Snapshot> kept;
            kept.reserve(snaps_.size() / 2 + 1);
            for (std::size_t i = 0; i < snaps_.size(); i += 2) kept.push_back(std::move(snaps_[i]));
            snaps_ = std::move(kept);
            stride_ *= 2;
        }
    }

    std::vector<Snapshot> finish(const ModelState& final_state) {
        if (snaps_.empty() || snaps_.back().time != final_state.time) {
            snaps_.push_back(take_snapshot(final_state));
        }
        if (static_cast<int>(snaps_.size()) <= target_) return std::move(snaps_);
        if (target_ == 1) return {std::move(snaps_.back())};
        std::vector<Snapshot> out;
        out.reserve(static_cast<std::size_t>(target_));
        const std::size_t last = snaps_.size() - 1;
        std::size_t prev_pick = snaps_.size();
        for (int j = 0; j < target_; ++j) {
            const std::size_t pick =
                static_cast<std::size_t>(std::llround(static_cast<double>(j) *
                                                      static_cast<double>(last) / (target_ - 1)));
            if (pick != prev_pick) out.push_back(std::move(snaps_[pick]));
            prev_pick = pick;
        }
        return out;
    }

  private:
    int target_;
    long long stride_ = 1;
    std::vector<Snapshot> snaps_;
};

double w1_distance(const ModelState& a, const ModelState& b) {
    std::vector<double> du(a.u.values());
    std::vector<double> dw(a.omega.values());
    const auto& bu = b.u.values();
    const auto& bw = b.omega.values();
    for (std::size_t i = 0; i < du.size(); ++i) {
        du[i] -= bu[i];
        dw[i] -= bw[i];
    }
    const Field fu(a.u.grid(), std::move(du));
    const Field fw(a.u.grid(), std::move(dw));
    return std::hypot(vk_norm(fu, 2), vk_norm(fw, 1));
}

/// Fixed perturbation bumps; even in u with u(0) = 0 so the perturbed data
/// stay inside the class where h2 is defined.
Field u_bump(const PeriodicGrid& grid) {
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(grid.size() / 2 + 1), 0.0);
    spec[1] = 0.5;   // cos(2 mu z)
    spec[2] = -0.5;  // -cos(4 mu z)
    return Field::from_spectrum(grid, std::move(spec));
}

Field omega_bump(const PeriodicGrid& grid) {
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(grid.size() / 2 + 1), 0.0);
    spec[1] = std::complex<double>(0.0, -0.5);   // sin(2 mu z)
    spec[3] = std::complex<double>(0.0, -0.25);  // 0.5 sin(6 mu z)
    return Field::from_spectrum(grid, std::move(spec), true);
}

Field add_scaled(const Field& f, const Field& bump, double scale) {
    std::vector<double> vals(f.values());
    const auto& b = bump.values();
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += scale * b[i];
    return Field(f.grid(), std::move(vals), f.zero_mean_required());
}

template <typename Job>
void run_parallel(std::vector<Job>& jobs) {
    const int cap = study_thread_cap();
    std::vector<std::future<void>> inflight;
    for (auto& job : jobs) {
        if (static_cast<int>(inflight.size()) >= cap) {
            inflight.front().get();
            inflight.erase(inflight.begin());
        }
        inflight.push_back(std::async(std::launch::async, std::move(job)));
    }
    for (auto& f : inflight) f.get();
}

}  // namespace

int study_thread_cap() {
    if (const char* env = std::getenv("SIM_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int exit_code_for(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::t_end:
        case TerminationReason::resolution_lost:
        case TerminationReason::amplitude_limit:
            return 0;
        case TerminationReason::dt_floor:
            return 2;
        case TerminationReason::overflow:
            return 3;
    }
    return 1;
}

RunOutput simulate(const SimConfig& config) {
    const auto wall_start = std::chrono::steady_clock::now();

    const PeriodicGrid grid(config.grid_n, config.domain_length);
    PreparedInitialData initial = make_initial_data(config.initial, grid);
    const DiagnosticsEngine engine(config.model, initial, config.diag);

    RunOutput out;
    out.config_echo = config;
    out.c0 = engine.c0();
    out.t_star_bound = engine.c0() > 0.0 ? M_PI / engine.c0()
                                         : std::numeric_limits<double>::infinity();

    // Resolution monitor over the retained band (the literal top-quarter tail
    // cannot fill when the 2/3 rule keeps the state inside |k| <= N/3).
    const int band_hi = config.control.dealias ? config.grid_n / 3 : config.grid_n / 2;
    const int band_lo = (3 * band_hi + 3) / 4;
    std::optional<double> resolution_loss;

    SnapshotReservoir reservoir(config.snapshot_count);
    long long record_index = 0;
    const RecordHook hook = [&](const ModelState& state, const DiagnosticsRecord* prev) {
        DiagnosticsRecord rec = engine.make_record(state, prev);
        if (!resolution_loss &&
            band_tail_fraction(state.omega, band_lo, band_hi) > config.control.tail_fraction_limit) {
            resolution_loss = state.time;
        }
        if (config.snapshot_count > 0) reservoir.offer(state, record_index);
        ++record_index;
        return rec;
    };

    RunResult result = run(initial.state, config.model, config.control, config.t_end,
                           config.diag_cadence, hook);

    out.termination_reason = result.reason;
    out.records = std::move(result.records);
    out.steps = result.steps;
    out.resolution_loss_time = resolution_loss;
    if (config.snapshot_count > 0 && !out.records.empty()) {
        out.snapshots = reservoir.finish(result.final_state);
    }
    // The singularity-time fit uses the resolved portion of the history; the
    // post-resolution tail of max|omega| is not trustworthy.
    if (resolution_loss) {
        std::vector<DiagnosticsRecord> resolved;
        for (const auto& rec : out.records) {
            if (rec.time < *resolution_loss) resolved.push_back(rec);
        }
        out.blowup_fit = estimate_blowup_time(resolved);
    } else {
        out.blowup_fit = estimate_blowup_time(out.records);
    }
    out.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return out;
}

std::string timeseries_header(int k_max) {
    std::ostringstream header;
    header << "time,h1,h2,H_cum,bkm_integral,m0,lower_bound,max_abs_omega,"
              "min_vzz_halfdomain,min_D,min_Qz,uz_bound_ratio";
    for (int k = 0; k <= k_max; ++k) {
        header << ",u_V" << (k + 1) << ",omega_V" << k;
    }
    return header.str();
}

std::string record_to_csv_row(const DiagnosticsRecord& r) {
    std::ostringstream row;
    row << csv::format_double(r.time) << ',' << csv::format_double(r.h1) << ','
        << csv::format_double(r.h2) << ',' << csv::format_double(r.H_cum) << ','
        << csv::format_double(r.bkm_integral) << ',' << csv::format_double(r.m0) << ','
        << csv::format_double(r.lower_bound) << ',' << csv::format_double(r.max_abs_omega) << ','
        << csv::format_double(r.min_vzz_halfdomain) << ',' << csv::format_double(r.min_D) << ','
        << csv::format_double(r.min_Qz) << ',' << csv::format_double(r.uz_bound_ratio);
    for (std::size_t k = 0; k < r.vk_u.size(); ++k) {
        row << ',' << csv::format_double(r.vk_u[k]) << ',' << csv::format_double(r.vk_omega[k]);
    }
    return row.str();
}

void write_run_output(const RunOutput& output, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream ts = open_output(dir / "timeseries.csv");
        ts << timeseries_header(output.config_echo.diag.k_max) << '\n';
        for (const auto& rec : output.records) ts << record_to_csv_row(rec) << '\n';
    }
    for (std::size_t i = 0; i < output.snapshots.size(); ++i) {
        write_snapshot(output.snapshots[i], dir / ("snapshot_" + std::to_string(i) + ".csv"));
    }
    json summary;
    summary["termination_reason"] = to_string(output.termination_reason);
    summary["c0"] = output.c0;
    summary["t_star_bound"] = output.t_star_bound;
    if (output.blowup_fit) {
        summary["t_star_fit"] = output.blowup_fit->t_star;
        summary["fit_quality"] = output.blowup_fit->fit_quality;
    } else {
        summary["t_star_fit"] = nullptr;
        summary["fit_quality"] = nullptr;
    }
    if (output.resolution_loss_time) {
        summary["resolution_loss_time"] = *output.resolution_loss_time;
    } else {
        summary["resolution_loss_time"] = nullptr;
    }
    summary["records"] = output.records.size();
    summary["snapshots"] = output.snapshots.size();
    summary["steps"] = output.steps;
    summary["final_time"] = output.records.empty() ? 0.0 : output.records.back().time;
    summary["max_abs_omega_final"] =
        output.records.empty() ? 0.0 : output.records.back().max_abs_omega;
    summary["wall_time_seconds"] = output.wall_time_seconds;

    json run_json;
    run_json["config"] = json::parse(config_to_json(output.config_echo));
    run_json["summary"] = summary;
    std::ofstream out = open_output(dir / "run.json");
    out << run_json.dump(2) << '\n';
}

RunOutput run_simulation(const SimConfig& config, const std::filesystem::path& dir) {
    RunOutput output = simulate(config);
    write_run_output(output, dir);
    return output;
}

RefinementReport refinement_study(const SimConfig& base, int levels,
                                  const std::filesystem::path& dir) {
    if (levels < 2) throw std::invalid_argument("refinement_study: need at least 2 levels");
    std::filesystem::create_directories(dir);

    std::vector<SimConfig> configs;
    for (int level = 0; level < levels; ++level) {
        SimConfig cfg = base;
        cfg.grid_n = base.grid_n << level;
        if (cfg.grid_n <= 0) throw std::invalid_argument("refinement_study: grid too large");
        // Align record times across levels with a common fixed step.
        if (cfg.control.fixed_dt == 0.0) cfg.control.fixed_dt = cfg.control.dt_max;
        configs.push_back(std::move(cfg));
    }

    RefinementReport report;
    report.runs.resize(configs.size(), RunOutput{base, TerminationReason::t_end, {}, {}, 0, 0,
                                                 0.0, 0.0, {}, {}});
    std::vector<std::function<void()>> jobs;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        report.levels.push_back(configs[i].grid_n);
        jobs.push_back([&, i] {
            report.runs[i] = run_simulation(configs[i],
                                            dir / ("level_n" + std::to_string(configs[i].grid_n)));
        });
    }
    run_parallel(jobs);

    std::size_t common = report.runs.front().records.size();
    for (const auto& r : report.runs) common = std::min(common, r.records.size());

    std::ofstream csv_out = open_output(dir / "refine_report.csv");
    csv_out << "time";
    for (std::size_t i = 0; i + 1 < report.runs.size(); ++i) {
        const std::string tag =
            std::to_string(report.levels[i]) + "_" + std::to_string(report.levels[i + 1]);
        csv_out << ",d_h1_" << tag << ",d_h2_" << tag << ",d_max_abs_omega_" << tag;
    }
    csv_out << '\n';
    for (std::size_t r = 0; r < common; ++r) {
        const double t0 = report.runs.front().records[r].time;
        csv_out << csv::format_double(t0);
        for (std::size_t i = 0; i + 1 < report.runs.size(); ++i) {
            const auto& a = report.runs[i].records[r];
            const auto& b = report.runs[i + 1].records[r];
            if (std::abs(a.time - b.time) > 1e-12 * (1.0 + std::abs(a.time))) {
                throw std::runtime_error("refinement_study: record times misaligned; "
                                         "use a fixed step small enough for every level");
            }
            csv_out << ',' << csv::format_double(std::abs(a.h1 - b.h1)) << ','
                    << csv::format_double(std::abs(a.h2 - b.h2)) << ','
                    << csv::format_double(std::abs(a.max_abs_omega - b.max_abs_omega));
        }
        csv_out << '\n';
    }

    json summary;
    summary["levels"] = report.levels;
    json pairs = json::array();
    for (std::size_t i = 0; i + 1 < report.runs.size(); ++i) {
        RefinementPair pair;
        pair.n_coarse = report.levels[i];
        pair.n_fine = report.levels[i + 1];
        pair.agree_until = 0.0;
        for (std::size_t r = 0; r < common; ++r) {
            const auto& a = report.runs[i].records[r];
            const auto& b = report.runs[i + 1].records[r];
            const bool ok =
                std::abs(a.h1 - b.h1) <= 0.01 * (1.0 + std::abs(b.h1)) &&
                (!(std::isfinite(a.h2) && std::isfinite(b.h2)) ||
                 std::abs(a.h2 - b.h2) <= 0.01 * (1.0 + std::abs(b.h2))) &&
                std::abs(a.max_abs_omega - b.max_abs_omega) <=
                    0.01 * (1.0 + std::abs(b.max_abs_omega));
            if (!ok) break;
            pair.agree_until = a.time;
        }
        report.pairs.push_back(pair);
        pairs.push_back(json{{"n_coarse", pair.n_coarse},
                             {"n_fine", pair.n_fine},
                             {"agree_until", pair.agree_until}});
    }
    summary["pairs"] = pairs;
    std::ofstream js = open_output(dir / "refine_summary.json");
    js << summary.dump(2) << '\n';
    return report;
}

PerturbationReport perturbation_study(const SimConfig& base, const std::vector<double>& scales,
                                      const std::filesystem::path& dir) {
    if (scales.empty()) throw std::invalid_argument("perturbation_study: no scales given");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] >= 0.0)) throw std::invalid_argument("perturbation_study: negative scale");
        if (i > 0 && !(scales[i] < scales[i - 1])) {
            throw std::invalid_argument("perturbation_study: scales must be strictly decreasing");
        }
    }
    std::filesystem::create_directories(dir);

    SimConfig cfg = base;
    if (cfg.control.fixed_dt == 0.0) cfg.control.fixed_dt = cfg.control.dt_max;

    const PeriodicGrid grid(cfg.grid_n, cfg.domain_length);
    const bool perturb_u = cfg.model.kind == ModelKind::boundary_system;
    const Field bump = perturb_u ? u_bump(grid) : omega_bump(grid);

    // Base plus one run per scale, each from the prepared initial data with
    // the scaled bump added to the perturbed component.
    const PreparedInitialData base_initial = make_initial_data(cfg.initial, grid);
    std::vector<ModelState> starts;
    starts.push_back(base_initial.state);
    for (double s : scales) {
        ModelState st = base_initial.state;
        if (s != 0.0) {
            if (perturb_u) {
                st.u = add_scaled(st.u, bump, s);
            } else {
                st.omega = add_scaled(st.omega, bump, s);
            }
        }
        starts.push_back(std::move(st));
    }

    const DiagnosticsEngine engine(cfg.model, base_initial, cfg.diag);
    std::vector<RunResult> results;
    results.reserve(starts.size());
    std::vector<std::vector<ModelState>> trajectories(starts.size());

    std::vector<std::function<void()>> jobs;
    results.resize(starts.size(), RunResult{base_initial.state, TerminationReason::t_end, {}, 0});
    for (std::size_t i = 0; i < starts.size(); ++i) {
        jobs.push_back([&, i] {
            std::vector<ModelState>& traj = trajectories[i];
            const RecordHook hook = [&](const ModelState& state, const DiagnosticsRecord* prev) {
                traj.push_back(state);
                return engine.make_record(state, prev);
            };
            results[i] = run(starts[i], cfg.model, cfg.control, cfg.t_end, cfg.diag_cadence, hook);
        });
    }
    run_parallel(jobs);

    PerturbationReport report;
    report.scales = scales;
    for (std::size_t s = 0; s < scales.size(); ++s) {
        const auto& base_traj = trajectories[0];
        const auto& pert_traj = trajectories[s + 1];
        const std::size_t common = std::min(base_traj.size(), pert_traj.size());
        double max_dist = 0.0;
        for (std::size_t r = 0; r < common; ++r) {
            if (std::abs(base_traj[r].time - pert_traj[r].time) >
                1e-12 * (1.0 + std::abs(base_traj[r].time))) {
                throw std::runtime_error("perturbation_study: record times misaligned");
            }
            max_dist = std::max(max_dist, w1_distance(base_traj[r], pert_traj[r]));
        }
        report.max_w1_distance.push_back(max_dist);
    }

    std::ofstream csv_out = open_output(dir / "perturb_report.csv");
    csv_out << "scale,max_w1_distance\n";
    for (std::size_t s = 0; s < scales.size(); ++s) {
        csv_out << csv::format_double(report.scales[s]) << ','
                << csv::format_double(report.max_w1_distance[s]) << '\n';
    }
    return report;
}

}  // namespace euler1d
