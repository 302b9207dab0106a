#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <filesystem>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "euler1d/csv.hpp"
#include "euler1d/norms.hpp"
#include "euler1d/runner.hpp"

namespace {

using namespace euler1d;

std::filesystem::path resolve_output_dir(const SimConfig& config, const std::string& override_dir) {
    return override_dir.empty() ? std::filesystem::path(config.output_dir)
                                : std::filesystem::path(override_dir);
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir, bool quiet) {
    const SimConfig config = load_config_file(config_path);
    const RunOutput out = run_simulation(config, resolve_output_dir(config, out_dir));
    if (!quiet) {
        std::cout << "termination: " << to_string(out.termination_reason) << "\n"
                  << "records: " << out.records.size() << "  steps: " << out.steps << "\n"
                  << "c0: " << csv::format_double(out.c0)
                  << "  t_star_bound: " << csv::format_double(out.t_star_bound) << "\n";
        if (out.blowup_fit) {
            std::cout << "t_star_fit: " << csv::format_double(out.blowup_fit->t_star)
                      << "  fit_quality: " << csv::format_double(out.blowup_fit->fit_quality)
                      << "\n";
        }
        if (out.resolution_loss_time) {
            std::cout << "resolution_loss_time: "
                      << csv::format_double(*out.resolution_loss_time) << "\n";
        }
        std::cout << "wall_time_seconds: " << csv::format_double(out.wall_time_seconds)
                  << std::endl;
    }
    return exit_code_for(out.termination_reason);
}

int cmd_refine(const std::string& config_path, int levels, const std::string& out_dir,
               bool quiet) {
    const SimConfig config = load_config_file(config_path);
    const RefinementReport report =
        refinement_study(config, levels, resolve_output_dir(config, out_dir));
    if (!quiet) {
        for (const auto& pair : report.pairs) {
            std::cout << "levels " << pair.n_coarse << " vs " << pair.n_fine
                      << ": agree within 1% until t = " << csv::format_double(pair.agree_until)
                      << "\n";
        }
    }
    return 0;
}

int cmd_perturb(const std::string& config_path, const std::string& scales_arg,
                const std::string& out_dir, bool quiet) {
    std::vector<double> scales;
    std::string token;
    std::istringstream stream(scales_arg);
    while (std::getline(stream, token, ',')) {
        if (!token.empty()) scales.push_back(std::stod(token));
    }
    const SimConfig config = load_config_file(config_path);
    const PerturbationReport report =
        perturbation_study(config, scales, resolve_output_dir(config, out_dir));
    if (!quiet) {
        for (std::size_t i = 0; i < report.scales.size(); ++i) {
            std::cout << "scale " << csv::format_double(report.scales[i])
                      << ": max W1 distance " << csv::format_double(report.max_w1_distance[i])
                      << "\n";
        }
    }
    return 0;
}

int cmd_selftest(int samples, bool quiet) {
    bool ok = true;

    const KernelInequalityReport kernel = check_kernel_inequalities(samples, 20240815);
    ok = ok && kernel.ok;
    if (!quiet) {
        std::cout << "kernel inequalities on " << kernel.samples
                  << " samples: worst K(w)+K(1/w)+2 = " << csv::format_double(kernel.worst_sum_margin)
                  << ", worst K(w) on [0,1) = " << csv::format_double(kernel.worst_K_margin)
                  << ", worst K(1/w)+2 = " << csv::format_double(kernel.worst_K_recip_margin)
                  << (kernel.ok ? "  [ok]" : "  [VIOLATED]") << "\n";
    }

    // Poincare and Sobolev margins on random band-limited fields.
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst_poincare = std::numeric_limits<double>::infinity();
    double worst_sobolev = std::numeric_limits<double>::infinity();
    for (double length : {M_PI, 2.0 * M_PI, 10.0}) {
        const PeriodicGrid grid(128, length);
        for (int trial = 0; trial < samples / 10 + 1; ++trial) {
            std::vector<std::complex<double>> spec(65, 0.0);
            for (int k = 1; k <= 20; ++k) spec[static_cast<std::size_t>(k)] =
                std::complex<double>(gauss(rng), gauss(rng));
            const Field f = Field::from_spectrum(grid, std::move(spec), true);
            if (const auto margin = verify_poincare(f, 1, 0)) {
                worst_poincare = std::min(worst_poincare, *margin / vk_norm(f, 0));
            }
            if (const auto margin = verify_sobolev_embedding(f)) {
                worst_sobolev = std::min(worst_sobolev, *margin / f.max_abs());
            }
        }
    }
    ok = ok && worst_poincare >= -1e-10 && worst_sobolev >= -1e-10;
    if (!quiet) {
        std::cout << "constants suite: worst relative Poincare margin "
                  << csv::format_double(worst_poincare) << ", worst relative Sobolev margin "
                  << csv::format_double(worst_sobolev)
                  << (worst_poincare >= -1e-10 && worst_sobolev >= -1e-10 ? "  [ok]"
                                                                          : "  [VIOLATED]")
                  << std::endl;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral laboratory for the 1D boundary model of the axisymmetric "
                 "Euler equations and its scalar relatives"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    bool quiet = false;
    app.add_flag("--quiet", quiet, "suppress progress output");

    auto* simulate_cmd = app.add_subcommand("simulate", "run one simulation from a config file");
    simulate_cmd->add_option("config", config_path, "config JSON path")->required();
    simulate_cmd->add_option("--output-dir", out_dir, "override the config's output_dir");

    int levels = 2;
    auto* refine_cmd = app.add_subcommand("refine", "grid refinement study (N, 2N, ...)");
    refine_cmd->add_option("config", config_path, "config JSON path")->required();
    refine_cmd->add_option("--levels", levels, "number of refinement levels")->required();
    refine_cmd->add_option("--output-dir", out_dir, "override the config's output_dir");

    std::string scales_arg;
    auto* perturb_cmd =
        app.add_subcommand("perturb", "continuous-dependence study over perturbation scales");
    perturb_cmd->add_option("config", config_path, "config JSON path")->required();
    perturb_cmd->add_option("--scales", scales_arg, "comma-separated decreasing scales")
        ->required();
    perturb_cmd->add_option("--output-dir", out_dir, "override the config's output_dir");

    int samples = 10000;
    auto* selftest_cmd =
        app.add_subcommand("selftest", "kernel-inequality and embedding-constant suites");
    selftest_cmd->add_option("--samples", samples, "sample count (default 10000)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate_cmd->parsed()) return cmd_simulate(config_path, out_dir, quiet);
        if (refine_cmd->parsed()) return cmd_refine(config_path, levels, out_dir, quiet);
        if (perturb_cmd->parsed()) return cmd_perturb(config_path, scales_arg, out_dir, quiet);
        if (selftest_cmd->parsed()) return cmd_selftest(samples, quiet);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 1;
}
