#ifndef EULER1D_DIAGNOSTICS_HPP
#define EULER1D_DIAGNOSTICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "euler1d/models.hpp"
#include "euler1d/norms.hpp"

namespace euler1d {

/// Per-record snapshot of the blowup functionals and monitored inequalities.
/// h1 = -v_z(0, t); h2 = (mu/L) int u cot^2(mu z) dz in unshifted-u variables;
/// H_cum and bkm_integral are trapezoid accumulations over the record sequence,
/// so a record is a pure function of (state, previous record).
struct DiagnosticsRecord {
    double time = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;  // NaN when ill-defined for the state (see compute_h2)
    double H_cum = 0.0;
    double bkm_integral = 0.0;
    double m0 = 1.0;
    double lower_bound = 0.0;
    double max_abs_omega = 0.0;
    double min_vzz_halfdomain = 0.0;
    double min_D = 0.0;
    double min_Qz = 0.0;  // NaN when fewer than 2 admitted points
    double uz_bound_ratio = 0.0;
    std::vector<double> vk_u;      // |u|_{V^{k+1}}, k = 0..k_max
    std::vector<double> vk_omega;  // |omega|_{V^k}
    double hw_inf = 0.0;           // |H omega|_inf, carried for the bkm trapezoid
};

/// -H omega evaluated at z = 0 by Fourier summation (no principal value issues).
double compute_h1(const ModelState& state);

/// (mu/L) int u cot^2(mu z) dz with u the unshifted field state.u + u_offset.
/// Evaluated as (mu/L) int [u - u(0)] cot^2(mu z) dz on the midpoint-shifted
/// companion grid, which avoids the z = 0 singularity; the subtraction is exact
/// when the unshifted u vanishes at 0, which is checked. Throws
/// std::domain_error if |u(0) + u_offset| > 1e-8 max|u| (h2 ill-defined).
double compute_h2(const ModelState& state, double u_offset);

/// c0 = sqrt(h2 at t = 0). Throws std::domain_error on negative h2.
double c0_from_data(const Field& u0, double u_offset);

/// 2 c0 tan(c0 t / 2); +infinity at and beyond the horizon c0 t = pi.
double lower_bound_curve(double c0, double t);

struct BkmAccumulation {
    double bkm_integral = 0.0;
    double m0 = 1.0;
};

/// Trapezoid step of int |H omega|_inf dt from the previous record.
BkmAccumulation bkm_accumulate(const DiagnosticsRecord& prev, double hw_inf_now, double time_now);

/// K(w) = -w log|(w+1)/(w-1)|. Domain: w >= 0, w != 1.
double kernel_K(double w);

struct KernelInequalityReport {
    int samples = 0;
    double worst_sum_margin = 0.0;     // max over w of K(w) + K(1/w) + 2 (must be <= 1e-12)
    double worst_K_margin = 0.0;       // max over w in [0,1) of K(w) (must be <= 0)
    double worst_K_recip_margin = 0.0; // max over w in [0,1) of K(1/w) + 2 (must be <= 1e-12)
    bool ok = false;
};

/// Checks K(w) + K(1/w) + 2 <= 0 and the w in [0,1) bounds on pseudo-random
/// samples from (0,1) u (1,100) plus near-endpoint values.
KernelInequalityReport check_kernel_inequalities(int samples, std::uint64_t seed);

/// Minimum of D(y, z) = omega(z) u_y(y) - u_z(z) omega(y) over an m x m
/// triangular sample of {0 <= y <= z <= L/2}.
double check_D_positivity(const ModelState& state, int coarse_m);

/// Minimum of the spectral v_zz over grid points strictly inside (0, L/2).
double check_convexity(const ModelState& state);

/// Minimum forward difference of Q = omega/u_z over consecutive grid points in
/// (0, L/2) where u_z > uz_floor * max|u_z|. Empty when fewer than 2 points
/// are admitted.
std::optional<double> check_Q_monotonicity(const ModelState& state, double uz_floor);

/// uz_inf_now / (m0 * u0z_inf); 0 by convention when u0z_inf = 0.
double check_uz_characteristics_bound(double m0, double u0z_inf, double uz_inf_now);

struct BlowupFit {
    double t_star = 0.0;
    double fit_quality = 0.0;  // coefficient of determination
};

/// Least-squares fit of 1/max_abs_omega vs t over the last quarter of records;
/// empty unless >= 8 records land in the window with strictly increasing
/// max_abs_omega.
std::optional<BlowupFit> estimate_blowup_time(const std::vector<DiagnosticsRecord>& records);

struct DiagnosticsOptions {
    int coarse_m = 64;
    double uz_floor = 1e-3;
    int k_max = 2;
};

/// Builds records for a run. Scalar models get the boundary-system-only
/// functionals (h2, lower bound, D, Q, uz ratio) as zeros/NaN conventions.
class DiagnosticsEngine {
  public:
    DiagnosticsEngine(const ModelSpec& model, const PreparedInitialData& initial,
                      DiagnosticsOptions options);

    DiagnosticsRecord make_record(const ModelState& state, const DiagnosticsRecord* prev) const;

    double c0() const { return c0_; }
    double u_offset() const { return u_offset_; }
    const DiagnosticsOptions& options() const { return options_; }

  private:
    DiagnosticsOptions options_;
    bool scalar_ = false;
    double c0_ = 0.0;
    double u_offset_ = 0.0;
    double u0z_inf_ = 0.0;
};

}  // namespace euler1d

#endif
