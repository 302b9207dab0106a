#include "euler1d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace euler1d {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double compute_h1(const ModelState& state) {
    const Field h = hilbert_transform(state.omega);
    return -eval_at_point(h, 0.0);
}

double compute_h2(const ModelState& state, double u_offset) {
    const PeriodicGrid& grid = state.u.grid();
    const double u0 = eval_at_point(state.u, 0.0);
    const double unshifted_u0 = u0 + u_offset;
    if (std::abs(unshifted_u0) > 1e-8 * (state.u.max_abs() + u_offset)) {
        throw std::domain_error("compute_h2: u(0) = " + std::to_string(unshifted_u0) +
                                " does not vanish; h2 is ill-defined for this state");
    }
    // Quadrature on the midpoint-shifted companion grid, which contains neither
    // z = 0 nor z = L; [u - u(0)] cot^2(mu z) is bounded there. The offset
    // cancels in the subtraction.
    const PeriodicGrid quad_grid = grid.with_layout(GridLayout::midpoint);
    const Field u_mid = grid.layout() == GridLayout::midpoint ? state.u
                                                              : resample(state.u, quad_grid);
    const double mu = grid.mu();
    const double length = grid.length();
    const double dz = quad_grid.spacing();
    double sum = 0.0;
    const std::vector<double>& uv = u_mid.values();
    for (int j = 0; j < quad_grid.size(); ++j) {
        const double cot = 1.0 / std::tan(mu * quad_grid.point(j));
        sum += (uv[static_cast<std::size_t>(j)] - u0) * cot * cot;
    }
    return mu / length * sum * dz;
}

double c0_from_data(const Field& u0, double u_offset) {
    if (u0.max_abs() == 0.0 && u_offset == 0.0) return 0.0;
    const double h2 = compute_h2(ModelState{u0, Field::zeros(u0.grid(), true), 0.0}, u_offset);
    if (h2 < 0.0) {
        throw std::domain_error("c0_from_data: negative h2 = " + std::to_string(h2) +
                                "; initial data inconsistent with the blowup functional");
    }
    return std::sqrt(h2);
}

double lower_bound_curve(double c0, double t) {
    if (t < 0.0) throw std::invalid_argument("lower_bound_curve: t must be >= 0");
    if (c0 == 0.0) return 0.0;
    const double arg = 0.5 * c0 * t;
    if (arg >= 0.5 * M_PI) return std::numeric_limits<double>::infinity();
    return 2.0 * c0 * std::tan(arg);
}

BkmAccumulation bkm_accumulate(const DiagnosticsRecord& prev, double hw_inf_now, double time_now) {
    const double dt = time_now - prev.time;
    if (dt < 0.0) throw std::invalid_argument("bkm_accumulate: records out of time order");
    BkmAccumulation acc;
    acc.bkm_integral = prev.bkm_integral + 0.5 * (prev.hw_inf + hw_inf_now) * dt;
    acc.m0 = std::exp(acc.bkm_integral);
    return acc;
}

double kernel_K(double w) {
    if (w < 0.0) throw std::domain_error("kernel_K: w must be >= 0");
    if (w == 1.0) throw std::domain_error("kernel_K: singular at w = 1");
    if (w == 0.0) return 0.0;
    // log|(w+1)/(w-1)| = log1p(2 min(w,1) / |w-1|); the direct quotient loses
    // ~w*eps absolute accuracy for large w, which would swamp the K(w)+K(1/w)+2
    // margins.
    const double num = w < 1.0 ? 2.0 * w : 2.0;
    return -w * std::log1p(num / std::abs(w - 1.0));
}

KernelInequalityReport check_kernel_inequalities(int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("check_kernel_inequalities: samples must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<double> ws;
    ws.reserve(static_cast<std::size_t>(samples) + 4);
    for (int i = 0; i < samples; ++i) {
        // Half the draws in (0,1), half in (1,100).
        if (i % 2 == 0) {
            double w = unit(rng);
            if (w == 0.0 || w == 1.0) w = 0.5;
            ws.push_back(w);
        } else {
            ws.push_back(1.0 + 99.0 * unit(rng));
        }
    }
    ws.push_back(1e-8);
    ws.push_back(1.0 - 1e-8);
    ws.push_back(1.0 + 1e-8);
    ws.push_back(100.0);

    KernelInequalityReport report;
    report.samples = static_cast<int>(ws.size());
    report.worst_sum_margin = -std::numeric_limits<double>::infinity();
    report.worst_K_margin = -std::numeric_limits<double>::infinity();
    report.worst_K_recip_margin = -std::numeric_limits<double>::infinity();
    for (double w : ws) {
        const double sum = kernel_K(w) + kernel_K(1.0 / w) + 2.0;
        report.worst_sum_margin = std::max(report.worst_sum_margin, sum);
        const double w_small = w < 1.0 ? w : 1.0 / w;
        report.worst_K_margin = std::max(report.worst_K_margin, kernel_K(w_small));
        report.worst_K_recip_margin =
            std::max(report.worst_K_recip_margin, kernel_K(1.0 / w_small) + 2.0);
    }
    report.ok = report.worst_sum_margin <= 1e-12 && report.worst_K_margin <= 0.0 &&
                report.worst_K_recip_margin <= 1e-12;
    return report;
}

double check_D_positivity(const ModelState& state, int coarse_m) {
    const PeriodicGrid& grid = state.u.grid();
    if (coarse_m < 2 || coarse_m > grid.size() / 2) {
        throw std::invalid_argument("check_D_positivity: coarse_m must lie in [2, N/2]");
    }
    const Field u_z = derivative(state.u, 1);
    const std::vector<double>& uz = u_z.values();
    const std::vector<double>& om = state.omega.values();
    // m grid indices spanning [0, L/2].
    std::vector<int> idx(static_cast<std::size_t>(coarse_m));
    for (int i = 0; i < coarse_m; ++i) {
        idx[static_cast<std::size_t>(i)] =
            static_cast<int>(std::lround(static_cast<double>(i) * (grid.size() / 2) /
                                         (coarse_m - 1)));
    }
    double min_d = std::numeric_limits<double>::infinity();
    for (int jz = 0; jz < coarse_m; ++jz) {
        const int z_i = idx[static_cast<std::size_t>(jz)];
        for (int jy = 0; jy <= jz; ++jy) {
            const int y_i = idx[static_cast<std::size_t>(jy)];
            const double d = om[static_cast<std::size_t>(z_i)] * uz[static_cast<std::size_t>(y_i)] -
                             uz[static_cast<std::size_t>(z_i)] * om[static_cast<std::size_t>(y_i)];
            min_d = std::min(min_d, d);
        }
    }
    return min_d;
}

double check_convexity(const ModelState& state) {
    const Field v_zz = derivative(hilbert_transform(state.omega), 1);
    const PeriodicGrid& grid = state.u.grid();
    const double half = 0.5 * grid.length();
    double min_vzz = std::numeric_limits<double>::infinity();
    const std::vector<double>& vals = v_zz.values();
    for (int j = 0; j < grid.size(); ++j) {
        const double z = grid.point(j);
        if (z > 0.0 && z < half) min_vzz = std::min(min_vzz, vals[static_cast<std::size_t>(j)]);
    }
    return std::isfinite(min_vzz) ? min_vzz : 0.0;
}

std::optional<double> check_Q_monotonicity(const ModelState& state, double uz_floor) {
    if (!(uz_floor > 0.0)) throw std::invalid_argument("check_Q_monotonicity: uz_floor must be > 0");
    const Field u_z = derivative(state.u, 1);
    const std::vector<double>& uz = u_z.values();
    const std::vector<double>& om = state.omega.values();
    const PeriodicGrid& grid = state.u.grid();
    const double half = 0.5 * grid.length();
    const double floor_abs = uz_floor * u_z.max_abs();

    double min_dq = std::numeric_limits<double>::infinity();
    bool have_prev = false;
    double prev_q = 0.0;
    int admitted = 0;
    for (int j = 0; j < grid.size(); ++j) {
        const double z = grid.point(j);
        if (!(z > 0.0 && z < half)) continue;
        if (!(uz[static_cast<std::size_t>(j)] > floor_abs)) {
            have_prev = false;  // gap: differences do not straddle it
            continue;
        }
        const double q = om[static_cast<std::size_t>(j)] / uz[static_cast<std::size_t>(j)];
        ++admitted;
        if (have_prev) min_dq = std::min(min_dq, q - prev_q);
        prev_q = q;
        have_prev = true;
    }
    if (admitted < 2 || !std::isfinite(min_dq)) return std::nullopt;
    return min_dq;
}

double check_uz_characteristics_bound(double m0, double u0z_inf, double uz_inf_now) {
    if (u0z_inf == 0.0) return 0.0;
    return uz_inf_now / (m0 * u0z_inf);
}

std::optional<BlowupFit> estimate_blowup_time(const std::vector<DiagnosticsRecord>& records) {
    const std::size_t n = records.size();
    if (n < 8) return std::nullopt;
    // last quarter of the records, widened to at least 8 of them
    const std::size_t window_start = n - std::max<std::size_t>(n / 4, 8);
    for (std::size_t i = window_start + 1; i < n; ++i) {
        if (!(records[i].max_abs_omega > records[i - 1].max_abs_omega)) return std::nullopt;
    }
    // least squares on y = 1/max_abs_omega vs t
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    const double m = static_cast<double>(n - window_start);
    for (std::size_t i = window_start; i < n; ++i) {
        const double t = records[i].time;
        const double y = 1.0 / records[i].max_abs_omega;
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double denom = m * stt - st * st;
    if (denom == 0.0) return std::nullopt;
    const double slope = (m * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / m;
    if (slope == 0.0) return std::nullopt;
    double ss_res = 0.0, ss_tot = 0.0;
    const double y_mean = sy / m;
    for (std::size_t i = window_start; i < n; ++i) {
        const double y = 1.0 / records[i].max_abs_omega;
        const double fit = slope * records[i].time + intercept;
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - y_mean) * (y - y_mean);
    }
    BlowupFit out;
    out.t_star = -intercept / slope;
    out.fit_quality = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    return out;
}

DiagnosticsEngine::DiagnosticsEngine(const ModelSpec& model, const PreparedInitialData& initial,
                                     DiagnosticsOptions options)
    : options_(options), scalar_(model.kind != ModelKind::boundary_system) {
    if (scalar_) return;
    u_offset_ = initial.u_offset;
    c0_ = c0_from_data(initial.state.u, initial.u_offset);
    u0z_inf_ = derivative(initial.state.u, 1).max_abs();
}

DiagnosticsRecord DiagnosticsEngine::make_record(const ModelState& state,
                                                 const DiagnosticsRecord* prev) const {
    DiagnosticsRecord rec;
    rec.time = state.time;
    const Field h_omega = hilbert_transform(state.omega);
    rec.h1 = -eval_at_point(h_omega, 0.0);
    rec.hw_inf = h_omega.max_abs();
    rec.max_abs_omega = state.omega.max_abs();
    rec.min_vzz_halfdomain = check_convexity(state);
    rec.lower_bound = lower_bound_curve(c0_, state.time);

    if (prev != nullptr) {
        const BkmAccumulation acc = bkm_accumulate(*prev, rec.hw_inf, rec.time);
        rec.bkm_integral = acc.bkm_integral;
        rec.m0 = acc.m0;
    }

    if (scalar_) {
        rec.h2 = 0.0;
        rec.H_cum = 0.0;
        rec.min_D = 0.0;
        rec.min_Qz = kNaN;
        rec.uz_bound_ratio = 0.0;
    } else {
        try {
            rec.h2 = compute_h2(state, u_offset_);
        } catch (const std::domain_error&) {
            rec.h2 = kNaN;
        }
        if (prev == nullptr) {
            rec.H_cum = 0.0;
        } else if (std::isfinite(rec.h2) && std::isfinite(prev->h2)) {
            rec.H_cum = prev->H_cum + 0.5 * (prev->h2 + rec.h2) * (rec.time - prev->time);
        } else {
            // accumulation pauses where h2 is undefined
            rec.H_cum = prev->H_cum;
        }
        rec.min_D = check_D_positivity(state, options_.coarse_m);
        const auto qz = check_Q_monotonicity(state, options_.uz_floor);
        rec.min_Qz = qz ? *qz : kNaN;
        rec.uz_bound_ratio =
            check_uz_characteristics_bound(rec.m0, u0z_inf_, derivative(state.u, 1).max_abs());
    }

    const NormProfile norms = norm_profile(state.u, state.omega, options_.k_max);
    rec.vk_u = norms.vk_u;
    rec.vk_omega = norms.vk_omega;
    return rec;
}

}  // namespace euler1d
