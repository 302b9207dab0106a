#include "euler1d/models.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace euler1d {

namespace {

std::vector<double> pointwise_product(const std::vector<double>& a, const std::vector<double>& b,
                                      double scale = 1.0) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = scale * a[i] * b[i];
    return out;
}

Field spectrum_from_modes(const PeriodicGrid& grid, const std::vector<ModeEntry>& modes,
                          bool zero_mean_required) {
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(grid.size() / 2 + 1), 0.0);
    for (const ModeEntry& m : modes) {
        if (m.k < 1 || m.k >= grid.size() / 2) {
            throw std::invalid_argument("make_initial_data: mode index " + std::to_string(m.k) +
                                        " outside (0, N/2)");
        }
        spec[static_cast<std::size_t>(m.k)] +=
            std::complex<double>(0.5 * m.cos_amp, -0.5 * m.sin_amp);
    }
    return Field::from_spectrum(grid, std::move(spec), zero_mean_required);
}

}  // namespace

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::boundary_system: return "boundary_system";
        case ModelKind::clm: return "clm";
        case ModelKind::de_gregorio: return "de_gregorio";
        case ModelKind::ccf: return "ccf";
        case ModelKind::osw: return "osw";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "boundary_system") return ModelKind::boundary_system;
    if (name == "clm") return ModelKind::clm;
    if (name == "de_gregorio") return ModelKind::de_gregorio;
    if (name == "ccf") return ModelKind::ccf;
    if (name == "osw") return ModelKind::osw;
    throw std::invalid_argument("unknown model kind: " + name);
}

SystemRhs boundary_system_rhs(const ModelState& state, DealiasRule rule) {
    const Field v = velocity_from_vorticity(state.omega);
    const Field u_z = derivative(state.u, 1);
    const Field omega_z = derivative(state.omega, 1);

    Field du = dealias(Field(state.u.grid(), pointwise_product(v.values(), u_z.values(), -1.0)),
                       rule);
    Field v_omega_z =
        dealias(Field(state.u.grid(), pointwise_product(v.values(), omega_z.values(), -1.0)), rule);
    std::vector<double> domega = v_omega_z.values();
    const std::vector<double>& uz_vals = u_z.values();
    for (std::size_t i = 0; i < domega.size(); ++i) domega[i] += uz_vals[i];
    return SystemRhs{std::move(du), Field(state.u.grid(), std::move(domega))};
}

Field scalar_rhs(const Field& w, const ModelSpec& spec, DealiasRule rule) {
    require_zero_mean(w, "scalar_rhs");
    const PeriodicGrid& grid = w.grid();
    switch (spec.kind) {
        case ModelKind::boundary_system:
            throw std::invalid_argument("scalar_rhs: boundary_system is not a scalar model");
        case ModelKind::ccf: {
            const Field theta_z = derivative(w, 1);
            const Field h_theta = hilbert_transform(w);
            Field rhs = dealias(
                Field(grid, pointwise_product(theta_z.values(), h_theta.values(), -1.0)), rule);
            // theta_z * H theta has a nonzero mean in general; the stored field
            // is the zero-mean part of theta, so the mode-0 drift is dropped.
            return project_zero_mean(rhs);
        }
        default: {
            const double a = spec.kind == ModelKind::clm          ? 0.0
                             : spec.kind == ModelKind::de_gregorio ? 1.0
                                                                   : spec.osw_a;
            const bool stretching = spec.kind == ModelKind::osw ? spec.osw_stretching : true;
            const Field h_w = hilbert_transform(w);
            std::vector<double> rhs(static_cast<std::size_t>(grid.size()), 0.0);
            if (stretching) {
                const std::vector<double>& hv = h_w.values();
                const std::vector<double>& wv = w.values();
                for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = hv[i] * wv[i];
            }
            if (a != 0.0) {
                const Field v = velocity_from_vorticity(w);
                const Field w_z = derivative(w, 1);
                const std::vector<double>& vv = v.values();
                const std::vector<double>& wz = w_z.values();
                for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= a * vv[i] * wz[i];
            }
            return dealias(Field(grid, std::move(rhs)), rule);
        }
    }
}

SystemRhs model_rhs(const ModelState& state, const ModelSpec& spec, DealiasRule rule) {
    if (spec.kind == ModelKind::boundary_system) return boundary_system_rhs(state, rule);
    return SystemRhs{Field::zeros(state.u.grid()), scalar_rhs(state.omega, spec, rule)};
}

Field clm_exact_solution(const Field& omega0, double t) {
    const Field h0 = hilbert_transform(omega0);
    const std::vector<double>& w0 = omega0.values();
    const std::vector<double>& h0v = h0.values();
    std::vector<double> out(w0.size());
    double min_denom = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w0.size(); ++i) {
        const double b = 2.0 - t * h0v[i];
        const double denom = b * b + t * t * w0[i] * w0[i];
        min_denom = std::min(min_denom, denom);
        out[i] = 4.0 * w0[i] / denom;
    }
    if (min_denom < 1e-8) {
        throw BlowupProximityError("clm_exact_solution: denominator minimum " +
                                   std::to_string(min_denom) + " below 1e-8 at t = " +
                                   std::to_string(t));
    }
    return Field(omega0.grid(), std::move(out));
}

PreparedInitialData make_initial_data(const InitialSpec& spec, const PeriodicGrid& grid) {
    switch (spec.kind) {
        case InitialKind::paper_blowup: {
            if (!(spec.amplitude > 0.0)) {
                throw std::invalid_argument("make_initial_data: amplitude must be positive");
            }
            // a sin^2(mu z) - a/2 = -(a/2) cos(2 mu z): a single cosine mode.
            std::vector<std::complex<double>> uspec(
                static_cast<std::size_t>(grid.size() / 2 + 1), 0.0);
            uspec[1] = std::complex<double>(-spec.amplitude / 4.0, 0.0);
            Field u = Field::from_spectrum(grid, std::move(uspec));
            Field omega = Field::zeros(grid, true);
            return PreparedInitialData{ModelState{std::move(u), std::move(omega), 0.0},
                                       spec.amplitude / 2.0};
        }
        case InitialKind::custom_modes: {
            Field u = spectrum_from_modes(grid, spec.u_modes, false);
            Field omega = spectrum_from_modes(grid, spec.omega_modes, true);
            return PreparedInitialData{ModelState{std::move(u), std::move(omega), 0.0}, 0.0};
        }
    }
    throw std::invalid_argument("make_initial_data: unknown initial kind");
}

SymmetryError symmetry_error(const ModelState& state) {
    const PeriodicGrid& grid = state.u.grid();
    const std::vector<double>& u = state.u.values();
    const std::vector<double>& w = state.omega.values();
    SymmetryError err;
    for (int j = 0; j < grid.size(); ++j) {
        const int r = grid.reflect_index(j);
        const double u_odd_part =
            0.5 * std::abs(u[static_cast<std::size_t>(j)] - u[static_cast<std::size_t>(r)]);
        const double w_even_part =
            0.5 * std::abs(w[static_cast<std::size_t>(j)] + w[static_cast<std::size_t>(r)]);
        err.u_even_err = std::max(err.u_even_err, u_odd_part);
        err.omega_odd_err = std::max(err.omega_odd_err, w_even_part);
    }
    return err;
}

}  // namespace euler1d
