#include "euler1d/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace euler1d {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

void check_stage(const SystemRhs& rhs, const char* stage) {
    if (!all_finite(rhs.du_dt.values()) || !all_finite(rhs.domega_dt.values())) {
        throw NumericalOverflowError(std::string("rk4_step: non-finite values in stage ") + stage);
    }
}

std::vector<double> axpy(const std::vector<double>& base, double a, const std::vector<double>& dir) {
    std::vector<double> out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + a * dir[i];
    return out;
}

}  // namespace

void StepControl::validate() const {
    if (!(cfl_number > 0.0 && cfl_number <= 1.0)) {
        throw std::invalid_argument("StepControl: cfl_number must lie in (0, 1]");
    }
    if (!(dt_min > 0.0 && dt_min < dt_max)) {
        throw std::invalid_argument("StepControl: need 0 < dt_min < dt_max");
    }
    if (!(tail_fraction_limit > 0.0 && tail_fraction_limit < 1.0)) {
        throw std::invalid_argument("StepControl: tail_fraction_limit must lie in (0, 1)");
    }
    if (!(omega_max_limit > 0.0)) {
        throw std::invalid_argument("StepControl: omega_max_limit must be positive");
    }
    if (fixed_dt < 0.0) throw std::invalid_argument("StepControl: fixed_dt must be >= 0");
    if (fixed_dt > 0.0 && fixed_dt < dt_min) {
        throw std::invalid_argument("StepControl: fixed_dt below dt_min");
    }
}

const char* to_string(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::t_end: return "t_end";
        case TerminationReason::resolution_lost: return "resolution_lost";
        case TerminationReason::amplitude_limit: return "amplitude_limit";
        case TerminationReason::dt_floor: return "dt_floor";
        case TerminationReason::overflow: return "overflow";
    }
    return "unknown";
}

ModelState rk4_step(const ModelState& state, const ModelSpec& spec, double dt, DealiasRule rule) {
    if (!(dt != 0.0 && std::isfinite(dt))) throw std::invalid_argument("rk4_step: bad dt");
    const PeriodicGrid& grid = state.u.grid();

    const SystemRhs k1 = model_rhs(state, spec, rule);
    check_stage(k1, "1");
    const ModelState s2{Field(grid, axpy(state.u.values(), 0.5 * dt, k1.du_dt.values())),
                        Field(grid, axpy(state.omega.values(), 0.5 * dt, k1.domega_dt.values())),
                        state.time + 0.5 * dt};
    const SystemRhs k2 = model_rhs(s2, spec, rule);
    check_stage(k2, "2");
    const ModelState s3{Field(grid, axpy(state.u.values(), 0.5 * dt, k2.du_dt.values())),
                        Field(grid, axpy(state.omega.values(), 0.5 * dt, k2.domega_dt.values())),
                        state.time + 0.5 * dt};
    const SystemRhs k3 = model_rhs(s3, spec, rule);
    check_stage(k3, "3");
    const ModelState s4{Field(grid, axpy(state.u.values(), dt, k3.du_dt.values())),
                        Field(grid, axpy(state.omega.values(), dt, k3.domega_dt.values())),
                        state.time + dt};
    const SystemRhs k4 = model_rhs(s4, spec, rule);
    check_stage(k4, "4");

    const double w = dt / 6.0;
    std::vector<double> u_new(state.u.values());
    std::vector<double> omega_new(state.omega.values());
    const auto& k1u = k1.du_dt.values();
    const auto& k2u = k2.du_dt.values();
    const auto& k3u = k3.du_dt.values();
    const auto& k4u = k4.du_dt.values();
    const auto& k1w = k1.domega_dt.values();
    const auto& k2w = k2.domega_dt.values();
    const auto& k3w = k3.domega_dt.values();
    const auto& k4w = k4.domega_dt.values();
    for (std::size_t i = 0; i < u_new.size(); ++i) {
        u_new[i] += w * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
        omega_new[i] += w * (k1w[i] + 2.0 * k2w[i] + 2.0 * k3w[i] + k4w[i]);
    }
    if (!all_finite(u_new) || !all_finite(omega_new)) {
        throw NumericalOverflowError("rk4_step: non-finite state after update");
    }

    // Round-off guard: the omega RHS has zero mean analytically, so any drift
    // beyond this threshold is accumulated round-off.
    double mean = 0.0;
    double max_abs = 0.0;
    for (double x : omega_new) {
        mean += x;
        max_abs = std::max(max_abs, std::abs(x));
    }
    mean /= static_cast<double>(omega_new.size());
    if (std::abs(mean) > 1e-13 * (1.0 + max_abs)) {
        for (double& x : omega_new) x -= mean;
    }

    return ModelState{Field(grid, std::move(u_new)), Field(grid, std::move(omega_new)),
                      state.time + dt};
}

double choose_dt(const ModelState& state, const ModelSpec& spec, const StepControl& control) {
    if (control.fixed_dt > 0.0) return control.fixed_dt;
    double v_inf = 0.0;
    switch (spec.kind) {
        case ModelKind::boundary_system:
            v_inf = velocity_from_vorticity(state.omega).max_abs();
            break;
        case ModelKind::clm:
            v_inf = 0.0;  // no convection
            break;
        case ModelKind::de_gregorio:
            v_inf = velocity_from_vorticity(state.omega).max_abs();
            break;
        case ModelKind::osw:
            v_inf = std::abs(spec.osw_a) * velocity_from_vorticity(state.omega).max_abs();
            break;
        case ModelKind::ccf:
            v_inf = hilbert_transform(state.omega).max_abs();
            break;
    }
    const double dz = state.u.grid().spacing();
    return std::min(control.dt_max, control.cfl_number * dz / std::max(v_inf, 1e-12));
}

RunResult run(const ModelState& initial, const ModelSpec& spec, const StepControl& control,
              double t_end, int record_cadence, const RecordHook& hook) {
    control.validate();
    if (record_cadence < 1) throw std::invalid_argument("run: record_cadence must be >= 1");

    RunResult result{initial, TerminationReason::t_end, {}, 0};
    if (t_end <= initial.time) return result;

    ModelState state = initial;
    const DealiasRule rule = control.dealias_rule();
    long long step = 0;
    bool recorded_current = false;

    auto record = [&](const ModelState& s) {
        const DiagnosticsRecord* prev = result.records.empty() ? nullptr : &result.records.back();
        result.records.push_back(hook(s, prev));
        recorded_current = true;
    };

    while (true) {
        recorded_current = false;
        if (step % record_cadence == 0) record(state);

        if (state.time >= t_end) {
            result.reason = TerminationReason::t_end;
            break;
        }
        if (spectral_tail_fraction(state.omega) > control.tail_fraction_limit) {
            result.reason = TerminationReason::resolution_lost;
            break;
        }
        if (state.omega.max_abs() > control.omega_max_limit) {
            result.reason = TerminationReason::amplitude_limit;
            break;
        }
        double dt = choose_dt(state, spec, control);
        if (dt < control.dt_min) {
            result.reason = TerminationReason::dt_floor;
            break;
        }
        dt = std::min(dt, t_end - state.time);

        try {
            state = rk4_step(state, spec, dt, rule);
        } catch (const NumericalOverflowError&) {
            result.reason = TerminationReason::overflow;
            break;  // keep the last finite state as the partial output
        }
        ++step;
    }

    if (!recorded_current) record(state);
    result.final_state = std::move(state);
    result.steps = step;
    return result;
}

}  // namespace euler1d
