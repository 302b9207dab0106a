#ifndef EULER1D_INTEGRATOR_HPP
#define EULER1D_INTEGRATOR_HPP

#include <functional>
#include <stdexcept>
#include <string>

#include "euler1d/diagnostics.hpp"
#include "euler1d/models.hpp"

namespace euler1d {

/// Step-size and termination policy. fixed_dt > 0 disables the CFL rule and
/// steps with that value (used by oracle regressions and the study harnesses,
/// whose record times must align across runs).
struct StepControl {
    double cfl_number = 0.4;
    double dt_max = 1e-2;
    double dt_min = 1e-9;
    bool dealias = true;
    double tail_fraction_limit = 1e-6;
    double omega_max_limit = 1e8;
    double fixed_dt = 0.0;

    DealiasRule dealias_rule() const {
        return dealias ? DealiasRule::two_thirds : DealiasRule::none;
    }
    void validate() const;
};

enum class TerminationReason { t_end, resolution_lost, amplitude_limit, dt_floor, overflow };

const char* to_string(TerminationReason reason);

struct NumericalOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Classical four-stage Runge-Kutta advance. Throws NumericalOverflowError if
/// any stage produces a non-finite value. The omega mean is re-projected to
/// zero when round-off drift exceeds 1e-13 * (1 + max|omega|).
ModelState rk4_step(const ModelState& state, const ModelSpec& spec, double dt, DealiasRule rule);

/// dt = min(dt_max, cfl * dz / max(|v_adv|_inf, 1e-12)) where v_adv is the
/// model's advecting velocity (v for the boundary system, a*v for the scalar
/// family, H theta for ccf).
double choose_dt(const ModelState& state, const ModelSpec& spec, const StepControl& control);

/// Builds the diagnostics record for a state; prev is null for the first record.
using RecordHook =
    std::function<DiagnosticsRecord(const ModelState& state, const DiagnosticsRecord* prev)>;

struct RunResult {
    ModelState final_state;
    TerminationReason reason = TerminationReason::t_end;
    std::vector<DiagnosticsRecord> records;
    long long steps = 0;
};

/// Advances the state until t_end or a termination trigger:
/// spectral_tail_fraction(omega) > tail_fraction_limit ("resolution_lost"),
/// max|omega| > omega_max_limit ("amplitude_limit"), dt < dt_min ("dt_floor"),
/// or non-finite values ("overflow", which still returns the partial output).
/// The hook runs every record_cadence steps and at the final state.
RunResult run(const ModelState& initial, const ModelSpec& spec, const StepControl& control,
              double t_end, int record_cadence, const RecordHook& hook);

}  // namespace euler1d

#endif
