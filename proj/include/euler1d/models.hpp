#ifndef EULER1D_MODELS_HPP
#define EULER1D_MODELS_HPP

#include <stdexcept>
#include <vector>

#include "euler1d/spectral.hpp"

namespace euler1d {

enum class ModelKind { boundary_system, clm, de_gregorio, ccf, osw };

const char* to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// Which equation is being integrated. The scalar family is
/// w_t + a v w_z - (Hw) w = 0 with v_z = Hw: clm is a = 0, de_gregorio a = 1,
/// osw general a. ccf evolves theta with theta_t = -theta_z H theta.
/// osw_stretching = false drops the (Hw) w term, the transport-only form the
/// family approaches as a grows.
struct ModelSpec {
    ModelKind kind = ModelKind::boundary_system;
    double osw_a = 0.0;
    bool osw_stretching = true;
};

/// State of the two-field boundary system: u transported by v, omega forced by
/// u_z. Scalar models store their field in `omega` and keep u identically zero.
struct ModelState {
    Field u;
    Field omega;
    double time = 0.0;
};

struct SystemRhs {
    Field du_dt;
    Field domega_dt;
};

/// RHS of u_t = -v u_z, omega_t = -v omega_z + u_z with v the zero-mean
/// antiderivative of H omega. Products are dealiased per `rule`.
SystemRhs boundary_system_rhs(const ModelState& state, DealiasRule rule);

/// RHS of the scalar family (see ModelSpec). Input must have zero mean.
/// For ccf the mode-0 component of the product is removed: the stored field is
/// the zero-mean part of theta, whose dynamics decouple from the mean.
Field scalar_rhs(const Field& w, const ModelSpec& spec, DealiasRule rule);

/// Uniform RHS used by the integrator: scalar models get du_dt = 0.
SystemRhs model_rhs(const ModelState& state, const ModelSpec& spec, DealiasRule rule);

struct BlowupProximityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Closed-form solution of the clm model,
/// omega(z, t) = 4 omega0 / [(2 - t H omega0)^2 + t^2 omega0^2].
/// Throws BlowupProximityError when the denominator minimum drops below 1e-8.
Field clm_exact_solution(const Field& omega0, double t);

enum class InitialKind { paper_blowup, custom_modes };

struct ModeEntry {
    int k = 1;
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

struct InitialSpec {
    InitialKind kind = InitialKind::paper_blowup;
    double amplitude = 1.0;                 // paper_blowup only
    std::vector<ModeEntry> u_modes;         // custom_modes only
    std::vector<ModeEntry> omega_modes;     // custom_modes only
};

/// Initial state plus the constant subtracted from u to make it zero-mean.
/// u and u - const obey the same transport equation, so the offset stays valid
/// for the whole run; diagnostics that need the unshifted u add it back.
struct PreparedInitialData {
    ModelState state;
    double u_offset = 0.0;
};

/// paper_blowup: u0 = a sin^2(mu z) with its mean a/2 subtracted (exactly
/// -a/2 cos(2 mu z)), omega0 = 0. custom_modes: band-limited data from the
/// mode tables, zero-mean by construction.
PreparedInitialData make_initial_data(const InitialSpec& spec, const PeriodicGrid& grid);

struct SymmetryError {
    double u_even_err = 0.0;
    double omega_odd_err = 0.0;
};

/// Max-norm deviation of u from its even part and omega from its odd part
/// under z -> -z (mod L).
SymmetryError symmetry_error(const ModelState& state);

}  // namespace euler1d

#endif
