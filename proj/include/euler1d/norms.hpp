#ifndef EULER1D_NORMS_HPP
#define EULER1D_NORMS_HPP

#include <optional>
#include <vector>

#include "euler1d/field.hpp"

namespace euler1d {

/// V^k norm of a zero-mean function: [ int_0^L |d^k f/dz^k|^2 dz ]^{1/2},
/// evaluated spectrally via Parseval (exact for band-limited fields).
/// The zero-mean precondition is enforced for k = 0, the only order whose
/// value depends on the mean; for k >= 1 the derivative-based norm is
/// mean-blind and equals the norm of the zero-mean part.
double vk_norm(const Field& f, int k);

/// Per-k norms of a (u, omega) pair: vk_u[k] = |u|_{V^{k+1}}, vk_omega[k] =
/// |omega|_{V^k}, wk[k] = W^k norm of the pair.
struct NormProfile {
    std::vector<double> vk_u;
    std::vector<double> vk_omega;
    std::vector<double> wk;
};

NormProfile norm_profile(const Field& u, const Field& omega, int k_max);

/// Margin of the Poincare inequality |f|_{V^j} <= c0^{k-j} |f|_{V^k} with
/// c0 = L/(2 pi). Returns c0^{k-j} |f|_{V^k} - |f|_{V^j}; empty for the zero
/// field, where the margin is undefined.
std::optional<double> verify_poincare(const Field& f, int k, int j);

/// Margin of the Sobolev embedding |f|_inf <= (L / (2 sqrt 3)) |f_z|_{V^0};
/// the sup norm is taken over a 4x-refined evaluation grid. Empty for the
/// zero field.
std::optional<double> verify_sobolev_embedding(const Field& f);

/// Fejer-kernel smoothing: mode k is scaled by max(0, 1 - |k|/n) with
/// n = ceil(1/epsilon). The multiplier is 1 at k = 0, nonincreasing in |k|,
/// and 0 from |k| = n on. Output has zero mean. epsilon must lie in (0, 1].
Field mollify(const Field& f, double epsilon);

}  // namespace euler1d

#endif
