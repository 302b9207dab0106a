#ifndef EULER1D_SPECTRAL_HPP
#define EULER1D_SPECTRAL_HPP

#include "euler1d/field.hpp"

namespace euler1d {

enum class DealiasRule { none, two_thirds };

/// Spectral derivative of the given order. Exact for resolved trigonometric
/// modes; the Nyquist mode is dropped for odd orders. Result has zero mean.
Field derivative(const Field& f, int order);

/// Periodic Hilbert transform, the spectral-multiplier form of
/// (1/L) PV int omega(y) cot[mu (z-y)] dy with mu = pi/L. The convention is
/// H e^{2 pi i k z/L} = -i sgn(k) e^{2 pi i k z/L}, i.e. H sin(2 mu z) = -cos(2 mu z);
/// it is pinned by the PV quadrature oracle in the test suite.
/// Requires zero-mean input (the velocity law is ill-posed otherwise).
Field hilbert_transform(const Field& omega);

/// The unique zero-mean v with v_z = H omega, computed by dividing the H omega
/// spectrum by the derivative multiplier. Requires zero-mean input.
Field velocity_from_vorticity(const Field& omega);

/// Trigonometric-interpolant evaluation at an arbitrary point by direct
/// Fourier summation.
double eval_at_point(const Field& f, double z);

/// Zero all modes with index above floor(N/3) (two_thirds) or return the input
/// unchanged (none).
Field dealias(const Field& f, DealiasRule rule);

/// Energy fraction in the top quarter of the spectrum:
/// sum_{k >= 3N/8} |c_k|^2 / sum_{k != 0} |c_k|^2, conjugate pairs weighted.
/// Returns 0 for a spectrally empty field.
double spectral_tail_fraction(const Field& f);

/// Energy fraction in mode indices [k_lo, k_hi] relative to all nonzero modes.
/// spectral_tail_fraction(f) == band_tail_fraction(f, ceil(3N/8), N/2).
double band_tail_fraction(const Field& f, int k_lo, int k_hi);

/// Explicit mean subtraction for initial-data preparation. All other
/// operations treat an unexpected nonzero mean as an error.
Field project_zero_mean(const Field& f);

/// Exact spectral resampling onto another grid over the same circle (layout
/// change and/or refinement). Modes above the target Nyquist are dropped.
Field resample(const Field& f, const PeriodicGrid& target);

}  // namespace euler1d

#endif
