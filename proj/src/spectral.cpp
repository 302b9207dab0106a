#include "euler1d/spectral.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace euler1d {

namespace {

using Spectrum = std::vector<std::complex<double>>;

}  // namespace

Field derivative(const Field& f, int order) {
    if (order < 1) throw std::invalid_argument("derivative: order must be >= 1");
    const int n = f.size();
    const double two_mu = 2.0 * f.grid().mu();  // = 2*pi/L, spacing of physical wavenumbers
    Spectrum spec = f.spectrum();
    spec[0] = 0.0;
    for (int k = 1; k <= n / 2; ++k) {
        const std::complex<double> ik(0.0, two_mu * k);
        spec[static_cast<std::size_t>(k)] *= std::pow(ik, order);
    }
    if (order % 2 == 1) spec[static_cast<std::size_t>(n / 2)] = 0.0;
    return Field::from_spectrum(f.grid(), std::move(spec), true);
}

Field hilbert_transform(const Field& omega) {
    require_zero_mean(omega, "hilbert_transform");
    const int n = omega.size();
    Spectrum spec = omega.spectrum();
    spec[0] = 0.0;
    const std::complex<double> minus_i(0.0, -1.0);
    for (int k = 1; k < n / 2; ++k) spec[static_cast<std::size_t>(k)] *= minus_i;
    spec[static_cast<std::size_t>(n / 2)] = 0.0;
    return Field::from_spectrum(omega.grid(), std::move(spec), true);
}

Field velocity_from_vorticity(const Field& omega) {
    require_zero_mean(omega, "velocity_from_vorticity");
    const int n = omega.size();
    const double two_mu = 2.0 * omega.grid().mu();
    Spectrum spec = omega.spectrum();
    spec[0] = 0.0;
    for (int k = 1; k < n / 2; ++k) spec[static_cast<std::size_t>(k)] /= -(two_mu * k);
    spec[static_cast<std::size_t>(n / 2)] = 0.0;
    return Field::from_spectrum(omega.grid(), std::move(spec), true);
}

double eval_at_point(const Field& f, double z) {
    const int n = f.size();
    const double arg_scale = 2.0 * M_PI / f.grid().length();
    const Spectrum& spec = f.spectrum();
    double out = spec[0].real();
    for (int k = 1; k < n / 2; ++k) {
        const double phase = arg_scale * k * z;
        const std::complex<double> rot(std::cos(phase), std::sin(phase));
        out += 2.0 * (spec[static_cast<std::size_t>(k)] * rot).real();
    }
    // Nyquist: shared between +-N/2, counted once.
    const double phase = arg_scale * (n / 2) * z;
    out += (spec[static_cast<std::size_t>(n / 2)] *
            std::complex<double>(std::cos(phase), std::sin(phase)))
               .real();
    return out;
}

Field dealias(const Field& f, DealiasRule rule) {
    if (rule == DealiasRule::none) return f;
    const int n = f.size();
    const int cutoff = n / 3;
    Spectrum spec = f.spectrum();
    for (int k = cutoff + 1; k <= n / 2; ++k) spec[static_cast<std::size_t>(k)] = 0.0;
    return Field::from_spectrum(f.grid(), std::move(spec), f.zero_mean_required());
}

double band_tail_fraction(const Field& f, int k_lo, int k_hi) {
    const int n = f.size();
    const Spectrum& spec = f.spectrum();
    double total = 0.0;
    double band = 0.0;
    for (int k = 1; k <= n / 2; ++k) {
        const double weight = (k == n / 2) ? 1.0 : 2.0;  // conjugate pair except Nyquist
        const double e = weight * std::norm(spec[static_cast<std::size_t>(k)]);
        total += e;
        if (k >= k_lo && k <= k_hi) band += e;
    }
    if (total == 0.0) return 0.0;
    return band / total;
}

double spectral_tail_fraction(const Field& f) {
    const int n = f.size();
    const int k_lo = (3 * n + 7) / 8;  // ceil(3N/8); exact 3N/8 when 8 | N
    return band_tail_fraction(f, k_lo, n / 2);
}

Field project_zero_mean(const Field& f) {
    std::vector<double> values = f.values();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    for (double& v : values) v -= mean;
    return Field(f.grid(), std::move(values), f.zero_mean_required());
}

Field resample(const Field& f, const PeriodicGrid& target) {
    if (target.length() != f.grid().length()) {
        throw std::invalid_argument("resample: target grid has a different circumference");
    }
    const int n_src = f.size();
    const int n_dst = target.size();
    const Spectrum& src = f.spectrum();
    Spectrum dst(static_cast<std::size_t>(n_dst / 2 + 1), 0.0);
    const int shared = std::min(n_src, n_dst) / 2;
    for (int k = 0; k < shared; ++k) dst[static_cast<std::size_t>(k)] = src[static_cast<std::size_t>(k)];
    // The Nyquist mode is ambiguous across layouts; it is dropped unless the
    // grids coincide, in which case the full spectrum is kept.
    if (n_src == n_dst && f.grid().layout() == target.layout()) {
        dst[static_cast<std::size_t>(shared)] = src[static_cast<std::size_t>(shared)];
    }
    return Field::from_spectrum(target, std::move(dst), f.zero_mean_required());
}

}  // namespace euler1d
