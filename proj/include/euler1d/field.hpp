#ifndef EULER1D_FIELD_HPP
#define EULER1D_FIELD_HPP

#include <complex>
#include <memory>
#include <mutex>
#include <vector>

#include "euler1d/grid.hpp"

namespace euler1d {

/// Zero-mean tolerance used everywhere a field is required to have zero mean:
/// |mean| <= 1e-12 * (max|values| + 1).
double zero_mean_tolerance(const std::vector<double>& values);

/// Real periodic function sampled on a PeriodicGrid, with a lazily computed
/// cache of its physical Fourier coefficients (half-complex storage, k = 0..N/2,
/// in the basis e^{2 pi i k z / L}; the midpoint half-spacing phase is folded in
/// so coefficients are layout-independent).
///
/// Fields are value types. Values are immutable after construction, so copies
/// may share the spectrum cache; a single Field must not be accessed while
/// being moved-from.
class Field {
  public:
    Field(PeriodicGrid grid, std::vector<double> values, bool zero_mean_required = false);

    static Field zeros(const PeriodicGrid& grid, bool zero_mean_required = false);
    static Field from_spectrum(const PeriodicGrid& grid, std::vector<std::complex<double>> coeffs,
                               bool zero_mean_required = false);

    const PeriodicGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    int size() const { return grid_.size(); }

    /// Physical Fourier coefficients; computed on first use and cached.
    const std::vector<std::complex<double>>& spectrum() const;

    double mean() const;
    double max_abs() const;
    bool zero_mean_required() const { return zero_mean_required_; }
    bool has_zero_mean() const;

    Field(const Field& other);
    Field& operator=(const Field& other);
    Field(Field&&) noexcept = default;
    Field& operator=(Field&&) noexcept = default;

  private:
    PeriodicGrid grid_;
    std::vector<double> values_;
    bool zero_mean_required_ = false;
    mutable std::shared_ptr<const std::vector<std::complex<double>>> spectrum_;
    mutable std::unique_ptr<std::mutex> cache_mutex_;

    void check_zero_mean_invariant() const;
};

/// Throws std::invalid_argument naming `what` unless f has zero mean.
void require_zero_mean(const Field& f, const char* what);

}  // namespace euler1d

#endif
