#include "euler1d/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "euler1d/fft.hpp"

namespace euler1d {

namespace {

// Midpoint grids sample at z_j = (j+1/2)h, so the raw DFT coefficients carry a
// phase e^{i pi k / N} relative to the physical basis e^{2 pi i k z / L}.
void apply_midpoint_phase(std::vector<std::complex<double>>& coeffs, int n, double sign) {
    for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
        const double phase = sign * M_PI * k / n;
        coeffs[static_cast<std::size_t>(k)] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
}

}  // namespace

double zero_mean_tolerance(const std::vector<double>& values) {
    double max_abs = 0.0;
    for (double v : values) max_abs = std::max(max_abs, std::abs(v));
    return 1e-12 * (max_abs + 1.0);
}

Field::Field(PeriodicGrid grid, std::vector<double> values, bool zero_mean_required)
    : grid_(grid),
      values_(std::move(values)),
      zero_mean_required_(zero_mean_required),
      cache_mutex_(std::make_unique<std::mutex>()) {
    if (static_cast<int>(values_.size()) != grid_.size()) {
        throw std::invalid_argument("Field: value count does not match grid size");
    }
    check_zero_mean_invariant();
}

Field Field::zeros(const PeriodicGrid& grid, bool zero_mean_required) {
    return Field(grid, std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0),
                 zero_mean_required);
}

Field Field::from_spectrum(const PeriodicGrid& grid, std::vector<std::complex<double>> coeffs,
                           bool zero_mean_required) {
    const int n = grid.size();
    if (static_cast<int>(coeffs.size()) != n / 2 + 1) {
        throw std::invalid_argument("Field::from_spectrum: expected n/2+1 coefficients");
    }
    std::vector<std::complex<double>> raw = coeffs;
    if (grid.layout() == GridLayout::midpoint) apply_midpoint_phase(raw, n, +1.0);
    Field f(grid, fft::inverse(raw, n), zero_mean_required);
    f.spectrum_ = std::make_shared<const std::vector<std::complex<double>>>(std::move(coeffs));
    return f;
}

const std::vector<std::complex<double>>& Field::spectrum() const {
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    if (!spectrum_) {
        auto coeffs = fft::forward(values_);
        if (grid_.layout() == GridLayout::midpoint) apply_midpoint_phase(coeffs, grid_.size(), -1.0);
        spectrum_ = std::make_shared<const std::vector<std::complex<double>>>(std::move(coeffs));
    }
    return *spectrum_;
}

double Field::mean() const {
    double sum = 0.0;
    for (double v : values_) sum += v;
    return sum / static_cast<double>(values_.size());
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool Field::has_zero_mean() const { return std::abs(mean()) <= zero_mean_tolerance(values_); }

Field::Field(const Field& other)
    : grid_(other.grid_),
      values_(other.values_),
      zero_mean_required_(other.zero_mean_required_),
      cache_mutex_(std::make_unique<std::mutex>()) {
    std::lock_guard<std::mutex> lock(*other.cache_mutex_);
    spectrum_ = other.spectrum_;
}

Field& Field::operator=(const Field& other) {
    if (this == &other) return *this;
    std::shared_ptr<const std::vector<std::complex<double>>> spec;
    {
        std::lock_guard<std::mutex> lock(*other.cache_mutex_);
        spec = other.spectrum_;
    }
    grid_ = other.grid_;
    values_ = other.values_;
    zero_mean_required_ = other.zero_mean_required_;
    spectrum_ = std::move(spec);
    if (!cache_mutex_) cache_mutex_ = std::make_unique<std::mutex>();
    return *this;
}

void Field::check_zero_mean_invariant() const {
    if (zero_mean_required_ && !has_zero_mean()) {
        throw std::invalid_argument("Field: zero-mean invariant violated, |mean| = " +
                                    std::to_string(std::abs(mean())));
    }
}

void require_zero_mean(const Field& f, const char* what) {
    if (!f.has_zero_mean()) {
        throw std::invalid_argument(std::string(what) + ": input must have zero mean, |mean| = " +
                                    std::to_string(std::abs(f.mean())));
    }
}

}  // namespace euler1d
