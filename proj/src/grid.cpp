#include "euler1d/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace euler1d {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

PeriodicGrid::PeriodicGrid(int n_points, double length, GridLayout layout)
    : n_points_(n_points), length_(length), layout_(layout) {
    if (n_points < 8 || !is_power_of_two(n_points)) {
        throw std::invalid_argument("PeriodicGrid: n_points must be a power of two >= 8, got " +
                                    std::to_string(n_points));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("PeriodicGrid: length must be positive and finite");
    }
}

double PeriodicGrid::mu() const { return M_PI / length_; }

double PeriodicGrid::point(int j) const {
    const double offset = layout_ == GridLayout::midpoint ? 0.5 : 0.0;
    return (j + offset) * spacing();
}

std::vector<double> PeriodicGrid::points() const {
    std::vector<double> z(static_cast<std::size_t>(n_points_));
    for (int j = 0; j < n_points_; ++j) z[static_cast<std::size_t>(j)] = point(j);
    return z;
}

int PeriodicGrid::reflect_index(int j) const {
    if (layout_ == GridLayout::node) return j == 0 ? 0 : n_points_ - j;
    return n_points_ - 1 - j;
}

PeriodicGrid PeriodicGrid::with_layout(GridLayout layout) const {
    return PeriodicGrid(n_points_, length_, layout);
}

PeriodicGrid PeriodicGrid::refined(int factor) const {
    return PeriodicGrid(n_points_ * factor, length_, layout_);
}

}  // namespace euler1d
