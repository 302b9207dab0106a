#ifndef EULER1D_GRID_HPP
#define EULER1D_GRID_HPP

#include <vector>

namespace euler1d {

/// Collocation layout on the circle. Node grids contain z = 0; midpoint grids
/// are shifted by half a spacing and avoid z = 0 and z = L/2, which is what the
/// singular cot^2 quadrature needs.
enum class GridLayout { node, midpoint };

/// Uniform collocation mesh on the circle of circumference L. The point count
/// must be a power of two (>= 8); spacing is exactly L / n.
class PeriodicGrid {
  public:
    PeriodicGrid(int n_points, double length, GridLayout layout = GridLayout::node);

    int size() const { return n_points_; }
    double length() const { return length_; }
    GridLayout layout() const { return layout_; }
    double spacing() const { return length_ / n_points_; }
    /// mu = pi / L, the wavenumber scale of the cotangent kernel.
    double mu() const;

    double point(int j) const;
    std::vector<double> points() const;

    /// Index of the mirror point under z -> -z (mod L); both layouts are
    /// closed under this reflection.
    int reflect_index(int j) const;

    PeriodicGrid with_layout(GridLayout layout) const;
    PeriodicGrid refined(int factor) const;

    bool operator==(const PeriodicGrid& other) const = default;

  private:
    int n_points_;
    double length_;
    GridLayout layout_;
};

}  // namespace euler1d

#endif
