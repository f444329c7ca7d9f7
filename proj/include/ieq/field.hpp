#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ieq {

/// Periodic uniform grid in one or two dimensions. Axis 0 is the slow
/// (row) index, so 2D nodal values are stored row-major as [i * n1 + j].
class Grid {
public:
  /// Empty grid with no points; only useful as a placeholder.
  Grid() = default;

  static Grid line(int n, double length);
  static Grid plane(int n0, int n1, double length0, double length1);

  int dim() const { return dim_; }
  int points(int axis) const { return n_[axis]; }
  double length(int axis) const { return length_[axis]; }
  double spacing(int axis) const { return length_[axis] / n_[axis]; }
  std::size_t size() const;
  double cell_volume() const;
  double domain_volume() const;

  /// Node coordinate along an axis.
  double coord(int axis, int index) const { return index * spacing(axis); }

  bool operator==(const Grid&) const = default;

private:
  Grid(int dim, std::array<int, 2> n, std::array<double, 2> length);

  int dim_ = 1;
  std::array<int, 2> n_{0, 0};
  std::array<double, 2> length_{0.0, 0.0};
};

/// Real nodal scalar field on a Grid.
class Field {
public:
  Field() = default;
  explicit Field(const Grid& grid, double value = 0.0);
  Field(const Grid& grid, std::vector<double> values);

  /// Samples fn(x) on 1D grids or fn(x, y) on 2D grids.
  static Field from_function(const Grid& grid, const std::function<double(double, double)>& fn);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);
  Field& operator+=(double c);

  /// Throws DomainError if any value is NaN or infinite.
  void require_finite(const char* context) const;

private:
  Grid grid_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
Field operator*(Field a, double s);

/// Pointwise product.
Field multiply(const Field& a, const Field& b);
/// Applies fn to every nodal value.
Field map(const Field& a, const std::function<double(double)>& fn);

/// Discrete L2 inner product h_1 ... h_d sum(u_i v_i).
double inner(const Field& u, const Field& v);
double norm_l2(const Field& u);
double norm_linf(const Field& u);
double mean(const Field& u);
Field subtract_mean(const Field& u);
/// Spatial integral of u (rectangle rule, exact for trigonometric polynomials).
double integral(const Field& u);

} // namespace ieq
