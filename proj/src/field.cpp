#include "ieq/field.hpp"

#include "ieq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ieq {

namespace {

void check_axis(int n, double length) {
  if (n < 4 || n % 2 != 0) throw PreconditionError("grid: points per axis must be even and >= 4");
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw PreconditionError("grid: extent must be positive and finite");
  }
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw PreconditionError("field operation on mismatched grids");
}

} // namespace

Grid::Grid(int dim, std::array<int, 2> n, std::array<double, 2> length)
    : dim_(dim), n_(n), length_(length) {}

Grid Grid::line(int n, double length) {
  check_axis(n, length);
  return Grid(1, {n, 1}, {length, 1.0});
}

Grid Grid::plane(int n0, int n1, double length0, double length1) {
  check_axis(n0, length0);
  check_axis(n1, length1);
  return Grid(2, {n0, n1}, {length0, length1});
}

std::size_t Grid::size() const {
  return static_cast<std::size_t>(n_[0]) * static_cast<std::size_t>(dim_ == 2 ? n_[1] : 1);
}

double Grid::cell_volume() const {
  return dim_ == 2 ? spacing(0) * spacing(1) : spacing(0);
}

double Grid::domain_volume() const {
  return dim_ == 2 ? length_[0] * length_[1] : length_[0];
}

Field::Field(const Grid& grid, double value) : grid_(grid), values_(grid.size(), value) {}

Field::Field(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw PreconditionError("field: value count " + std::to_string(values_.size()) +
                            " does not match grid size " + std::to_string(grid_.size()));
  }
}

Field Field::from_function(const Grid& grid, const std::function<double(double, double)>& fn) {
  Field out(grid);
  if (grid.dim() == 1) {
    for (int i = 0; i < grid.points(0); ++i) out.values_[i] = fn(grid.coord(0, i), 0.0);
  } else {
    const int n1 = grid.points(1);
    for (int i = 0; i < grid.points(0); ++i) {
      for (int j = 0; j < n1; ++j) {
        out.values_[static_cast<std::size_t>(i) * n1 + j] = fn(grid.coord(0, i), grid.coord(1, j));
      }
    }
  }
  return out;
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Field& Field::operator+=(double c) {
  for (double& v : values_) v += c;
  return *this;
}

void Field::require_finite(const char* context) const {
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw DomainError(std::string(context) + ": field contains non-finite values");
  }
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }
Field operator*(Field a, double s) { return a *= s; }

Field multiply(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Field map(const Field& a, const std::function<double(double)>& fn) {
  Field out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = fn(a[i]);
  return out;
}

double inner(const Field& u, const Field& v) {
  require_same_grid(u, v);
  const auto a = u.values();
  const auto b = v.values();
  return u.grid().cell_volume() * std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm_l2(const Field& u) { return std::sqrt(inner(u, u)); }

double norm_linf(const Field& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

double integral(const Field& u) {
  const auto a = u.values();
  return u.grid().cell_volume() * std::accumulate(a.begin(), a.end(), 0.0);
}

double mean(const Field& u) { return integral(u) / u.grid().domain_volume(); }

Field subtract_mean(const Field& u) {
  Field out = u;
  out += -mean(u);
  return out;
}

} // namespace ieq
