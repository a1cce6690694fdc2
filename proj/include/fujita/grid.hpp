#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace fujita {

/// Strictly increasing positive radial nodes r_1 < ... < r_M. The origin is
/// never a node; the first control volume extends down to r = 0.
class RadialGrid {
public:
  enum class Spacing { LogUniform, Uniform, Custom };

  static constexpr std::size_t kMinNodes = 16;

  /// r_1 = inner_ratio * r_max, geometric spacing up to r_M = r_max.
  static RadialGrid log_uniform(double r_max, std::size_t nodes, double inner_ratio = 1e-4);
  static RadialGrid uniform(double r_min, double r_max, std::size_t nodes);
  /// Takes arbitrary strictly increasing positive nodes (at least kMinNodes).
  static RadialGrid from_nodes(std::vector<double> nodes, Spacing spacing = Spacing::Custom);

  std::size_t size() const { return nodes_.size(); }
  double r(std::size_t i) const { return nodes_[i]; }
  double r_min() const { return nodes_.front(); }
  double r_max() const { return nodes_.back(); }
  Spacing spacing() const { return spacing_; }
  std::span<const double> nodes() const { return nodes_; }

  /// Control-volume faces f_0 = 0 < f_1 < ... < f_M = r_M; cell i spans [f_i, f_{i+1}].
  /// Interior faces sit at the geometric (log grids) or arithmetic midpoint.
  const std::vector<double>& faces() const { return faces_; }

  /// Index of the first node >= r (size() if none).
  std::size_t lower_bound(double r) const;

private:
  RadialGrid(std::vector<double> nodes, Spacing spacing);
  std::vector<double> nodes_;
  std::vector<double> faces_;
  Spacing spacing_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;
using RadialProfile = std::function<double(double)>;

GridPtr make_grid(RadialGrid grid);

/// Surface area of the unit sphere in (possibly non-integer) dimension d.
double sphere_area(double dimension);

/// Nodal values of a radial function on a grid, in dimension `dimension`
/// (an integer N for the physical problem, the effective N-bar after the
/// radial change of variables).
struct RadialField {
  GridPtr grid;
  std::vector<double> values;
  double dimension = 3.0;

  static RadialField zeros(GridPtr grid, double dimension);
  static RadialField sample(GridPtr grid, double dimension, const RadialProfile& f);

  std::size_t size() const { return values.size(); }
  bool finite() const;
  double max_abs() const;

  RadialField& operator+=(const RadialField& other);
  RadialField& operator-=(const RadialField& other);
  RadialField& operator*=(double c);
};

RadialField operator+(RadialField a, const RadialField& b);
RadialField operator-(RadialField a, const RadialField& b);
RadialField operator*(double c, RadialField a);

/// ||u||_{L^q} for the measure omega_{d-1} r^{d-1+weight_exponent} dr:
/// trapezoidal rule on the nodes plus the core [0, r_1] with u frozen at
/// u(r_1). q = infinity returns max |u|. Optional [r_lo, r_hi] restricts the
/// integration to nodes inside that range.
double lq_norm(const RadialField& field, double q, double weight_exponent = 0.0);
double lq_norm(const RadialField& field, double q, double weight_exponent, double r_lo, double r_hi);

/// Cubic Lagrange interpolation in log r. Left of r_1 the value u(r_1) is
/// used (radial symmetry); right of r_M the field is zero.
double interpolate(const RadialField& field, double r);

}  // namespace fujita
