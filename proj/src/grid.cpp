#include "fujita/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fujita {

RadialGrid::RadialGrid(std::vector<double> nodes, Spacing spacing)
    : nodes_(std::move(nodes)), spacing_(spacing) {
  if (nodes_.size() < kMinNodes) throw std::invalid_argument("RadialGrid needs at least 16 nodes");
  if (!(nodes_.front() > 0.0)) throw std::invalid_argument("RadialGrid nodes must be positive");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1])) throw std::invalid_argument("RadialGrid nodes must increase strictly");

  const std::size_t m = nodes_.size();
  faces_.resize(m + 1);
  faces_[0] = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    faces_[i] = spacing_ == Spacing::LogUniform ? std::sqrt(nodes_[i - 1] * nodes_[i])
                                                : 0.5 * (nodes_[i - 1] + nodes_[i]);
  }
  faces_[m] = nodes_[m - 1];
}

RadialGrid RadialGrid::log_uniform(double r_max, std::size_t nodes, double inner_ratio) {
  if (!(r_max > 0.0) || !(inner_ratio > 0.0 && inner_ratio < 1.0))
    throw std::invalid_argument("log_uniform: bad r_max or inner_ratio");
  std::vector<double> r(nodes);
  const double lo = std::log(r_max * inner_ratio);
  const double hi = std::log(r_max);
  for (std::size_t i = 0; i < nodes; ++i)
    r[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(nodes - 1));
  r.back() = r_max;
  return RadialGrid(std::move(r), Spacing::LogUniform);
}

RadialGrid RadialGrid::uniform(double r_min, double r_max, std::size_t nodes) {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw std::invalid_argument("uniform: need 0 < r_min < r_max");
  std::vector<double> r(nodes);
  for (std::size_t i = 0; i < nodes; ++i)
    r[i] = r_min + (r_max - r_min) * static_cast<double>(i) / static_cast<double>(nodes - 1);
  r.back() = r_max;
  return RadialGrid(std::move(r), Spacing::Uniform);
}

RadialGrid RadialGrid::from_nodes(std::vector<double> nodes, Spacing spacing) {
  return RadialGrid(std::move(nodes), spacing);
}

std::size_t RadialGrid::lower_bound(double r) const {
  return static_cast<std::size_t>(std::lower_bound(nodes_.begin(), nodes_.end(), r) - nodes_.begin());
}

GridPtr make_grid(RadialGrid grid) { return std::make_shared<const RadialGrid>(std::move(grid)); }

double sphere_area(double dimension) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dimension) / std::tgamma(0.5 * dimension);
}

RadialField RadialField::zeros(GridPtr grid, double dimension) {
  RadialField f;
  f.values.assign(grid->size(), 0.0);
  f.grid = std::move(grid);
  f.dimension = dimension;
  return f;
}

RadialField RadialField::sample(GridPtr grid, double dimension, const RadialProfile& profile) {
  RadialField f = zeros(std::move(grid), dimension);
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = profile(f.grid->r(i));
  return f;
}

bool RadialField::finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double RadialField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

RadialField& RadialField::operator+=(const RadialField& other) {
  if (other.size() != size()) throw std::invalid_argument("RadialField size mismatch");
  for (std::size_t i = 0; i < size(); ++i) values[i] += other.values[i];
  return *this;
}

RadialField& RadialField::operator-=(const RadialField& other) {
  if (other.size() != size()) throw std::invalid_argument("RadialField size mismatch");
  for (std::size_t i = 0; i < size(); ++i) values[i] -= other.values[i];
  return *this;
}

RadialField& RadialField::operator*=(double c) {
  for (double& v : values) v *= c;
  return *this;
}

RadialField operator+(RadialField a, const RadialField& b) { return a += b; }
RadialField operator-(RadialField a, const RadialField& b) { return a -= b; }
RadialField operator*(double c, RadialField a) { return a *= c; }

double lq_norm(const RadialField& field, double q, double weight_exponent) {
  return lq_norm(field, q, weight_exponent, 0.0, std::numeric_limits<double>::infinity());
}

double lq_norm(const RadialField& field, double q, double weight_exponent, double r_lo, double r_hi) {
  const RadialGrid& g = *field.grid;
  const std::size_t m = g.size();
  std::size_t first = g.lower_bound(r_lo);
  std::size_t last = m;
  while (last > first && g.r(last - 1) > r_hi) --last;
  if (last <= first) return 0.0;

  if (std::isinf(q)) {
    double mx = 0.0;
    for (std::size_t i = first; i < last; ++i) mx = std::max(mx, std::abs(field.values[i]));
    return mx;
  }

  const double e = field.dimension - 1.0 + weight_exponent;
  auto integrand = [&](std::size_t i) {
    return std::pow(std::abs(field.values[i]), q) * std::pow(g.r(i), e);
  };
  double sum = 0.0;
  if (first == 0 && e + 1.0 > 0.0)
    sum += std::pow(std::abs(field.values[0]), q) * std::pow(g.r(0), e + 1.0) / (e + 1.0);
  for (std::size_t i = first; i + 1 < last; ++i)
    sum += 0.5 * (integrand(i) + integrand(i + 1)) * (g.r(i + 1) - g.r(i));
  return std::pow(sphere_area(field.dimension) * sum, 1.0 / q);
}

double interpolate(const RadialField& field, double r) {
  const RadialGrid& g = *field.grid;
  const std::size_t m = g.size();
  if (r <= g.r_min()) return field.values.front();
  if (r > g.r_max()) return 0.0;
  std::size_t hi = g.lower_bound(r);
  if (hi < m && g.r(hi) == r) return field.values[hi];
  // Four-point stencil [s, s+3] around the bracketing pair (hi-1, hi).
  std::size_t s = hi >= 2 ? hi - 2 : 0;
  if (s + 4 > m) s = m - 4;
  const double x = std::log(r);
  double result = 0.0;
  for (std::size_t j = s; j < s + 4; ++j) {
    double w = 1.0;
    const double xj = std::log(g.r(j));
    for (std::size_t k = s; k < s + 4; ++k)
      if (k != j) w *= (x - std::log(g.r(k))) / (xj - std::log(g.r(k)));
    result += w * field.values[j];
  }
  return result;
}

}  // namespace fujita
