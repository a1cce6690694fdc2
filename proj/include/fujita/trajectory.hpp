#pragma once

#include <cstddef>
#include <vector>

#include "fujita/grid.hpp"

namespace fujita {

/// Time-stamped radial fields. `report` lists the indices of the frames on
/// which sup-in-time norms are taken (all frames when empty).
struct Trajectory {
  std::vector<double> times;
  std::vector<RadialField> fields;
  std::vector<std::size_t> report;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  void push(double t, RadialField field);

  std::vector<std::size_t> report_indices() const;
  /// Index of the stored time closest to t.
  std::size_t nearest(double t) const;
};

/// sup over reported frames of t^mu ||u(t)||_{L^r}.
double x_norm(const Trajectory& traj, double r, double mu);

/// sup over reported frames of t^mu ||u(t) - v(t)||_{L^r}; frames must align.
double x_distance(const Trajectory& u, const Trajectory& v, double r, double mu);

}  // namespace fujita
