#include "fujita/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fujita {

void Trajectory::push(double t, RadialField field) {
  if (!times.empty() && !(t > times.back())) throw std::invalid_argument("Trajectory times must increase");
  times.push_back(t);
  fields.push_back(std::move(field));
}

std::vector<std::size_t> Trajectory::report_indices() const {
  if (!report.empty()) return report;
  std::vector<std::size_t> all(times.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

std::size_t Trajectory::nearest(double t) const {
  if (times.empty()) throw std::out_of_range("empty trajectory");
  auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end()) return times.size() - 1;
  auto k = static_cast<std::size_t>(it - times.begin());
  if (k > 0 && std::abs(times[k - 1] - t) < std::abs(times[k] - t)) return k - 1;
  return k;
}

double x_norm(const Trajectory& traj, double r, double mu) {
  double sup = 0.0;
  for (std::size_t k : traj.report_indices()) {
    if (!(traj.times[k] > 0.0)) continue;
    sup = std::max(sup, std::pow(traj.times[k], mu) * lq_norm(traj.fields[k], r));
  }
  return sup;
}

double x_distance(const Trajectory& u, const Trajectory& v, double r, double mu) {
  if (u.size() != v.size()) throw std::invalid_argument("x_distance: trajectories do not align");
  double sup = 0.0;
  for (std::size_t k : u.report_indices()) {
    if (!(u.times[k] > 0.0)) continue;
    sup = std::max(sup, std::pow(u.times[k], mu) * lq_norm(u.fields[k] - v.fields[k], r));
  }
  return sup;
}

}  // namespace fujita
