// Independent reference implementations used only by tests. These stay
// deliberately naive (enumeration, direct formulas) and share no code with
// the library paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyroute/fuzzy.hpp"
#include "fuzzyroute/network.hpp"

namespace oracles {

// Interval centroid of a sampled FOU by trying every switch position and
// taking the extreme centroid. O(n^2); fine for test resolutions.
struct BruteCentroid {
  double left;
  double right;
};

inline BruteCentroid brute_interval_centroid(const std::vector<double>& grid,
                                             const std::vector<double>& upper,
                                             const std::vector<double>& lower) {
  const std::size_t n = grid.size();
  double best_left = std::numeric_limits<double>::infinity();
  double best_right = -std::numeric_limits<double>::infinity();
  for (std::size_t split = 0; split <= n; ++split) {
    double num_l = 0, den_l = 0, num_r = 0, den_r = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double wl = j < split ? upper[j] : lower[j];
      const double wr = j < split ? lower[j] : upper[j];
      num_l += grid[j] * wl;
      den_l += wl;
      num_r += grid[j] * wr;
      den_r += wr;
    }
    if (den_l > 0) best_left = std::min(best_left, num_l / den_l);
    if (den_r > 0) best_right = std::max(best_right, num_r / den_r);
  }
  return {best_left, best_right};
}

inline BruteCentroid brute_type_reduce(
    const std::vector<std::pair<const fuzzyroute::IT2FuzzySet*, fuzzyroute::FiringInterval>>& fired,
    fuzzyroute::Interval universe, int resolution) {
  const std::size_t n = static_cast<std::size_t>(resolution);
  std::vector<double> grid(n), upper(n, 0.0), lower(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    grid[j] = universe.lo + universe.width() * double(j) / double(n - 1);
    for (const auto& [set, f] : fired) {
      if (f.hi <= 0) continue;
      upper[j] = std::max(upper[j], std::min(f.hi, set->umf().membership(grid[j])));
      lower[j] = std::max(lower[j], std::min(f.lo, set->lmf().membership(grid[j])));
    }
  }
  return brute_interval_centroid(grid, upper, lower);
}

// Plain type-1 Mamdani pipeline written from scratch: scalar memberships
// from the upper trapezoids, min firing, max aggregation, discrete
// centroid defuzzification.
inline double type1_mamdani(const fuzzyroute::FuzzyLogicUnit& unit, double x1,
                            double x2, int resolution) {
  const auto& in1 = unit.input1().sets();
  const auto& in2 = unit.input2().sets();
  const auto& out = unit.output().sets();
  std::vector<double> clip(out.size(), 0.0);
  for (std::size_t i = 0; i < in1.size(); ++i) {
    const double m1 = in1[i].umf().membership(x1);
    for (std::size_t j = 0; j < in2.size(); ++j) {
      const double m2 = in2[j].umf().membership(x2);
      const double w = std::min(m1, m2);
      auto& slot = clip[unit.rule_consequent(i, j)];
      slot = std::max(slot, w);
    }
  }
  const auto universe = unit.output().universe();
  double num = 0, den = 0;
  for (int j = 0; j < resolution; ++j) {
    const double y = universe.lo + universe.width() * double(j) / double(resolution - 1);
    double agg = 0;
    for (std::size_t s = 0; s < out.size(); ++s)
      agg = std::max(agg, std::min(clip[s], out[s].umf().membership(y)));
    num += y * agg;
    den += agg;
  }
  if (den <= 0) throw std::runtime_error("type1_mamdani: nothing fired");
  return num / den;
}

// Minimal-cost edge path by exhaustive enumeration of simple edge paths.
// Path cost sums every edge on the path, origin and destination included.
inline std::optional<double> brute_shortest_path_cost(
    const fuzzyroute::RoadNetwork& net, const std::string& origin,
    const std::string& dest,
    const std::map<std::string, double>& weights) {
  std::optional<double> best;
  std::vector<std::string> stack;
  std::set<std::string> used;

  auto dfs = [&](auto&& self, const std::string& edge, double cost) -> void {
    cost += weights.at(edge);
    if (best && cost >= *best) return;
    if (edge == dest) {
      best = cost;
      return;
    }
    used.insert(edge);
    for (const auto& next : net.successors(edge))
      if (!used.count(next)) self(self, next, cost);
    used.erase(edge);
  };
  dfs(dfs, origin, 0.0);
  return best;
}

}  // namespace oracles
