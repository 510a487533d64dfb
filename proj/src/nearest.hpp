#pragma once

// Nearest-neighbour queries against a fixed subset of a finite metric space.
// Coordinate spaces of dimension 1 and 2 use a sorted array or a uniform grid;
// everything else falls back to a linear scan.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "coarse/metric_space.hpp"

namespace coarse::detail {

class NearestFinder {
 public:
  NearestFinder(const FiniteMetricSpace& space, const PointSet& set) : space_(space), set_(set) {
    if (space.is_dense() || set.size() < 32) return;
    if (space.coordinate_dim() == 1) {
      mode_ = Mode::Sorted;
      sorted_.reserve(set.size());
      for (PointIndex p : set) sorted_.emplace_back(space.coordinates_of(p)[0], p);
      std::sort(sorted_.begin(), sorted_.end());
    } else if (space.coordinate_dim() == 2) {
      build_grid();
    }
  }

  /// (distance, point) of the nearest member of the set; (+inf, none) if empty.
  /// Ties go to the lowest point index.
  std::pair<double, PointIndex> query(PointIndex x) const {
    switch (mode_) {
      case Mode::Sorted: return query_sorted(x);
      case Mode::Grid: return query_grid(x);
      case Mode::Linear: break;
    }
    std::pair<double, PointIndex> best{kInf, kNone};
    for (PointIndex p : set_) consider(best, x, p);
    return best;
  }

  static constexpr PointIndex kNone = std::numeric_limits<PointIndex>::max();

 private:
  enum class Mode { Linear, Sorted, Grid };
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  void consider(std::pair<double, PointIndex>& best, PointIndex x, PointIndex p) const {
    const double d = space_.distance(x, p);
    if (d < best.first || (d == best.first && p < best.second)) best = {d, p};
  }

  std::pair<double, PointIndex> query_sorted(PointIndex x) const {
    const double v = space_.coordinates_of(x)[0];
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::make_pair(v, PointIndex{0}));
    std::pair<double, PointIndex> best{kInf, kNone};
    // Equal coordinates cannot repeat (points are distinct), so the two
    // neighbours in sorted order are the only candidates.
    if (it != sorted_.end()) consider(best, x, it->second);
    if (it != sorted_.begin()) consider(best, x, std::prev(it)->second);
    return best;
  }

  void build_grid() {
    mode_ = Mode::Grid;
    lo_[0] = lo_[1] = kInf;
    double hi[2] = {-kInf, -kInf};
    for (PointIndex p : set_) {
      const auto c = space_.coordinates_of(p);
      for (int k = 0; k < 2; ++k) {
        lo_[k] = std::min(lo_[k], c[k]);
        hi[k] = std::max(hi[k], c[k]);
      }
    }
    const double extent = std::max(hi[0] - lo_[0], hi[1] - lo_[1]);
    const double per_side = std::max(1.0, std::ceil(std::sqrt(static_cast<double>(set_.size()))));
    cell_ = extent > 0.0 ? extent / per_side : 1.0;
    for (int k = 0; k < 2; ++k) {
      cells_[k] = static_cast<long>(std::floor((hi[k] - lo_[k]) / cell_)) + 1;
    }
    start_.assign(static_cast<std::size_t>(cells_[0] * cells_[1]) + 1, 0);
    for (PointIndex p : set_) ++start_[cell_index(p) + 1];
    for (std::size_t i = 1; i < start_.size(); ++i) start_[i] += start_[i - 1];
    bucket_.resize(set_.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (PointIndex p : set_) bucket_[fill[cell_index(p)]++] = p;
  }

  long cell_of(double v, int axis) const { return static_cast<long>(std::floor((v - lo_[axis]) / cell_)); }

  std::size_t cell_index(PointIndex p) const {
    const auto c = space_.coordinates_of(p);
    const long cx = std::clamp(cell_of(c[0], 0), 0L, cells_[0] - 1);
    const long cy = std::clamp(cell_of(c[1], 1), 0L, cells_[1] - 1);
    return static_cast<std::size_t>(cy * cells_[0] + cx);
  }

  std::pair<double, PointIndex> query_grid(PointIndex x) const {
    const auto c = space_.coordinates_of(x);
    const long cx = cell_of(c[0], 0);
    const long cy = cell_of(c[1], 1);
    const long reach = std::max({std::abs(cx), std::abs(cx - cells_[0] + 1), std::abs(cy),
                                 std::abs(cy - cells_[1] + 1)}) + 1;
    std::pair<double, PointIndex> best{kInf, kNone};
    for (long ring = 0; ring <= reach; ++ring) {
      if (ring >= 1 && static_cast<double>(ring - 1) * cell_ * space_.scale() > best.first) break;
      for (long gy = cy - ring; gy <= cy + ring; ++gy) {
        if (gy < 0 || gy >= cells_[1]) continue;
        const bool edge_row = (gy == cy - ring || gy == cy + ring);
        for (long gx = cx - ring; gx <= cx + ring; gx += (edge_row ? 1 : 2 * ring)) {
          if (gx >= 0 && gx < cells_[0]) {
            const std::size_t cell = static_cast<std::size_t>(gy * cells_[0] + gx);
            for (std::size_t k = start_[cell]; k < start_[cell + 1]; ++k) consider(best, x, bucket_[k]);
          }
          if (ring == 0) break;
        }
      }
    }
    return best;
  }

  const FiniteMetricSpace& space_;
  const PointSet& set_;
  Mode mode_ = Mode::Linear;
  std::vector<std::pair<double, PointIndex>> sorted_;
  double lo_[2] = {0.0, 0.0};
  double cell_ = 1.0;
  long cells_[2] = {1, 1};
  std::vector<std::size_t> start_;
  std::vector<PointIndex> bucket_;
};

}  // namespace coarse::detail
