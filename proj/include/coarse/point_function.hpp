#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coarse/metric_space.hpp"

namespace coarse {

/// Metric used on function values. One-dimensional values use |a - b| under
/// every choice.
enum class TargetMetric { L1, Euclidean, Sup };

double target_distance(std::span<const double> a, std::span<const double> b, TargetMetric metric);

/// A total map from the points of a space to R^dim (row-major storage).
/// Simplex-valued functions use the l1 metric and have every row in the
/// standard simplex.
class PointFunction {
 public:
  PointFunction(SpacePtr space, std::size_t dim, std::vector<double> values,
                TargetMetric metric = TargetMetric::L1);

  static PointFunction real(SpacePtr space, std::vector<double> values);
  /// Throws NotInSimplex when a row is not a barycentric vector.
  static PointFunction simplex(SpacePtr space, std::size_t dim, std::vector<double> values);

  const SpacePtr& space() const noexcept { return space_; }
  const FiniteMetricSpace& metric() const noexcept { return *space_; }
  std::size_t dim() const noexcept { return dim_; }
  TargetMetric target() const noexcept { return target_; }
  bool simplex_valued() const noexcept { return simplex_; }

  std::span<const double> operator()(PointIndex x) const noexcept {
    return std::span<const double>(values_).subspan(x * dim_, dim_);
  }
  double at(PointIndex x, std::size_t k = 0) const noexcept { return values_[x * dim_ + k]; }
  const std::vector<double>& values() const noexcept { return values_; }

  double target_distance(PointIndex x, PointIndex y) const noexcept {
    return coarse::target_distance((*this)(x), (*this)(y), target_);
  }

 private:
  SpacePtr space_;
  std::size_t dim_;
  std::vector<double> values_;
  TargetMetric target_;
  bool simplex_ = false;
};

/// Values on a subset A of a space; row i belongs to domain[i].
struct PartialFunction {
  PointSet domain;
  std::size_t dim = 1;
  std::vector<double> values;

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values).subspan(i * dim, dim);
  }
  /// Restriction of a total function.
  static PartialFunction restrict(const PointFunction& f, const PointSet& domain);
};

/// Verdict of the affine bound d_Y(f(x), f(y)) <= lambda * d(x, y) + c.
struct LipschitzReport {
  double lambda = 0.0;
  double c = 0.0;
  bool satisfied = true;
  /// Pair maximizing (d_Y - c) / d; absent for spaces with one point.
  std::optional<std::pair<PointIndex, PointIndex>> worst_pair;
  /// That maximum, clamped below at 0.
  double worst_ratio = 0.0;
};

/// Exhaustive check over all unordered pairs of distinct points.
LipschitzReport check_lipschitz(const PointFunction& f, double lambda, double c = 0.0);

/// Same check restricted to the points of a partial function. Pairs are
/// reported as space indices.
LipschitzReport check_lipschitz(const FiniteMetricSpace& space, const PartialFunction& f, double lambda,
                                double c = 0.0, TargetMetric metric = TargetMetric::L1);

/// Smallest lambda with f lambda-Lipschitz (c = 0).
inline double lipschitz_constant(const PointFunction& f) { return check_lipschitz(f, 0.0, 0.0).worst_ratio; }

}  // namespace coarse
