#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coarse/error.hpp"

namespace coarse {

using PointIndex = std::size_t;
using PointSet = std::vector<PointIndex>;

/// Absolute tolerance for real comparisons throughout the library.
inline constexpr double kTolerance = 1e-9;

enum class Norm { Sup, L1, L2 };

struct WeightedEdge {
  PointIndex u;
  PointIndex v;
  double weight;
};

/// A finite metric space with opaque point ids.
///
/// Two storage modes exist. Dense spaces keep the full distance matrix and
/// are verified exhaustively (symmetry, positivity, every triangle) at
/// construction. Coordinate spaces hold points of R^d under a norm; they are
/// metrics by construction, so only finiteness and distinctness are checked.
/// Coordinate storage keeps large lattice windows (e.g. 129 x 129) in O(n)
/// memory.
///
/// Instances are immutable; all accessors are safe to call concurrently.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace from_distance_matrix(const std::vector<std::vector<double>>& matrix,
                                                std::vector<std::string> ids = {},
                                                std::optional<PointIndex> basepoint = {});

  /// All-pairs shortest path metric of a connected graph with positive weights.
  static FiniteMetricSpace from_graph(std::size_t vertex_count, std::span<const WeightedEdge> edges,
                                      std::vector<std::string> ids = {},
                                      std::optional<PointIndex> basepoint = {});

  /// `coords` is row-major, `dim` values per point. Distances are
  /// scale * ||p - q||.
  static FiniteMetricSpace from_coordinates(std::size_t dim, std::vector<double> coords, Norm norm,
                                            double scale = 1.0, std::vector<std::string> ids = {},
                                            std::optional<PointIndex> basepoint = {});

  std::size_t size() const noexcept { return ids_.size(); }

  double distance(PointIndex x, PointIndex y) const noexcept {
    if (dense_) return matrix_[x * ids_.size() + y];
    return coordinate_distance(x, y);
  }

  /// min over c in candidates of d(x, c); +inf for an empty candidate list.
  double nearest_distance(PointIndex x, std::span<const PointIndex> candidates) const noexcept;

  const std::string& id(PointIndex x) const { return ids_.at(x); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  /// True when every id is a decimal integer literal (serialized as numbers).
  bool numeric_ids() const noexcept { return numeric_ids_; }
  std::optional<PointIndex> find(std::string_view id) const;
  /// Throws UnknownPoint.
  PointIndex index_of(std::string_view id) const;

  std::optional<PointIndex> basepoint() const noexcept { return basepoint_; }
  FiniteMetricSpace with_basepoint(std::optional<PointIndex> basepoint) const;

  double diameter() const;
  /// Smallest distance between distinct points; +inf for a one-point space.
  double min_separation() const;

  /// Induced metric on the listed points (kept in the given order).
  FiniteMetricSpace subspace(std::span<const PointIndex> points) const;

  bool is_dense() const noexcept { return dense_; }
  std::span<const double> matrix() const noexcept { return matrix_; }
  std::size_t coordinate_dim() const noexcept { return dim_; }
  std::span<const double> coordinates() const noexcept { return coords_; }
  std::span<const double> coordinates_of(PointIndex x) const noexcept {
    return std::span<const double>(coords_).subspan(x * dim_, dim_);
  }
  Norm norm() const noexcept { return norm_; }
  double scale() const noexcept { return scale_; }

  /// Structural equality: same ids and same distances.
  bool operator==(const FiniteMetricSpace& other) const;

  /// Builds a dense space from a matrix that is already known to be a metric
  /// (derived from a verified space). No O(n^3) re-check.
  static FiniteMetricSpace trusted_dense(std::vector<double> matrix, std::vector<std::string> ids,
                                         std::optional<PointIndex> basepoint);

 private:
  FiniteMetricSpace() = default;
  double coordinate_distance(PointIndex x, PointIndex y) const noexcept;
  void index_ids();

  std::vector<std::string> ids_;
  std::unordered_map<std::string, PointIndex> lookup_;
  bool numeric_ids_ = true;
  std::optional<PointIndex> basepoint_;

  bool dense_ = true;
  std::vector<double> matrix_;

  std::size_t dim_ = 0;
  std::vector<double> coords_;
  Norm norm_ = Norm::Sup;
  double scale_ = 1.0;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

inline SpacePtr share(FiniteMetricSpace space) {
  return std::make_shared<const FiniteMetricSpace>(std::move(space));
}

bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Truncation min(d, M).
FiniteMetricSpace micro_version(const FiniteMetricSpace& space, double M);

/// M-discretization: max(d, M) off the diagonal.
FiniteMetricSpace macro_version(const FiniteMetricSpace& space, double M);

/// Open ball {y : d(center, y) < r}, in index order.
PointSet ball(const FiniteMetricSpace& space, PointIndex center, double r);

// Common instances. Ids are the integer coordinates ("x" or "x,y").

/// Integer interval [first, last] with the usual metric.
FiniteMetricSpace integer_interval(long first, long last, double scale = 1.0);
/// Square [first, last]^2 of Z^2 under the given norm.
FiniteMetricSpace integer_grid(long first, long last, Norm norm = Norm::Sup, double scale = 1.0);
/// Rectangle [0, width) x [0, height) of Z^2.
FiniteMetricSpace integer_rectangle(long width, long height, Norm norm = Norm::Sup, double scale = 1.0);
/// Path graph 0 - 1 - ... - (n-1) with the given edge weight (dense storage).
FiniteMetricSpace path_graph(std::size_t n, double weight = 1.0);

/// Barycentric coordinates of a point of the standard simplex, l1 metric.
class SimplexPoint {
 public:
  /// Throws NotInSimplex when a coordinate is below -tol or the sum is off by
  /// more than tol.
  explicit SimplexPoint(std::vector<double> coords);

  static SimplexPoint vertex(std::size_t count, std::size_t i);

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const noexcept { return coords_; }
  bool on_boundary() const noexcept;

 private:
  std::vector<double> coords_;
};

/// Sum of coordinatewise absolute differences. Throws DimensionMismatch.
double l1_distance(const SimplexPoint& p, const SimplexPoint& q);
double l1_distance(std::span<const double> p, std::span<const double> q);

bool is_simplex_point(std::span<const double> coords, double tol = kTolerance);
bool on_simplex_boundary(std::span<const double> coords, double tol = kTolerance);

}  // namespace coarse
