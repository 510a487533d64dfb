#include "coarse/metric_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "coarse/parallel.hpp"

namespace coarse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

std::vector<std::string> default_ids(std::size_t n) {
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
  return ids;
}

void check_ids(const std::vector<std::string>& ids, std::size_t n) {
  if (ids.size() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(n) + " point ids, got " + std::to_string(ids.size()));
  }
}

void check_basepoint(std::optional<PointIndex> bp, std::size_t n) {
  if (bp && *bp >= n) throw Error(ErrorKind::UnknownPoint, "basepoint out of range", {*bp});
}

// Scans every triple of a symmetric n x n matrix. Returns the lexicographically
// first (x, y, z) with d(x,z) > d(x,y) + d(y,z) + tol.
std::optional<std::array<PointIndex, 3>> find_triangle_violation(const std::vector<double>& d,
                                                                 std::size_t n) {
  const std::size_t chunks = chunks_for(n, 16);
  std::vector<std::optional<std::array<PointIndex, 3>>> found(chunks);
  parallel_chunks(n, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) {
      const double* rx = &d[x * n];
      for (std::size_t y = 0; y < n; ++y) {
        const double dxy = rx[y] + kTolerance;
        const double* ry = &d[y * n];
        bool bad = false;
        for (std::size_t z = x + 1; z < n; ++z) bad |= rx[z] > dxy + ry[z];
        if (!bad) continue;
        for (std::size_t z = x + 1; z < n; ++z) {
          if (rx[z] > dxy + ry[z]) {
            found[c] = std::array<PointIndex, 3>{x, y, z};
            return;
          }
        }
      }
    }
  });
  for (auto& f : found) {
    if (f) return f;
  }
  return std::nullopt;
}

}  // namespace

void FiniteMetricSpace::index_ids() {
  lookup_.clear();
  lookup_.reserve(ids_.size());
  numeric_ids_ = true;
  for (PointIndex i = 0; i < ids_.size(); ++i) {
    if (!lookup_.emplace(ids_[i], i).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate point id '" + ids_[i] + "'", {i});
    }
    numeric_ids_ = numeric_ids_ && is_integer_literal(ids_[i]);
  }
}

FiniteMetricSpace FiniteMetricSpace::from_distance_matrix(const std::vector<std::vector<double>>& matrix,
                                                          std::vector<std::string> ids,
                                                          std::optional<PointIndex> basepoint) {
  const std::size_t n = matrix.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "a metric space needs at least one point");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw Error(ErrorKind::NonSquareMatrix, "row " + std::to_string(i) + " has " +
                                                   std::to_string(matrix[i].size()) + " entries, expected " +
                                                   std::to_string(n));
    }
  }
  if (ids.empty()) ids = default_ids(n);
  check_ids(ids, n);
  check_basepoint(basepoint, n);

  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = matrix[i][j];
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteValue, "non-finite distance", {i, j});
      if (i == j) {
        if (std::abs(v) > kTolerance) {
          throw Error(ErrorKind::InvalidArgument, "nonzero diagonal entry", {i, i});
        }
        d[i * n + j] = 0.0;
        continue;
      }
      if (v < 0.0) throw Error(ErrorKind::NegativeDistance, "negative distance", {i, j});
      if (v == 0.0) throw Error(ErrorKind::CoincidentPoints, "distinct points at distance 0", {i, j});
      if (j > i && std::abs(v - matrix[j][i]) > kTolerance) {
        throw Error(ErrorKind::AsymmetricMatrix,
                    "d(" + std::to_string(i) + "," + std::to_string(j) + ") != d(" + std::to_string(j) +
                        "," + std::to_string(i) + ")",
                    {i, j, i});
      }
      d[i * n + j] = (j > i) ? v : matrix[j][i];
    }
  }
  if (auto v = find_triangle_violation(d, n)) {
    const auto [x, y, z] = *v;
    throw Error(ErrorKind::TriangleViolation,
                "d(" + std::to_string(x) + "," + std::to_string(z) + ") exceeds d(" + std::to_string(x) + "," +
                    std::to_string(y) + ") + d(" + std::to_string(y) + "," + std::to_string(z) + ")",
                {x, y, z});
  }
  return trusted_dense(std::move(d), std::move(ids), basepoint);
}

FiniteMetricSpace FiniteMetricSpace::trusted_dense(std::vector<double> matrix, std::vector<std::string> ids,
                                                   std::optional<PointIndex> basepoint) {
  FiniteMetricSpace s;
  s.ids_ = std::move(ids);
  s.dense_ = true;
  s.matrix_ = std::move(matrix);
  s.basepoint_ = basepoint;
  s.index_ids();
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_graph(std::size_t vertex_count, std::span<const WeightedEdge> edges,
                                                std::vector<std::string> ids,
                                                std::optional<PointIndex> basepoint) {
  const std::size_t n = vertex_count;
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "a graph needs at least one vertex");
  std::vector<std::vector<std::pair<PointIndex, double>>> adj(n);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw Error(ErrorKind::UnknownPoint, "edge endpoint out of range", {e.u, e.v});
    if (!std::isfinite(e.weight) || e.weight <= 0.0) {
      throw Error(ErrorKind::InvalidArgument, "edge weights must be positive and finite", {e.u, e.v});
    }
    if (e.u == e.v) continue;
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }

  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
  using Item = std::pair<double, PointIndex>;
  for (PointIndex src = 0; src < n; ++src) {
    auto& row = dist[src];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    row[src] = 0.0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du > row[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (du + w < row[v]) {
          row[v] = du + w;
          heap.emplace(row[v], v);
        }
      }
    }
    for (PointIndex v = 0; v < n; ++v) {
      if (!std::isfinite(row[v])) {
        throw Error(ErrorKind::DisconnectedGraph, "vertex unreachable from " + std::to_string(src), {src, v});
      }
    }
  }
  return from_distance_matrix(dist, std::move(ids), basepoint);
}

FiniteMetricSpace FiniteMetricSpace::from_coordinates(std::size_t dim, std::vector<double> coords, Norm norm,
                                                      double scale, std::vector<std::string> ids,
                                                      std::optional<PointIndex> basepoint) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "coordinate dimension must be positive");
  if (coords.size() % dim != 0) {
    throw Error(ErrorKind::DimensionMismatch, "coordinate count is not a multiple of the dimension");
  }
  if (!std::isfinite(scale) || scale <= 0.0) throw Error(ErrorKind::InvalidArgument, "scale must be positive");
  const std::size_t n = coords.size() / dim;
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "a metric space needs at least one point");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) throw Error(ErrorKind::NonFiniteValue, "non-finite coordinate", {i / dim});
  }
  if (ids.empty()) ids = default_ids(n);
  check_ids(ids, n);
  check_basepoint(basepoint, n);

  std::vector<PointIndex> order(n);
  std::iota(order.begin(), order.end(), PointIndex{0});
  auto row = [&](PointIndex i) { return std::span<const double>(coords).subspan(i * dim, dim); };
  std::sort(order.begin(), order.end(), [&](PointIndex a, PointIndex b) {
    return std::lexicographical_compare(row(a).begin(), row(a).end(), row(b).begin(), row(b).end());
  });
  for (std::size_t k = 1; k < n; ++k) {
    if (std::equal(row(order[k - 1]).begin(), row(order[k - 1]).end(), row(order[k]).begin())) {
      throw Error(ErrorKind::CoincidentPoints, "two points share coordinates",
                  {std::min(order[k - 1], order[k]), std::max(order[k - 1], order[k])});
    }
  }

  FiniteMetricSpace s;
  s.ids_ = std::move(ids);
  s.dense_ = false;
  s.dim_ = dim;
  s.coords_ = std::move(coords);
  s.norm_ = norm;
  s.scale_ = scale;
  s.basepoint_ = basepoint;
  s.index_ids();
  return s;
}

double FiniteMetricSpace::coordinate_distance(PointIndex x, PointIndex y) const noexcept {
  const double* a = &coords_[x * dim_];
  const double* b = &coords_[y * dim_];
  double acc = 0.0;
  switch (norm_) {
    case Norm::Sup:
      for (std::size_t k = 0; k < dim_; ++k) acc = std::max(acc, std::abs(a[k] - b[k]));
      return scale_ * acc;
    case Norm::L1:
      for (std::size_t k = 0; k < dim_; ++k) acc += std::abs(a[k] - b[k]);
      return scale_ * acc;
    case Norm::L2:
      for (std::size_t k = 0; k < dim_; ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
      return scale_ * std::sqrt(acc);
  }
  return 0.0;
}

double FiniteMetricSpace::nearest_distance(PointIndex x, std::span<const PointIndex> candidates) const noexcept {
  double best = kInf;
  if (dense_) {
    const double* row = &matrix_[x * ids_.size()];
    for (PointIndex c : candidates) best = std::min(best, row[c]);
    return best;
  }
  if (dim_ == 1) {
    const double a = coords_[x];
    for (PointIndex c : candidates) best = std::min(best, std::abs(a - coords_[c]));
    return scale_ * best;
  }
  if (dim_ == 2 && norm_ != Norm::L2) {
    const double a0 = coords_[2 * x], a1 = coords_[2 * x + 1];
    if (norm_ == Norm::Sup) {
      for (PointIndex c : candidates) {
        best = std::min(best, std::max(std::abs(a0 - coords_[2 * c]), std::abs(a1 - coords_[2 * c + 1])));
      }
    } else {
      for (PointIndex c : candidates) {
        best = std::min(best, std::abs(a0 - coords_[2 * c]) + std::abs(a1 - coords_[2 * c + 1]));
      }
    }
    return scale_ * best;
  }
  for (PointIndex c : candidates) best = std::min(best, coordinate_distance(x, c));
  return best;
}

std::optional<PointIndex> FiniteMetricSpace::find(std::string_view id) const {
  const auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

PointIndex FiniteMetricSpace::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorKind::UnknownPoint, "no point with id '" + std::string(id) + "'");
}

FiniteMetricSpace FiniteMetricSpace::with_basepoint(std::optional<PointIndex> basepoint) const {
  check_basepoint(basepoint, size());
  FiniteMetricSpace copy = *this;
  copy.basepoint_ = basepoint;
  return copy;
}

double FiniteMetricSpace::diameter() const {
  const std::size_t n = size();
  if (dense_) return n == 0 ? 0.0 : *std::max_element(matrix_.begin(), matrix_.end());
  if (norm_ == Norm::Sup || norm_ == Norm::L1) {
    // Extremes of linear functionals: per-axis ranges for sup, sign patterns for l1.
    const std::size_t patterns = (norm_ == Norm::Sup) ? dim_ : (std::size_t{1} << (dim_ - 1));
    double best = 0.0;
    for (std::size_t p = 0; p < patterns; ++p) {
      double lo = kInf, hi = -kInf;
      for (PointIndex x = 0; x < n; ++x) {
        double v = 0.0;
        if (norm_ == Norm::Sup) {
          v = coords_[x * dim_ + p];
        } else {
          for (std::size_t k = 0; k < dim_; ++k) {
            const bool neg = k > 0 && ((p >> (k - 1)) & 1U);
            v += neg ? -coords_[x * dim_ + k] : coords_[x * dim_ + k];
          }
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      best = std::max(best, hi - lo);
    }
    return scale_ * best;
  }
  double best = 0.0;
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = x + 1; y < n; ++y) best = std::max(best, distance(x, y));
  }
  return best;
}

double FiniteMetricSpace::min_separation() const {
  const std::size_t n = size();
  double best = kInf;
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = x + 1; y < n; ++y) best = std::min(best, distance(x, y));
  }
  return best;
}

FiniteMetricSpace FiniteMetricSpace::subspace(std::span<const PointIndex> points) const {
  const std::size_t k = points.size();
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "empty subspace");
  std::vector<std::string> ids(k);
  std::optional<PointIndex> bp;
  for (std::size_t i = 0; i < k; ++i) {
    if (points[i] >= size()) throw Error(ErrorKind::UnknownPoint, "subspace point out of range", {points[i]});
    ids[i] = ids_[points[i]];
    if (basepoint_ && *basepoint_ == points[i]) bp = i;
  }
  if (dense_) {
    std::vector<double> m(k * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) m[i * k + j] = distance(points[i], points[j]);
    }
    return trusted_dense(std::move(m), std::move(ids), bp);
  }
  std::vector<double> c;
  c.reserve(k * dim_);
  for (PointIndex p : points) {
    const auto row = coordinates_of(p);
    c.insert(c.end(), row.begin(), row.end());
  }
  return from_coordinates(dim_, std::move(c), norm_, scale_, std::move(ids), bp);
}

bool FiniteMetricSpace::operator==(const FiniteMetricSpace& other) const {
  if (ids_ != other.ids_) return false;
  if (dense_ && other.dense_) return matrix_ == other.matrix_;
  if (!dense_ && !other.dense_) {
    return dim_ == other.dim_ && norm_ == other.norm_ && scale_ == other.scale_ && coords_ == other.coords_;
  }
  for (PointIndex x = 0; x < size(); ++x) {
    for (PointIndex y = x + 1; y < size(); ++y) {
      if (std::abs(distance(x, y) - other.distance(x, y)) > kTolerance) return false;
    }
  }
  return true;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace {

FiniteMetricSpace transformed(const FiniteMetricSpace& space, double M, bool micro) {
  if (!(M > 0.0) || !std::isfinite(M)) throw Error(ErrorKind::NonpositiveM, "M must be positive");
  const std::size_t n = space.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = 0; y < n; ++y) {
      if (x == y) continue;
      const double d = space.distance(x, y);
      m[x][y] = micro ? std::min(d, M) : std::max(d, M);
    }
  }
  return FiniteMetricSpace::from_distance_matrix(m, space.ids(), space.basepoint());
}

}  // namespace

FiniteMetricSpace micro_version(const FiniteMetricSpace& space, double M) { return transformed(space, M, true); }

FiniteMetricSpace macro_version(const FiniteMetricSpace& space, double M) { return transformed(space, M, false); }

PointSet ball(const FiniteMetricSpace& space, PointIndex center, double r) {
  if (center >= space.size()) throw Error(ErrorKind::UnknownPoint, "ball center out of range", {center});
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be nonnegative");
  PointSet out;
  for (PointIndex y = 0; y < space.size(); ++y) {
    if (space.distance(center, y) < r) out.push_back(y);
  }
  return out;
}

FiniteMetricSpace integer_interval(long first, long last, double scale) {
  if (last < first) throw Error(ErrorKind::InvalidArgument, "empty interval");
  std::vector<double> c;
  std::vector<std::string> ids;
  for (long v = first; v <= last; ++v) {
    c.push_back(static_cast<double>(v));
    ids.push_back(std::to_string(v));
  }
  return FiniteMetricSpace::from_coordinates(1, std::move(c), Norm::Sup, scale, std::move(ids));
}

FiniteMetricSpace integer_grid(long first, long last, Norm norm, double scale) {
  if (last < first) throw Error(ErrorKind::InvalidArgument, "empty grid");
  std::vector<double> c;
  std::vector<std::string> ids;
  for (long y = first; y <= last; ++y) {
    for (long x = first; x <= last; ++x) {
      c.push_back(static_cast<double>(x));
      c.push_back(static_cast<double>(y));
      ids.push_back(std::to_string(x) + "," + std::to_string(y));
    }
  }
  return FiniteMetricSpace::from_coordinates(2, std::move(c), norm, scale, std::move(ids));
}

FiniteMetricSpace integer_rectangle(long width, long height, Norm norm, double scale) {
  if (width <= 0 || height <= 0) throw Error(ErrorKind::InvalidArgument, "empty rectangle");
  std::vector<double> c;
  std::vector<std::string> ids;
  for (long y = 0; y < height; ++y) {
    for (long x = 0; x < width; ++x) {
      c.push_back(static_cast<double>(x));
      c.push_back(static_cast<double>(y));
      ids.push_back(std::to_string(x) + "," + std::to_string(y));
    }
  }
  return FiniteMetricSpace::from_coordinates(2, std::move(c), norm, scale, std::move(ids));
}

FiniteMetricSpace path_graph(std::size_t n, double weight) {
  std::vector<WeightedEdge> edges;
  for (PointIndex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, weight});
  return FiniteMetricSpace::from_graph(n, edges);
}

SimplexPoint::SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorKind::NotInSimplex, "empty coordinate vector");
  if (!is_simplex_point(coords_)) throw Error(ErrorKind::NotInSimplex, "coordinates are not barycentric");
}

SimplexPoint SimplexPoint::vertex(std::size_t count, std::size_t i) {
  std::vector<double> c(count, 0.0);
  c.at(i) = 1.0;
  return SimplexPoint(std::move(c));
}

bool SimplexPoint::on_boundary() const noexcept { return on_simplex_boundary(coords_); }

bool is_simplex_point(std::span<const double> coords, double tol) {
  double sum = 0.0;
  for (double v : coords) {
    if (!std::isfinite(v) || v < -tol) return false;
    sum += v;
  }
  return !coords.empty() && std::abs(sum - 1.0) <= tol;
}

bool on_simplex_boundary(std::span<const double> coords, double tol) {
  return !coords.empty() && *std::min_element(coords.begin(), coords.end()) <= tol;
}

double l1_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorKind::DimensionMismatch, "simplex points of different length");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return acc;
}

double l1_distance(const SimplexPoint& p, const SimplexPoint& q) { return l1_distance(p.coords(), q.coords()); }

}  // namespace coarse
