#include "coarse/point_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coarse/parallel.hpp"

namespace coarse {

double target_distance(std::span<const double> a, std::span<const double> b, TargetMetric metric) {
  double acc = 0.0;
  switch (metric) {
    case TargetMetric::L1:
      for (std::size_t k = 0; k < a.size(); ++k) acc += std::abs(a[k] - b[k]);
      return acc;
    case TargetMetric::Sup:
      for (std::size_t k = 0; k < a.size(); ++k) acc = std::max(acc, std::abs(a[k] - b[k]));
      return acc;
    case TargetMetric::Euclidean:
      for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
      return std::sqrt(acc);
  }
  return acc;
}

PointFunction::PointFunction(SpacePtr space, std::size_t dim, std::vector<double> values, TargetMetric metric)
    : space_(std::move(space)), dim_(dim), values_(std::move(values)), target_(metric) {
  if (!space_) throw Error(ErrorKind::InvalidArgument, "function without a space");
  if (dim_ == 0) throw Error(ErrorKind::InvalidArgument, "function values need at least one coordinate");
  if (values_.size() != space_->size() * dim_) {
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(space_->size() * dim_) +
                                                  " values, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw Error(ErrorKind::NonFiniteValue, "non-finite value", {i / dim_});
  }
}

PointFunction PointFunction::real(SpacePtr space, std::vector<double> values) {
  return PointFunction(std::move(space), 1, std::move(values), TargetMetric::L1);
}

PointFunction PointFunction::simplex(SpacePtr space, std::size_t dim, std::vector<double> values) {
  PointFunction f(std::move(space), dim, std::move(values), TargetMetric::L1);
  for (PointIndex x = 0; x < f.metric().size(); ++x) {
    if (!is_simplex_point(f(x))) {
      throw Error(ErrorKind::NotInSimplex, "value at '" + f.metric().id(x) + "' is not barycentric", {x});
    }
  }
  f.simplex_ = true;
  return f;
}

PartialFunction PartialFunction::restrict(const PointFunction& f, const PointSet& domain) {
  PartialFunction p;
  p.domain = domain;
  p.dim = f.dim();
  p.values.reserve(domain.size() * f.dim());
  for (PointIndex x : domain) {
    const auto row = f(x);
    p.values.insert(p.values.end(), row.begin(), row.end());
  }
  return p;
}

namespace {

// rows(i) gives the value of points[i]; pairs are scanned in index order of
// `points` so the reported worst pair is the first maximizer.
template <class Rows>
LipschitzReport scan_pairs(const FiniteMetricSpace& space, std::span<const PointIndex> points, Rows rows,
                           TargetMetric metric, double lambda, double c) {
  struct Partial {
    bool satisfied = true;
    double best = -std::numeric_limits<double>::infinity();
    std::optional<std::pair<std::size_t, std::size_t>> pair;
  };
  const std::size_t n = points.size();
  const std::size_t chunks = chunks_for(n, 256);
  std::vector<Partial> parts(chunks);
  parallel_chunks(n, chunks, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    Partial& p = parts[ci];
    for (std::size_t i = begin; i < end; ++i) {
      const auto fi = rows(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = space.distance(points[i], points[j]);
        const double td = target_distance(fi, rows(j), metric);
        if (td > lambda * d + c + kTolerance) p.satisfied = false;
        const double ratio = (td - c) / d;
        if (ratio > p.best) {
          p.best = ratio;
          p.pair = std::make_pair(i, j);
        }
      }
    }
  });
  LipschitzReport report;
  report.lambda = lambda;
  report.c = c;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : parts) {
    report.satisfied = report.satisfied && p.satisfied;
    if (p.pair && p.best > best) {
      best = p.best;
      report.worst_pair = std::make_pair(points[p.pair->first], points[p.pair->second]);
    }
  }
  report.worst_ratio = std::max(0.0, best);
  return report;
}

}  // namespace

LipschitzReport check_lipschitz(const PointFunction& f, double lambda, double c) {
  PointSet all(f.metric().size());
  for (PointIndex i = 0; i < all.size(); ++i) all[i] = i;
  return scan_pairs(f.metric(), all, [&](std::size_t i) { return f(i); }, f.target(), lambda, c);
}

LipschitzReport check_lipschitz(const FiniteMetricSpace& space, const PartialFunction& f, double lambda, double c,
                                TargetMetric metric) {
  if (f.values.size() != f.domain.size() * f.dim) {
    throw Error(ErrorKind::DimensionMismatch, "partial function rows do not match its domain");
  }
  for (PointIndex x : f.domain) {
    if (x >= space.size()) throw Error(ErrorKind::UnknownPoint, "domain point out of range", {x});
  }
  return scan_pairs(space, f.domain, [&](std::size_t i) { return f.row(i); }, metric, lambda, c);
}

}  // namespace coarse
