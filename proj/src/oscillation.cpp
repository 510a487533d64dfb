#include "coarse/oscillation.hpp"

#include <algorithm>
#include <cmath>

#include "coarse/parallel.hpp"

namespace coarse {

namespace {

using Pair = std::pair<PointIndex, PointIndex>;

// First pair (i < j in the order of `points`) accepted by `hit`.
template <class Hit>
std::optional<Pair> first_pair(std::span<const PointIndex> points, Hit hit) {
  const std::size_t n = points.size();
  const std::size_t chunks = chunks_for(n, 256);
  std::vector<std::optional<Pair>> found(chunks);
  parallel_chunks(n, chunks, [&](std::size_t c, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (hit(i, j)) {
          found[c] = Pair{points[i], points[j]};
          return;
        }
      }
    }
  });
  for (const auto& f : found) {
    if (f) return f;
  }
  return std::nullopt;
}

// For every pair, `key(i, j)` selects a bucket (or none) and `value` is
// folded into that bucket with max. Deterministic regardless of threads.
template <class Key, class Value>
std::vector<double> bucket_max(std::size_t n, std::size_t buckets, Key key, Value value) {
  const std::size_t chunks = chunks_for(n, 256);
  std::vector<std::vector<double>> parts(chunks, std::vector<double>(buckets, 0.0));
  parallel_chunks(n, chunks, [&](std::size_t c, std::size_t b, std::size_t e) {
    auto& best = parts[c];
    for (std::size_t i = b; i < e; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::optional<std::size_t> slot = key(i, j);
        if (slot) best[*slot] = std::max(best[*slot], value(i, j));
      }
    }
  });
  std::vector<double> out(buckets, 0.0);
  for (const auto& p : parts) {
    for (std::size_t k = 0; k < buckets; ++k) out[k] = std::max(out[k], p[k]);
  }
  return out;
}

PointSet all_points(std::size_t n) {
  PointSet p(n);
  for (PointIndex i = 0; i < n; ++i) p[i] = i;
  return p;
}

PointIndex require_basepoint(const FiniteMetricSpace& space) {
  if (!space.basepoint()) throw Error(ErrorKind::NoBasepoint, "the space has no basepoint");
  return *space.basepoint();
}

template <class Rows>
VariationProfile profile_impl(const FiniteMetricSpace& space, std::span<const PointIndex> points, Rows rows,
                              TargetMetric metric, double R, std::span<const double> Ns) {
  const PointIndex x0 = require_basepoint(space);
  VariationProfile out;
  out.R = R;
  std::vector<double> ns(Ns.begin(), Ns.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.empty()) return out;
  std::vector<double> radius(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) radius[i] = space.distance(x0, points[i]);
  // A pair with min radius rho counts for every sampled N <= rho; store it at
  // the largest such N and take suffix maxima.
  auto best = bucket_max(
      points.size(), ns.size(),
      [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
        if (space.distance(points[i], points[j]) > R) return std::nullopt;
        const double rho = std::min(radius[i], radius[j]);
        const auto it = std::upper_bound(ns.begin(), ns.end(), rho);
        if (it == ns.begin()) return std::nullopt;
        return static_cast<std::size_t>(it - ns.begin()) - 1;
      },
      [&](std::size_t i, std::size_t j) { return target_distance(rows(i), rows(j), metric); });
  for (std::size_t k = ns.size() - 1; k-- > 0;) best[k] = std::max(best[k], best[k + 1]);
  for (std::size_t k = 0; k < ns.size(); ++k) out.entries.emplace_back(ns[k], best[k]);
  return out;
}

}  // namespace

ContinuityReport continuity_check(const PointFunction& f, double epsilon, double delta) {
  const auto pts = all_points(f.metric().size());
  ContinuityReport r;
  r.witness = first_pair(pts, [&](std::size_t i, std::size_t j) {
    return f.metric().distance(i, j) < delta && f.target_distance(i, j) >= epsilon;
  });
  r.continuous = !r.witness;
  return r;
}

ContinuityReport continuity_check(const FiniteMetricSpace& space, const PartialFunction& f, double epsilon,
                                  double delta, TargetMetric metric) {
  ContinuityReport r;
  r.witness = first_pair(f.domain, [&](std::size_t i, std::size_t j) {
    return space.distance(f.domain[i], f.domain[j]) < delta &&
           target_distance(f.row(i), f.row(j), metric) >= epsilon;
  });
  r.continuous = !r.witness;
  return r;
}

ModulusTable modulus(const PointFunction& f, std::span<const double> deltas) {
  std::vector<double> ds(deltas.begin(), deltas.end());
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  if (ds.empty()) return ModulusTable();
  const auto& space = f.metric();
  // A pair at distance d counts for every sampled delta > d.
  auto best = bucket_max(
      space.size(), ds.size(),
      [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
        const auto it = std::upper_bound(ds.begin(), ds.end(), space.distance(i, j));
        if (it == ds.end()) return std::nullopt;
        return static_cast<std::size_t>(it - ds.begin());
      },
      [&](std::size_t i, std::size_t j) { return f.target_distance(i, j); });
  for (std::size_t k = 1; k < ds.size(); ++k) best[k] = std::max(best[k], best[k - 1]);
  std::vector<std::pair<double, double>> entries;
  for (std::size_t k = 0; k < ds.size(); ++k) entries.emplace_back(ds[k], best[k]);
  return ModulusTable(std::move(entries));
}

double VariationProfile::at(double N) const {
  for (const auto& [n, v] : entries) {
    if (n == N) return v;
  }
  throw Error(ErrorKind::InvalidArgument, "N = " + std::to_string(N) + " was not sampled");
}

VariationProfile variation_profile(const PointFunction& f, double R, std::span<const double> Ns) {
  const auto pts = all_points(f.metric().size());
  return profile_impl(f.metric(), pts, [&](std::size_t i) { return f(i); }, f.target(), R, Ns);
}

VariationProfile variation_profile(const FiniteMetricSpace& space, const PartialFunction& f, double R,
                                   std::span<const double> Ns, TargetMetric metric) {
  return profile_impl(space, f.domain, [&](std::size_t i) { return f.row(i); }, metric, R, Ns);
}

SquaresInstance squares_instance(long nmax) {
  if (nmax < 2) throw Error(ErrorKind::NmaxTooSmall, "nmax must be at least 2");
  SquaresInstance out;
  out.nmax = nmax;
  out.space = share(integer_interval(0, nmax * nmax).with_basepoint(PointIndex{0}));
  out.inclusion.dim = 1;
  for (long k = 0; k <= nmax; ++k) {
    out.squares.push_back(static_cast<PointIndex>(k * k));
    out.inclusion.values.push_back(static_cast<double>(k * k));
  }
  out.inclusion.domain = out.squares;
  return out;
}

PointFunction linear_extension(const SquaresInstance& instance) {
  std::vector<double> v(instance.space->size());
  for (PointIndex x = 0; x < v.size(); ++x) v[x] = static_cast<double>(x);
  return PointFunction::real(instance.space, std::move(v));
}

PointFunction nearest_square_extension(const SquaresInstance& instance) {
  std::vector<double> v(instance.space->size());
  long k = 0;
  for (PointIndex x = 0; x < v.size(); ++x) {
    const long xi = static_cast<long>(x);
    while ((k + 1) * (k + 1) <= xi) ++k;
    // x lies in [k^2, (k+1)^2); the midpoint k^2 + k + 1/2 is never an integer.
    v[x] = (xi <= k * k + k) ? static_cast<double>(k * k) : static_cast<double>((k + 1) * (k + 1));
  }
  return PointFunction::real(instance.space, std::move(v));
}

std::optional<std::pair<PointIndex, PointIndex>> oscillation_witness(const PointFunction& g, double epsilon,
                                                                     double R, double N) {
  const auto& space = g.metric();
  const PointIndex x0 = require_basepoint(space);
  const auto pts = all_points(space.size());
  return first_pair(pts, [&](std::size_t i, std::size_t j) {
    return space.distance(i, j) <= R && space.distance(x0, i) >= N && space.distance(x0, j) >= N &&
           g.target_distance(i, j) >= epsilon;
  });
}

BoundedExtender mcshane_bounded_extender() {
  return [](const FiniteMetricSpace& space, const PointSet& domain, const PointSet& data_points,
            const std::vector<double>& data_values, double, double) {
    std::vector<double> out(domain.size(), 0.0);
    if (data_points.empty()) return out;
    double L = 0.0;
    for (std::size_t i = 0; i < data_points.size(); ++i) {
      for (std::size_t j = i + 1; j < data_points.size(); ++j) {
        L = std::max(L, std::abs(data_values[i] - data_values[j]) / space.distance(data_points[i], data_points[j]));
      }
    }
    for (std::size_t k = 0; k < domain.size(); ++k) {
      double best = kInfinity;
      for (std::size_t a = 0; a < data_points.size(); ++a) {
        best = std::min(best, data_values[a] + L * space.distance(domain[k], data_points[a]));
      }
      out[k] = std::clamp(best, 0.0, 1.0);
    }
    return out;
  };
}

AnnulusExtension annulus_extend(const SpacePtr& space, const PartialFunction& f, const AnnulusParams& p,
                                const BoundedExtender& extender) {
  const auto& X = *space;
  const PointIndex x0 = require_basepoint(X);
  if (f.dim != 1) throw Error(ErrorKind::DimensionMismatch, "annulus extension takes real-valued data");
  if (f.values.size() != f.domain.size()) throw Error(ErrorKind::DimensionMismatch, "one value per point of A");
  for (double v : f.values) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::InvalidArgument, "values must lie in [0, 1]");
  }
  if (!(p.R > 0.0) || !(p.mu > 0.0) || !(p.epsilon > 0.0) || !(p.M > 0.0) || !(p.S > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "R, mu, S, epsilon and M must be positive");
  }
  if (!(p.R / 3.0 > p.S)) throw Error(ErrorKind::PreconditionViolated, "need R/3 > S");
  if (!(p.R > p.M)) throw Error(ErrorKind::PreconditionViolated, "need R > M");
  AnnulusExtension out{PointFunction::real(space, std::vector<double>(X.size(), 0.0)), 0.0, 0};
  out.delta = std::min(p.mu, p.lambda.value_or(p.mu));
  const auto pre = continuity_check(X, f, out.delta, 4.0 * p.R);
  if (!pre.continuous) {
    throw Error(ErrorKind::PreconditionViolated, "f is not (delta, 4R)-continuous on A",
                {pre.witness->first, pre.witness->second});
  }

  const std::size_t n = X.size();
  std::vector<double> rho(n);
  double far = 0.0;
  for (PointIndex x = 0; x < n; ++x) {
    rho[x] = X.distance(x0, x);
    far = std::max(far, rho[x]);
  }
  std::vector<double> data(n, 0.0);
  std::vector<bool> in_a(n, false);
  for (std::size_t a = 0; a < f.domain.size(); ++a) {
    in_a[f.domain[a]] = true;
    data[f.domain[a]] = f.values[a];
  }
  auto band = [&](double lo, double hi) {
    PointSet s;
    for (PointIndex x = 0; x < n; ++x) {
      if (rho[x] >= lo && rho[x] < hi) s.push_back(x);
    }
    return s;
  };
  auto run = [&](const PointSet& domain, const PointSet& pts, const std::vector<double>& vals, double eps,
                 double M) {
    std::vector<double> v = extender(X, domain, pts, vals, eps, M);
    if (v.size() != domain.size()) throw Error(ErrorKind::ExtenderFailed, "extender returned the wrong size");
    for (std::size_t k = 0, a = 0; k < domain.size() && a < pts.size(); ++k) {
      if (domain[k] != pts[a]) continue;
      if (std::abs(v[k] - vals[a]) > kTolerance) {
        throw Error(ErrorKind::ExtenderFailed, "extender changed the data", {domain[k]});
      }
      v[k] = vals[a++];
    }
    PartialFunction check{domain, 1, v};
    const auto c = continuity_check(X, check, eps, M);
    if (!c.continuous) {
      throw Error(ErrorKind::ExtenderFailed, "bounded extension is not continuous at the requested scale",
                  {c.witness->first, c.witness->second});
    }
    return v;
  };

  const std::size_t K = static_cast<std::size_t>(std::floor(far / (2.0 * p.R))) + 1;
  out.annuli = K;
  const double R = p.R;

  // Stage one: g_k on C_k, k = 0..K.
  std::vector<std::vector<double>> stage1(K + 1, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k <= K; ++k) {
    const double kk = static_cast<double>(k);
    const PointSet domain = band((2.0 * kk - 1.0) * R, (2.0 * kk + 2.0) * R);
    PointSet pts;
    std::vector<double> vals;
    for (PointIndex x : domain) {
      if (in_a[x]) {
        pts.push_back(x);
        vals.push_back(data[x]);
      }
    }
    if (domain.empty()) continue;
    const auto v = run(domain, pts, vals, p.mu, p.S);
    for (std::size_t i = 0; i < domain.size(); ++i) stage1[k][domain[i]] = v[i];
  }

  // Stage two: h_k on D_k, pasted in increasing k (overlaps agree).
  std::vector<double> result(n, 0.0);
  std::vector<bool> done(n, false);
  for (std::size_t k = 0; k < K; ++k) {
    const double kk = static_cast<double>(k);
    const PointSet domain = band(2.0 * kk * R, (2.0 * kk + 3.0) * R);
    if (domain.empty()) continue;
    PointSet pts;
    std::vector<double> vals;
    for (PointIndex x : domain) {
      if (rho[x] < (2.0 * kk + 1.0) * R) {
        pts.push_back(x);
        vals.push_back(stage1[k][x]);
      } else if (rho[x] >= (2.0 * kk + 2.0) * R) {
        pts.push_back(x);
        vals.push_back(stage1[k + 1][x]);
      } else if (in_a[x]) {
        pts.push_back(x);
        vals.push_back(data[x]);
      }
    }
    const auto v = run(domain, pts, vals, p.epsilon, p.M);
    for (std::size_t i = 0; i < domain.size(); ++i) {
      const PointIndex x = domain[i];
      if (done[x] && std::abs(result[x] - v[i]) > kTolerance) {
        throw Error(ErrorKind::PastingVerificationFailed, "consecutive pieces disagree on their overlap", {x});
      }
      result[x] = v[i];
      done[x] = true;
    }
  }
  for (PointIndex x = 0; x < n; ++x) {
    if (!done[x]) throw Error(ErrorKind::PastingVerificationFailed, "point left outside every piece", {x});
  }
  for (std::size_t a = 0; a < f.domain.size(); ++a) {
    if (std::abs(result[f.domain[a]] - f.values[a]) > kTolerance) {
      throw Error(ErrorKind::PastingVerificationFailed, "pasted map differs from f", {f.domain[a]});
    }
  }
  out.g = PointFunction::real(space, std::move(result));
  const auto final_check = continuity_check(out.g, p.epsilon, p.M);
  if (!final_check.continuous) {
    throw Error(ErrorKind::PastingVerificationFailed, "pasted map is not (epsilon, M)-continuous",
                {final_check.witness->first, final_check.witness->second});
  }
  return out;
}

}  // namespace coarse
