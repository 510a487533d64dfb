#include "coarse/extension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "coarse/parallel.hpp"

namespace coarse {

namespace {

void check_domain(const FiniteMetricSpace& space, const PointSet& A) {
  if (A.empty()) throw Error(ErrorKind::EmptyA, "the subset A is empty");
  std::vector<bool> seen(space.size(), false);
  for (PointIndex a : A) {
    if (a >= space.size()) throw Error(ErrorKind::UnknownPoint, "point of A out of range", {a});
    if (seen[a]) throw Error(ErrorKind::InvalidArgument, "point listed twice in A", {a});
    seen[a] = true;
  }
}

std::vector<double> infimal_convolution(const FiniteMetricSpace& space, const PointSet& A,
                                        const std::vector<double>& values, double lambda) {
  std::vector<double> g(space.size());
  const std::size_t chunks = chunks_for(space.size(), 256);
  parallel_chunks(space.size(), chunks, [&](std::size_t, std::size_t b, std::size_t e) {
    for (PointIndex x = b; x < e; ++x) {
      double best = kInfinity;
      for (std::size_t k = 0; k < A.size(); ++k) best = std::min(best, values[k] + lambda * space.distance(x, A[k]));
      g[x] = best;
    }
  });
  return g;
}

}  // namespace

PointFunction mcshane_extend(const SpacePtr& space, const PointSet& A, const std::vector<double>& values,
                             double lambda, std::optional<Interval> clamp) {
  check_domain(*space, A);
  if (values.size() != A.size()) throw Error(ErrorKind::DimensionMismatch, "one value per point of A expected");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error(ErrorKind::InvalidArgument, "lambda must be >= 0");
  if (clamp && !(clamp->first <= clamp->second)) throw Error(ErrorKind::InvalidArgument, "empty clamp interval");
  PartialFunction f{A, 1, values};
  const auto lip = check_lipschitz(*space, f, lambda, 0.0);
  if (!lip.satisfied) {
    throw Error(ErrorKind::NotLipschitzOnA,
                "values are not " + std::to_string(lambda) + "-Lipschitz on A (ratio " +
                    std::to_string(lip.worst_ratio) + ")",
                {lip.worst_pair->first, lip.worst_pair->second});
  }
  auto g = infimal_convolution(*space, A, values, lambda);
  for (std::size_t k = 0; k < A.size(); ++k) g[A[k]] = values[k];
  if (clamp) {
    for (double& v : g) v = std::clamp(v, clamp->first, clamp->second);
  }
  return PointFunction::real(space, std::move(g));
}

std::vector<double> project_to_simplex(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorKind::InvalidArgument, "cannot project an empty vector");
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

PointFunction simplex_extend(const SpacePtr& space, const PartialFunction& f, double lambda) {
  check_domain(*space, f.domain);
  if (f.values.size() != f.domain.size() * f.dim) {
    throw Error(ErrorKind::DimensionMismatch, "partial function rows do not match its domain");
  }
  for (std::size_t k = 0; k < f.domain.size(); ++k) {
    if (!is_simplex_point(f.row(k))) {
      throw Error(ErrorKind::NotInSimplex, "value at '" + space->id(f.domain[k]) + "' is not barycentric",
                  {f.domain[k]});
    }
  }
  const auto lip = check_lipschitz(*space, f, lambda, 0.0, TargetMetric::L1);
  if (!lip.satisfied) {
    throw Error(ErrorKind::NotLipschitzOnA, "f is not " + std::to_string(lambda) + "-Lipschitz on A",
                {lip.worst_pair->first, lip.worst_pair->second});
  }
  const std::size_t n = space->size();
  const std::size_t k = f.dim;
  std::vector<double> raw(n * k);
  std::vector<double> column(f.domain.size());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t a = 0; a < f.domain.size(); ++a) column[a] = f.values[a * k + i];
    const auto g = infimal_convolution(*space, f.domain, column, lambda);
    for (PointIndex x = 0; x < n; ++x) raw[x * k + i] = g[x];
  }
  std::vector<double> values(n * k);
  for (PointIndex x = 0; x < n; ++x) {
    const auto p = project_to_simplex(std::span<const double>(raw).subspan(x * k, k));
    std::copy(p.begin(), p.end(), values.begin() + static_cast<std::ptrdiff_t>(x * k));
  }
  for (std::size_t a = 0; a < f.domain.size(); ++a) {
    const auto row = f.row(a);
    std::copy(row.begin(), row.end(), values.begin() + static_cast<std::ptrdiff_t>(f.domain[a] * k));
  }
  auto out = PointFunction::simplex(space, k, std::move(values));
  const double bound = simplex_extension_constant(k) * lambda;
  const auto check = check_lipschitz(out, bound, 0.0);
  if (!check.satisfied) {
    throw Error(ErrorKind::VerificationFailed,
                "extension exceeds its Lipschitz bound " + std::to_string(bound) + " (measured " +
                    std::to_string(check.worst_ratio) + ")",
                {check.worst_pair->first, check.worst_pair->second});
  }
  return out;
}

double sphere_lipschitz_bound(std::size_t m, double delta) {
  const double k = static_cast<double>(m + 2);
  const double C = simplex_extension_constant(m + 2);
  return k * k * k * (82.0 * C + 4.0) * delta;
}

double sphere_lebesgue_bound(std::size_t m, double delta) {
  const double k = static_cast<double>(m + 2);
  const double C = simplex_extension_constant(m + 2);
  return 1.0 / (24.0 * delta * C * k);
}

double sphere_delta_for(std::size_t m, double epsilon) { return epsilon / sphere_lipschitz_bound(m, 1.0); }

RefinerCheck check_refiner_output(const Cover& input, const Cover& output, const RefinerOracle& refiner) {
  RefinerCheck check;
  if (!same_space(input.space(), output.space())) {
    check.reason = "output lives on a different space";
    return check;
  }
  const auto rep = is_refinement(output, input);
  if (!rep.refines) {
    check.reason = "member " + std::to_string(*rep.failing_member) + " is not inside any input member";
    return check;
  }
  check.multiplicity = multiplicity(output);
  if (check.multiplicity > refiner.max_multiplicity) {
    check.reason = "multiplicity " + std::to_string(check.multiplicity) + " exceeds " +
                   std::to_string(refiner.max_multiplicity);
    return check;
  }
  check.lebesgue = lebesgue_number(output);
  if (check.lebesgue.value < refiner.s - kTolerance) {
    check.reason = "Lebesgue number " + std::to_string(check.lebesgue.value) + " below s = " +
                   std::to_string(refiner.s);
    return check;
  }
  check.ok = true;
  return check;
}

ModulusTable::ModulusTable(std::vector<std::pair<double, double>> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].second < entries_[i - 1].second) {
      throw Error(ErrorKind::InvalidArgument, "modulus table must be nondecreasing");
    }
  }
}

double ModulusTable::operator()(double t) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                                   [](const auto& e, double v) { return e.first < v; });
  if (it == entries_.end()) {
    throw Error(ErrorKind::InvalidArgument, "modulus not tabulated at " + std::to_string(t));
  }
  return it->second;
}

double lemma47_threshold(double M, double epsilon, const ModulusTable& alpha) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  if (!(epsilon < M)) throw Error(ErrorKind::EpsilonNotBelowM, "epsilon must be below M");
  return epsilon / (alpha((M - epsilon) / epsilon) + 1.0);
}

double continuity_delta(double mu, double S) {
  if (!(mu > 0.0) || !(S >= 0.0)) throw Error(ErrorKind::InvalidArgument, "need mu > 0 and S >= 0");
  return mu / (S + 1.0);
}

}  // namespace coarse
