#include <algorithm>
#include <cmath>

#include "coarse/extension.hpp"
#include "coarse/nerve.hpp"

namespace coarse {

namespace {

double beta(double z) {
  if (z <= 1.0 / 3.0) return 0.0;
  if (z >= 2.0 / 3.0) return 1.0;
  return 3.0 * z - 1.0;
}

std::vector<std::size_t> pair_witness(const LipschitzReport& r) {
  if (!r.worst_pair) return {};
  return {r.worst_pair->first, r.worst_pair->second};
}

}  // namespace

SphereExtension sphere_extend(const SpacePtr& space, const PartialFunction& f, double delta,
                              const RefinerOracle& refiner) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorKind::InvalidArgument, "delta must be positive");
  if (f.domain.empty()) throw Error(ErrorKind::EmptyA, "the subset A is empty");
  if (f.dim < 2) throw Error(ErrorKind::InvalidArgument, "sphere values need at least two coordinates");
  const std::size_t k = f.dim;
  const std::size_t m = k - 2;
  const double C = simplex_extension_constant(k);
  const auto& X = *space;
  const std::size_t n = X.size();

  if (X.min_separation() < 1.0 - kTolerance) {
    throw Error(ErrorKind::NotOneDiscrete, "the space must be 1-discrete (use its macro version at scale 1)");
  }
  for (std::size_t a = 0; a < f.domain.size(); ++a) {
    if (f.domain[a] >= n) throw Error(ErrorKind::UnknownPoint, "point of A out of range", {f.domain[a]});
    if (!is_simplex_point(f.row(a)) || !on_simplex_boundary(f.row(a))) {
      throw Error(ErrorKind::NotInSimplex, "value at '" + X.id(f.domain[a]) + "' is not on the simplex boundary",
                  {f.domain[a]});
    }
  }
  const auto input_lip = check_lipschitz(X, f, delta, delta);
  if (!input_lip.satisfied) {
    throw Error(ErrorKind::NotLipschitzOnA, "f is not (delta, delta)-Lipschitz on A", pair_witness(input_lip));
  }

  CertBundle cert;
  cert.m = m;
  cert.delta = delta;
  cert.C = C;
  cert.identity_extension = f.domain.size() == n;

  // On a 1-discrete space a (delta, delta)-Lipschitz map is 2 delta-Lipschitz.
  const PointFunction g = simplex_extend(space, f, 2.0 * delta);
  cert.lipschitz_g = lipschitz_constant(g);
  cert.lipschitz_g_bound = 2.0 * delta * C;

  std::vector<double> low(n), alpha(n);
  for (PointIndex x = 0; x < n; ++x) {
    const auto row = g(x);
    low[x] = *std::min_element(row.begin(), row.end());
    alpha[x] = static_cast<double>(k) * low[x];
  }

  // g_i > alpha/(m+2) is tested as g_i > min_j g_j, the same set without the
  // rounding of a multiply-then-divide.
  std::vector<PointSet> u_members(k);
  for (PointIndex x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < k; ++i) {
      if (g.at(x, i) > low[x] || alpha[x] > 2.0 / 3.0) u_members[i].push_back(x);
    }
    if (alpha[x] > 0.75) {
      ++cert.case1_points;
    } else {
      ++cert.case2_points;
    }
  }
  const Cover u(space, std::move(u_members));
  const auto leb_u = lebesgue_number(u);
  cert.lebesgue_u = leb_u.value;
  cert.lebesgue_u_required = sphere_lebesgue_bound(m, delta);
  if (leb_u.value < cert.lebesgue_u_required - kTolerance) {
    throw Error(ErrorKind::LebesgueAssertionFailed,
                "Leb(U) = " + std::to_string(leb_u.value) + " is below " + std::to_string(cert.lebesgue_u_required),
                {*leb_u.critical_point});
  }

  std::optional<Cover> refined;
  try {
    refined = refiner.refine(u);
  } catch (const Error& e) {
    throw Error(ErrorKind::RefinerFailed, "refiner '" + refiner.name + "' raised: " + e.what());
  }
  if (!refined) throw Error(ErrorKind::RefinerFailed, "refiner '" + refiner.name + "' found no refinement");
  const auto check = check_refiner_output(u, *refined, refiner);
  if (!check.ok) throw Error(ErrorKind::RefinerFailed, "refiner '" + refiner.name + "': " + check.reason);
  cert.refiner = refiner.name;
  cert.refiner_s = refiner.s;

  Cover v = shrink_to_indexed(*refined, u);
  cert.lebesgue_v = lebesgue_number(v).value;
  cert.multiplicity_v = multiplicity(v);
  const auto phi = barycentric_map(v);
  cert.lipschitz_phi = lipschitz_constant(phi);

  std::vector<double> h(n * k);
  for (PointIndex x = 0; x < n; ++x) {
    const double b = beta(alpha[x]);
    const double splice = (b == 1.0) ? 0.0 : (1.0 - b) / (1.0 - alpha[x]);
    for (std::size_t i = 0; i < k; ++i) {
      h[x * k + i] = (g.at(x, i) - low[x]) * splice + b * phi.at(x, i);
    }
  }

  // Agreement on A, then exact reinstatement of f there.
  for (std::size_t a = 0; a < f.domain.size(); ++a) {
    const PointIndex x = f.domain[a];
    const auto row = f.row(a);
    for (std::size_t i = 0; i < k; ++i) {
      if (std::abs(h[x * k + i] - row[i]) > kTolerance) {
        throw Error(ErrorKind::VerificationFailed, "h differs from f at '" + X.id(x) + "'", {x});
      }
      h[x * k + i] = row[i];
    }
  }
  cert.agreement = true;

  for (PointIndex x = 0; x < n; ++x) {
    const std::span<const double> row(&h[x * k], k);
    if (!is_simplex_point(row) || !on_simplex_boundary(row)) {
      throw Error(ErrorKind::BoundaryViolation, "h('" + X.id(x) + "') is not on the simplex boundary", {x});
    }
  }
  cert.boundary = true;

  PointFunction result = PointFunction::simplex(space, k, std::move(h));
  cert.lipschitz_h_bound = sphere_lipschitz_bound(m, delta);
  const auto lip_h = check_lipschitz(result, cert.lipschitz_h_bound, 0.0);
  cert.lipschitz_h = lip_h.worst_ratio;
  if (!lip_h.satisfied) {
    throw Error(ErrorKind::LipschitzBoundViolation,
                "Lip(h) = " + std::to_string(lip_h.worst_ratio) + " exceeds " +
                    std::to_string(cert.lipschitz_h_bound),
                pair_witness(lip_h));
  }
  cert.lipschitz = true;
  return SphereExtension{std::move(result), g, u, std::move(v), cert};
}

SphereExtender sphere_extender(RefinerOracle refiner, double delta) {
  SphereExtender ext;
  ext.name = "sphere:" + refiner.name;
  ext.delta = delta;
  ext.extend = [refiner = std::move(refiner), delta](const SpacePtr& space, const PartialFunction& f) {
    return sphere_extend(space, f, delta, refiner).h;
  };
  return ext;
}

ExtensionRefinement refine_via_extension(const Cover& cover, const SphereExtender& extender, double epsilon) {
  if (cover.size() < 2) throw Error(ErrorKind::InvalidArgument, "need a cover with at least two members");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  if (!(extender.delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "extender delta must be positive");
  const std::size_t k = cover.size();
  const std::size_t m = k - 2;
  const auto& X = cover.metric();

  const auto leb = lebesgue_number(cover);
  const double required = 4.0 * static_cast<double>(k * k) / extender.delta;
  if (leb.value < required - kTolerance) {
    throw Error(ErrorKind::LebesgueTooSmall,
                "Leb = " + std::to_string(leb.value) + " is below 4(m+2)^2/delta = " + std::to_string(required),
                {*leb.critical_point});
  }

  ExtensionRefinement out{cover, {}, 1.0 / (2.0 * epsilon * static_cast<double>(m + 1)), {}, 0};
  const auto phi = barycentric_map(cover);
  for (PointIndex x = 0; x < X.size(); ++x) {
    if (on_simplex_boundary(phi(x))) out.boundary_points.push_back(x);
  }
  const auto data = PartialFunction::restrict(phi, out.boundary_points);

  std::optional<PointFunction> g;
  try {
    g = extender.extend(cover.space(), data);
  } catch (const Error& e) {
    throw Error(ErrorKind::ExtenderFailed, "extender '" + extender.name + "' raised: " + e.what());
  }
  if (g->dim() != k || g->metric().size() != X.size()) {
    throw Error(ErrorKind::ExtenderFailed, "extender returned a map of the wrong shape");
  }

  std::vector<PointSet> v(k);
  for (PointIndex x = 0; x < X.size(); ++x) {
    for (std::size_t i = 0; i < k; ++i) {
      if (g->at(x, i) > kTolerance) v[i].push_back(x);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (PointIndex x : v[i]) {
      if (!cover.contains(i, x)) {
        throw Error(ErrorKind::VerificationFailed,
                    "V_" + std::to_string(i) + " leaves U_" + std::to_string(i) + " at '" + X.id(x) + "'", {x});
      }
    }
  }
  try {
    out.refinement = Cover(cover.space(), std::move(v));
  } catch (const Error& e) {
    throw Error(ErrorKind::VerificationFailed, std::string("sets {g_i > 0} do not cover: ") + e.what(), e.witness());
  }
  out.multiplicity = multiplicity(out.refinement);
  if (out.multiplicity > m + 1) {
    throw Error(ErrorKind::VerificationFailed, "refinement has dimension above m");
  }
  out.lebesgue = lebesgue_number(out.refinement);
  if (out.lebesgue.value < out.s - kTolerance) {
    throw Error(ErrorKind::VerificationFailed,
                "Lebesgue number " + std::to_string(out.lebesgue.value) + " below s = " + std::to_string(out.s),
                {*out.lebesgue.critical_point});
  }
  return out;
}

}  // namespace coarse
