#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coarse/cover.hpp"
#include "coarse/point_function.hpp"
#include "coarse/refiner.hpp"

namespace coarse {

using Interval = std::pair<double, double>;

/// g(x) = min over a in A of values(a) + lambda * d(x, a), then clamped.
/// g equals `values` on A exactly. Throws EmptyA, NotLipschitzOnA (witness:
/// the offending pair) and DimensionMismatch.
PointFunction mcshane_extend(const SpacePtr& space, const PointSet& A, const std::vector<double>& values,
                             double lambda, std::optional<Interval> clamp = std::nullopt);

/// Euclidean projection onto the standard simplex (sort and threshold).
std::vector<double> project_to_simplex(std::span<const double> v);

/// Lipschitz constant factor of simplex_extend for simplices with `vertices`
/// vertices: coordinatewise McShane followed by the Euclidean projection.
inline double simplex_extension_constant(std::size_t vertices) { return static_cast<double>(vertices); }

/// Extends a lambda-Lipschitz (l1) simplex-valued partial function. The
/// result agrees with f on its domain and is C * lambda-Lipschitz with
/// C = number of vertices, which is verified before return.
PointFunction simplex_extend(const SpacePtr& space, const PartialFunction& f, double lambda);

/// (m+2)^3 (82C + 4) delta with C = m + 2.
double sphere_lipschitz_bound(std::size_t m, double delta);
/// 1 / (24 delta C (m+2)) with C = m + 2.
double sphere_lebesgue_bound(std::size_t m, double delta);
/// delta_1 = epsilon / ((m+2)^3 (82C + 4)): the largest delta whose bound is epsilon.
double sphere_delta_for(std::size_t m, double epsilon);

/// Per-stage record of a sphere extension run.
struct CertBundle {
  std::size_t m = 0;
  double delta = 0.0;
  double C = 0.0;
  bool identity_extension = false;
  double lipschitz_g = 0.0;
  double lipschitz_g_bound = 0.0;
  double lebesgue_u = 0.0;
  double lebesgue_u_required = 0.0;
  std::size_t case1_points = 0;  // alpha > 3/4
  std::size_t case2_points = 0;
  std::string refiner;
  double refiner_s = 0.0;
  double lebesgue_v = 0.0;
  std::size_t multiplicity_v = 0;
  double lipschitz_phi = 0.0;
  double lipschitz_h = 0.0;
  double lipschitz_h_bound = 0.0;
  bool agreement = false;
  bool boundary = false;
  bool lipschitz = false;
};

struct SphereExtension {
  PointFunction h;
  PointFunction g;
  Cover u;
  Cover v;
  CertBundle cert;
};

/// Extends f : A -> boundary of the (m+1)-simplex (rows of length m+2) to
/// h : X -> boundary, following the radial splicing construction:
/// g = simplex_extend(f, 2 delta), alpha = (m+2) min_i g_i, the cover
/// U_i = {g_i > alpha/(m+2) or alpha > 2/3}, V = refiner(U) shrunk to U's
/// indexing, phi = barycentric map of V, and
/// h = (g - alpha/(m+2)) (1 - beta(alpha)) / (1 - alpha) + beta(alpha) phi.
/// Every claimed bound is asserted at runtime.
///
/// Throws NotOneDiscrete, EmptyA, NotInSimplex (value off the boundary),
/// NotLipschitzOnA, LebesgueAssertionFailed, RefinerFailed,
/// VerificationFailed, BoundaryViolation, LipschitzBoundViolation.
SphereExtension sphere_extend(const SpacePtr& space, const PartialFunction& f, double delta,
                              const RefinerOracle& refiner);

/// A capability extending (delta, delta)-Lipschitz boundary-valued partial
/// functions to the whole space.
struct SphereExtender {
  std::string name;
  double delta = 0.0;
  std::function<PointFunction(const SpacePtr&, const PartialFunction&)> extend;
};

SphereExtender sphere_extender(RefinerOracle refiner, double delta);

struct ExtensionRefinement {
  Cover refinement;
  PointSet boundary_points;
  double s = 0.0;
  LebesgueReport lebesgue;
  std::size_t multiplicity = 0;
};

/// Refines an (m+2)-member cover through a sphere extension of its
/// barycentric map: A = points mapped to the boundary, g = extender(phi|A),
/// V_i = {g_i > 0}. Needs Leb(cover) >= 4(m+2)^2 / delta for the extender's
/// delta; the result is checked to refine the cover index by index, to have
/// dimension <= m and Lebesgue number >= s = 1 / (2 epsilon (m+1)).
/// Throws LebesgueTooSmall, ExtenderFailed, VerificationFailed.
ExtensionRefinement refine_via_extension(const Cover& cover, const SphereExtender& extender, double epsilon);

/// Nondecreasing step table delta -> alpha(delta). Evaluation at t uses the
/// smallest tabulated key >= t, which bounds alpha(t) from above.
class ModulusTable {
 public:
  ModulusTable() = default;
  explicit ModulusTable(std::vector<std::pair<double, double>> entries);

  /// Throws InvalidArgument when t exceeds every key.
  double operator()(double t) const;
  const std::vector<std::pair<double, double>>& entries() const noexcept { return entries_; }

 private:
  std::vector<std::pair<double, double>> entries_;
};

/// delta* = epsilon / (alpha((M - epsilon) / epsilon) + 1). Throws
/// EpsilonNotBelowM unless 0 < epsilon < M.
double lemma47_threshold(double M, double epsilon, const ModulusTable& alpha);

/// mu / (S + 1): a (delta, delta)-Lipschitz map with delta below this value is
/// (mu, S)-continuous.
double continuity_delta(double mu, double S);

}  // namespace coarse
