#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coarse/extension.hpp"
#include "coarse/point_function.hpp"

namespace coarse {

struct ContinuityReport {
  bool continuous = true;
  /// First pair (in index order) with d < delta and image distance >= epsilon.
  std::optional<std::pair<PointIndex, PointIndex>> witness;
};

/// (epsilon, delta)-continuity with both inequalities strict.
ContinuityReport continuity_check(const PointFunction& f, double epsilon, double delta);
ContinuityReport continuity_check(const FiniteMetricSpace& space, const PartialFunction& f, double epsilon,
                                  double delta, TargetMetric metric = TargetMetric::L1);

/// alpha(delta) = largest image distance over pairs with d < delta, for each
/// sampled delta (0 when no pair qualifies).
ModulusTable modulus(const PointFunction& f, std::span<const double> deltas);

struct VariationProfile {
  double R = 0.0;
  /// (N, sup of image distance over pairs with d <= R whose points both lie
  /// at distance >= N from the basepoint), ascending in N.
  std::vector<std::pair<double, double>> entries;

  double at(double N) const;
};

/// Throws NoBasepoint.
VariationProfile variation_profile(const PointFunction& f, double R, std::span<const double> Ns);
/// Profile of a function given only on a subset.
VariationProfile variation_profile(const FiniteMetricSpace& space, const PartialFunction& f, double R,
                                   std::span<const double> Ns, TargetMetric metric = TargetMetric::L1);

/// [0, nmax^2] in Z with basepoint 0, the squares A = {k^2}, and the
/// inclusion of A into the reals.
struct SquaresInstance {
  SpacePtr space;
  PointSet squares;
  PartialFunction inclusion;
  long nmax = 0;
};

/// Throws NmaxTooSmall when nmax < 2.
SquaresInstance squares_instance(long nmax);

/// Piecewise-linear interpolation of the inclusion (on integers, g(x) = x).
PointFunction linear_extension(const SquaresInstance& instance);
/// Value of the nearest square.
PointFunction nearest_square_extension(const SquaresInstance& instance);

/// First pair (x < y in index order) with d(x, y) <= R, both points at
/// distance >= N from the basepoint and image distance >= epsilon.
/// Throws NoBasepoint.
std::optional<std::pair<PointIndex, PointIndex>> oscillation_witness(const PointFunction& g, double epsilon,
                                                                     double R, double N);

/// Extends data given at `data_points` over the point set `domain` (which
/// contains the data points). Values come back in the order of `domain`.
/// The last two arguments are the continuity target (epsilon, M) the caller
/// will verify.
using BoundedExtender = std::function<std::vector<double>(
    const FiniteMetricSpace& space, const PointSet& domain, const PointSet& data_points,
    const std::vector<double>& data_values, double epsilon, double M)>;

/// McShane extension with the largest Lipschitz ratio of the data as
/// constant, clamped to [0, 1]. Empty data extends by 0.
BoundedExtender mcshane_bounded_extender();

struct AnnulusParams {
  double R = 0.0;
  double mu = 0.0;
  double S = 0.0;
  double epsilon = 0.0;
  double M = 0.0;
  /// Continuity threshold of the first-stage extension; defaults to mu.
  std::optional<double> lambda;
};

struct AnnulusExtension {
  PointFunction g;
  double delta = 0.0;
  std::size_t annuli = 0;
};

/// Extends f : A -> [0, 1] to the whole space. With d0 the distance to the
/// basepoint, C_k = {(2k-1)R <= d0 < (2k+2)R} and D_k = {2kR <= d0 < (2k+3)R}.
/// Stage one extends f over each C_k to a (mu, S)-continuous g_k; stage two
/// extends g_k on the inner third of D_k, g_{k+1} on its outer third and f
/// on A over D_k to an (epsilon, M)-continuous h_k. Consecutive h_k agree on
/// their overlap, so they paste to the result.
///
/// Requires R/3 > S, R > M and f (delta, 4R)-continuous on A with
/// delta = min(mu, lambda). Throws NoBasepoint, PreconditionViolated,
/// ExtenderFailed, PastingVerificationFailed.
AnnulusExtension annulus_extend(const SpacePtr& space, const PartialFunction& f, const AnnulusParams& params,
                                const BoundedExtender& extender);

}  // namespace coarse
