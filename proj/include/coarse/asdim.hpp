#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse/cover.hpp"
#include "coarse/refiner.hpp"

namespace coarse {

struct OstrandReport {
  double r = 0.0;
  std::size_t families_checked = 0;
  std::vector<DisjointnessReport> disjointness;
  LebesgueReport lebesgue;
  double mesh = 0.0;
  bool verdict = false;
};

/// Every family r-disjoint, Lebesgue number >= r, finite mesh. Throws
/// FamilyCountMismatch unless the cover has n + 1 families.
OstrandReport verify_ostrand(const ColoredCover& colored, double r, std::size_t n);

/// One member per family: the union of that family.
Cover colored_to_plain(const ColoredCover& colored);

struct DimensionReduction {
  Cover cover;
  Cover plain;
  Cover refined;
  LebesgueReport lebesgue;
  std::size_t multiplicity = 0;
  double mesh = 0.0;
  double input_mesh = 0.0;
};

/// For a cover with n + 2 families that is an Ostrand witness at scale t =
/// refiner.t, refines the plain (n+2)-member cover with the oracle and cuts
/// every refined member V by the members of the family whose union contains
/// it. The result is checked to have dimension <= n, Lebesgue number
/// >= min(s, t/2) and mesh <= the input mesh.
/// Throws PreconditionViolated (s > t/2), OstrandFailed, RefinerFailed,
/// VerificationFailed.
DimensionReduction reduce_dimension(const ColoredCover& colored, const RefinerOracle& refiner);

/// Turns a refiner for (n+2)-member covers at (q, t) into one for
/// (n+3)-member covers at (q, 4t). Runtime-checks the intermediate Lebesgue
/// claims; the inner refiner's output is verified on every call.
/// The returned capability throws PreconditionViolated (input Lebesgue number
/// below 4t or wrong member count), InputRefinerFailed, VerificationFailed.
RefinerOracle promote_refiner(RefinerOracle inner);

struct SearchOptions {
  std::uint64_t budget = 200000;
  std::uint64_t seed = 1;
};

/// Searches for an indexed refinement V (V_i inside U_i) with Lebesgue number
/// >= target_leb and multiplicity <= target_mult. Each point x gets a label
/// h(x) among the members containing B(x, target_leb), and V_i is the union of
/// the balls B(x, target_leb) with h(x) = i; every indexed refinement meeting
/// the targets arises this way. Labels start at the member farthest from x's
/// complement, then greedy assignment by descending multiplicity and
/// min-conflicts repair; spaces with at most 24 points fall back to
/// exhaustive backtracking. Returns the cover unchanged if it already meets
/// the targets, and none when the budget runs out or some point admits no
/// label. Outputs are verified before return.
std::optional<Cover> search_refinement(const Cover& cover, double target_leb, std::size_t target_mult,
                                       const SearchOptions& options = {});

/// Returns the input cover; valid only when inputs already meet the targets.
RefinerOracle identity_refiner(std::size_t members, std::size_t max_multiplicity, double s, double t);

RefinerOracle search_refiner(std::size_t members, std::size_t max_multiplicity, double s, double t,
                             SearchOptions options = {});

/// Brick covers of integer lattices (Z or Z^2) with L = ceil(s) as a fixed
/// refinement: any cover whose Lebesgue number exceeds the brick mesh is
/// refined by them. t is that mesh bound (5L in Z, 10L in Z^2).
RefinerOracle brick_refiner(std::size_t members, std::size_t lattice_dim, double s);

/// Refiner by name: "identity", "search", "brick", "promoted:<name>". For
/// promoted refiners `members`, `max_multiplicity` and `t` describe the outer
/// capability; the inner one gets one member fewer, multiplicity one lower
/// and t / 4.
RefinerOracle make_refiner(const std::string& name, std::size_t members, std::size_t max_multiplicity, double s,
                           double t, std::size_t lattice_dim = 1, SearchOptions options = {});

}  // namespace coarse
