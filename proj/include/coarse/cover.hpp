#pragma once

#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coarse/metric_space.hpp"

namespace coarse {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Indexed family of point subsets whose union is the whole space. Members
/// are stored sorted and deduplicated; empty members are allowed.
class Cover {
 public:
  /// Throws NotACover (witness: an uncovered point) or UnknownPoint.
  Cover(SpacePtr space, std::vector<PointSet> members);

  const SpacePtr& space() const noexcept { return space_; }
  const FiniteMetricSpace& metric() const noexcept { return *space_; }
  std::size_t size() const noexcept { return members_.size(); }
  const PointSet& member(std::size_t i) const { return members_.at(i); }
  const std::vector<PointSet>& members() const noexcept { return members_; }

  /// Indices of the members containing x, ascending.
  std::span<const std::size_t> containing(PointIndex x) const noexcept {
    return std::span<const std::size_t>(owners_).subspan(offsets_[x], offsets_[x + 1] - offsets_[x]);
  }
  bool contains(std::size_t member, PointIndex x) const noexcept;
  PointSet complement(std::size_t member) const;
  bool is_whole_space(std::size_t member) const noexcept { return members_[member].size() == space_->size(); }

  bool operator==(const Cover& other) const;

 private:
  SpacePtr space_;
  std::vector<PointSet> members_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> owners_;
};

struct LebesgueReport {
  double value = kInfinity;
  /// A point realizing the minimum; absent when the value is infinite.
  std::optional<PointIndex> critical_point;
  bool infinite() const noexcept { return value == kInfinity; }
};

/// dist(x, X \ U_i) for every x (0 outside U_i, +inf if U_i = X).
std::vector<double> complement_distances(const Cover& cover, std::size_t member);

/// min over x of max over members of dist(x, complement). The first point in
/// index order attaining the minimum is the critical point.
LebesgueReport lebesgue_number(const Cover& cover);

std::size_t multiplicity(const Cover& cover);
/// multiplicity - 1.
inline long cover_dimension(const Cover& cover) { return static_cast<long>(multiplicity(cover)) - 1; }

double member_diameter(const FiniteMetricSpace& space, const PointSet& member);
double mesh(const Cover& cover);

struct RefinementReport {
  bool refines = true;
  /// For each fine member, the lowest coarse member containing it (absent for
  /// empty fine members and for members that fit nowhere).
  std::vector<std::optional<std::size_t>> witness;
  /// First fine member not contained in any coarse member.
  std::optional<std::size_t> failing_member;
};

/// Throws SpaceMismatch.
RefinementReport is_refinement(const Cover& fine, const Cover& coarse);

struct DisjointnessReport {
  bool disjoint = true;
  std::optional<std::pair<std::size_t, std::size_t>> members;
  std::optional<std::pair<PointIndex, PointIndex>> points;
};

/// True iff distinct nonempty members lie at distance > r (strict; a gap
/// within 1e-9 of r counts as equal).
DisjointnessReport is_r_disjoint(const FiniteMetricSpace& space, std::span<const PointSet> family, double r);

/// Member i of the result is the union of the refinement members whose lowest
/// containing original member is i. Throws NotARefinement.
Cover shrink_to_indexed(const Cover& refinement, const Cover& original);

/// Drops empty members (statistics are unchanged).
Cover without_empty_members(const Cover& cover);

/// A cover split into families of members. Members are stored once in a flat
/// cover; each family lists member indices. Families are meant to be
/// r-disjoint at the nominal scale r, which verify_ostrand checks.
class ColoredCover {
 public:
  ColoredCover(Cover flat, std::vector<std::vector<std::size_t>> families, double r);
  ColoredCover(SpacePtr space, const std::vector<std::vector<PointSet>>& families, double r);

  const Cover& flat() const noexcept { return flat_; }
  const SpacePtr& space() const noexcept { return flat_.space(); }
  std::size_t family_count() const noexcept { return families_.size(); }
  const std::vector<std::size_t>& family(std::size_t i) const { return families_.at(i); }
  const std::vector<std::vector<std::size_t>>& families() const noexcept { return families_; }
  std::vector<PointSet> family_members(std::size_t i) const;
  double r() const noexcept { return r_; }
  /// Family index of each flat member.
  std::size_t family_of(std::size_t member) const { return family_of_.at(member); }

 private:
  ColoredCover(std::pair<Cover, std::vector<std::vector<std::size_t>>> parts, double r)
      : ColoredCover(std::move(parts.first), std::move(parts.second), r) {}

  Cover flat_;
  std::vector<std::vector<std::size_t>> families_;
  std::vector<std::size_t> family_of_;
  double r_;
};

/// Interval bricks on a window of Z, two families. Bricks are
/// [6kL, 6kL + 5L) and [6kL + 3L, 6kL + 8L) cut to the window: each family is
/// L-disjoint, Lebesgue number >= L, mesh < 5L, multiplicity <= 2. The
/// contract is re-verified before return (ConstructionInvalid on failure).
/// Throws WindowTooSmall when last - first < 8L.
ColoredCover brick_cover_Z(long first, long last, long L);
/// Same on an existing one-dimensional integer coordinate space.
ColoredCover brick_cover_Z(const SpacePtr& space, long L);

/// Offset brick wall on a square window of Z^2 (sup metric), three families.
/// Base bricks are 8L wide and 4L tall, alternate rows shifted by 4L, each
/// enlarged by L on every side: each family is L-disjoint, Lebesgue number
/// >= L, mesh <= 20L, multiplicity <= 3, all re-verified before return.
/// Throws WindowTooSmall when the side is below 16L.
ColoredCover brick_cover_Z2(long first, long last, long L);
ColoredCover brick_cover_Z2(const SpacePtr& space, long L);

}  // namespace coarse
