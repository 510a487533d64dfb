#pragma once

#include <vector>

#include "coarse/cover.hpp"
#include "coarse/point_function.hpp"

namespace coarse {

/// Simplices are ascending member-index lists, ordered by size then
/// lexicographically. Every nonempty face of a simplex is listed.
struct NerveComplex {
  std::size_t member_count = 0;
  std::vector<std::size_t> vertices;
  std::vector<std::vector<std::size_t>> simplices;

  long dimension() const;
  bool contains(const std::vector<std::size_t>& simplex) const;
};

NerveComplex nerve_of(const Cover& cover);

/// phi_i(x) = f_i(x) / sum_j f_j(x) with f_i = dist(x, X \ U_i). A member
/// equal to the whole space uses diameter + 1 in place of +inf. Throws
/// ZeroLebesgue.
PointFunction barycentric_map(const Cover& cover);

/// 4 m^2 / Leb. A whole-space member makes Leb infinite and the capped map
/// carries no claim, so +inf is returned then.
double barycentric_lipschitz_bound(const Cover& cover);

}  // namespace coarse
