#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "coarse/cover.hpp"

namespace coarse {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long floor_mod(long a, long b) { return a - floor_div(a, b) * b; }

long integer_coordinate(const FiniteMetricSpace& space, PointIndex x, std::size_t axis) {
  const double v = space.coordinates_of(x)[axis];
  if (v != std::floor(v)) {
    throw Error(ErrorKind::InvalidArgument, "brick covers need integer coordinates", {x});
  }
  return static_cast<long>(v);
}

void require_lattice(const SpacePtr& space, std::size_t dim) {
  if (!space || space->is_dense() || space->coordinate_dim() != dim || space->scale() != 1.0) {
    throw Error(ErrorKind::InvalidArgument,
                "brick covers need an unscaled " + std::to_string(dim) + "-dimensional coordinate space");
  }
  if (dim == 2 && space->norm() != Norm::Sup) {
    throw Error(ErrorKind::InvalidArgument, "planar brick covers are built for the sup metric");
  }
}

// Re-checks the advertised contract with the generic checkers.
void verify_bricks(const ColoredCover& cover, long L, double mesh_bound, std::size_t max_mult) {
  const auto& space = cover.flat().metric();
  for (std::size_t f = 0; f < cover.family_count(); ++f) {
    const auto members = cover.family_members(f);
    const auto rep = is_r_disjoint(space, members, static_cast<double>(L));
    if (!rep.disjoint) {
      throw Error(ErrorKind::ConstructionInvalid,
                  "family " + std::to_string(f) + " is not " + std::to_string(L) + "-disjoint",
                  {rep.points->first, rep.points->second});
    }
  }
  const auto leb = lebesgue_number(cover.flat());
  if (leb.value < static_cast<double>(L) - kTolerance) {
    throw Error(ErrorKind::ConstructionInvalid, "Lebesgue number below L", {*leb.critical_point});
  }
  if (mesh(cover.flat()) > mesh_bound + kTolerance) throw Error(ErrorKind::ConstructionInvalid, "mesh too large");
  const std::size_t mult = multiplicity(cover.flat());
  if (mult > max_mult) throw Error(ErrorKind::ConstructionInvalid, "multiplicity too large");
}

}  // namespace

ColoredCover brick_cover_Z(const SpacePtr& space, long L) {
  require_lattice(space, 1);
  if (L < 1) throw Error(ErrorKind::InvalidArgument, "L must be a positive integer");
  long lo = 0, hi = 0;
  for (PointIndex x = 0; x < space->size(); ++x) {
    const long v = integer_coordinate(*space, x, 0);
    lo = (x == 0) ? v : std::min(lo, v);
    hi = (x == 0) ? v : std::max(hi, v);
  }
  if (hi - lo < 8 * L) {
    throw Error(ErrorKind::WindowTooSmall,
                "window of length " + std::to_string(hi - lo) + " is shorter than 8L = " + std::to_string(8 * L));
  }
  const long period = 6 * L;
  std::vector<std::map<long, PointSet>> bricks(2);
  for (PointIndex x = 0; x < space->size(); ++x) {
    const long v = integer_coordinate(*space, x, 0);
    for (int f = 0; f < 2; ++f) {
      const long shifted = v - f * 3 * L;
      if (floor_mod(shifted, period) < 5 * L) bricks[f][floor_div(shifted, period)].push_back(x);
    }
  }
  std::vector<std::vector<PointSet>> families(2);
  for (int f = 0; f < 2; ++f) {
    for (auto& [k, pts] : bricks[f]) families[f].push_back(std::move(pts));
  }
  ColoredCover out(space, families, static_cast<double>(L));
  verify_bricks(out, L, 5.0 * L, 2);
  return out;
}

ColoredCover brick_cover_Z(long first, long last, long L) {
  if (last - first < 8 * L) {
    throw Error(ErrorKind::WindowTooSmall, "window shorter than 8L");
  }
  return brick_cover_Z(share(integer_interval(first, last)), L);
}

ColoredCover brick_cover_Z2(const SpacePtr& space, long L) {
  require_lattice(space, 2);
  if (L < 1) throw Error(ErrorKind::InvalidArgument, "L must be a positive integer");
  long lo[2] = {0, 0}, hi[2] = {0, 0};
  for (PointIndex x = 0; x < space->size(); ++x) {
    for (std::size_t a = 0; a < 2; ++a) {
      const long v = integer_coordinate(*space, x, a);
      lo[a] = (x == 0) ? v : std::min(lo[a], v);
      hi[a] = (x == 0) ? v : std::max(hi[a], v);
    }
  }
  if (std::min(hi[0] - lo[0], hi[1] - lo[1]) < 16 * L) {
    throw Error(ErrorKind::WindowTooSmall, "window side shorter than 16L = " + std::to_string(16 * L));
  }
  const long w = 8 * L;
  const long h = 4 * L;
  // (color, row, column) -> points of the enlarged brick
  std::map<std::tuple<long, long, long>, PointSet> bricks;
  for (PointIndex p = 0; p < space->size(); ++p) {
    const long x = integer_coordinate(*space, p, 0);
    const long y = integer_coordinate(*space, p, 1);
    const long row = floor_div(y, h);
    for (long r = row - 1; r <= row + 1; ++r) {
      if (y < r * h - L || y >= (r + 1) * h + L) continue;
      const long offset = floor_mod(r, 2) * (w / 2);
      const long col = floor_div(x - offset, w);
      for (long c = col - 1; c <= col + 1; ++c) {
        if (x < c * w + offset - L || x >= (c + 1) * w + offset + L) continue;
        const long color = floor_mod(2 * c + floor_mod(r, 2), 3);
        bricks[{color, r, c}].push_back(p);
      }
    }
  }
  std::vector<std::vector<PointSet>> families(3);
  for (auto& [key, pts] : bricks) families[std::get<0>(key)].push_back(std::move(pts));
  ColoredCover out(space, families, static_cast<double>(L));
  verify_bricks(out, L, 20.0 * L, 3);
  return out;
}

ColoredCover brick_cover_Z2(long first, long last, long L) {
  if (last - first < 16 * L) throw Error(ErrorKind::WindowTooSmall, "window side shorter than 16L");
  return brick_cover_Z2(share(integer_grid(first, last, Norm::Sup)), L);
}

}  // namespace coarse
