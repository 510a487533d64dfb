#include "coarse/cover.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "coarse/parallel.hpp"
#include "nearest.hpp"

namespace coarse {

Cover::Cover(SpacePtr space, std::vector<PointSet> members) : space_(std::move(space)), members_(std::move(members)) {
  if (!space_) throw Error(ErrorKind::InvalidArgument, "cover without a space");
  const std::size_t n = space_->size();
  offsets_.assign(n + 1, 0);
  for (auto& m : members_) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (!m.empty() && m.back() >= n) throw Error(ErrorKind::UnknownPoint, "member point out of range", {m.back()});
    for (PointIndex x : m) ++offsets_[x + 1];
  }
  for (PointIndex x = 0; x < n; ++x) {
    if (offsets_[x + 1] == 0) {
      throw Error(ErrorKind::NotACover, "point '" + space_->id(x) + "' lies in no member", {x});
    }
  }
  for (PointIndex x = 0; x < n; ++x) offsets_[x + 1] += offsets_[x];
  owners_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (PointIndex x : members_[i]) owners_[fill[x]++] = i;
  }
}

bool Cover::contains(std::size_t member, PointIndex x) const noexcept {
  const auto owners = containing(x);
  return std::binary_search(owners.begin(), owners.end(), member);
}

PointSet Cover::complement(std::size_t member) const {
  PointSet out;
  const PointSet& m = members_.at(member);
  out.reserve(space_->size() - m.size());
  std::size_t k = 0;
  for (PointIndex x = 0; x < space_->size(); ++x) {
    if (k < m.size() && m[k] == x) {
      ++k;
    } else {
      out.push_back(x);
    }
  }
  return out;
}

bool Cover::operator==(const Cover& other) const {
  return members_ == other.members_ && same_space(space_, other.space_);
}

std::vector<double> complement_distances(const Cover& cover, std::size_t member) {
  const auto& space = cover.metric();
  std::vector<double> out(space.size(), 0.0);
  const PointSet& m = cover.member(member);
  if (m.size() == space.size()) {
    std::fill(out.begin(), out.end(), kInfinity);
    return out;
  }
  const PointSet rest = cover.complement(member);
  const detail::NearestFinder finder(space, rest);
  const std::size_t chunks = chunks_for(m.size(), 512);
  parallel_chunks(m.size(), chunks, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) out[m[k]] = finder.query(m[k]).first;
  });
  return out;
}

LebesgueReport lebesgue_number(const Cover& cover) {
  const std::size_t n = cover.metric().size();
  std::vector<double> best(n, 0.0);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (cover.member(i).empty()) continue;
    const auto f = complement_distances(cover, i);
    for (PointIndex x : cover.member(i)) best[x] = std::max(best[x], f[x]);
  }
  LebesgueReport report;
  for (PointIndex x = 0; x < n; ++x) {
    if (best[x] < report.value) {
      report.value = best[x];
      report.critical_point = x;
    }
  }
  return report;
}

std::size_t multiplicity(const Cover& cover) {
  std::size_t m = 0;
  for (PointIndex x = 0; x < cover.metric().size(); ++x) m = std::max(m, cover.containing(x).size());
  return m;
}

double member_diameter(const FiniteMetricSpace& space, const PointSet& member) {
  if (member.size() < 2) return 0.0;
  if (!space.is_dense() && space.norm() != Norm::L2) {
    // Extremes of linear functionals, as for the whole space.
    const std::size_t dim = space.coordinate_dim();
    const bool sup = space.norm() == Norm::Sup;
    const std::size_t patterns = sup ? dim : (std::size_t{1} << (dim - 1));
    double best = 0.0;
    for (std::size_t p = 0; p < patterns; ++p) {
      double lo = kInfinity, hi = -kInfinity;
      for (PointIndex x : member) {
        const auto c = space.coordinates_of(x);
        double v = 0.0;
        if (sup) {
          v = c[p];
        } else {
          for (std::size_t k = 0; k < dim; ++k) v += (k > 0 && ((p >> (k - 1)) & 1U)) ? -c[k] : c[k];
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      best = std::max(best, hi - lo);
    }
    return space.scale() * best;
  }
  double best = 0.0;
  for (std::size_t i = 0; i < member.size(); ++i) {
    for (std::size_t j = i + 1; j < member.size(); ++j) best = std::max(best, space.distance(member[i], member[j]));
  }
  return best;
}

double mesh(const Cover& cover) {
  double best = 0.0;
  for (const auto& m : cover.members()) best = std::max(best, member_diameter(cover.metric(), m));
  return best;
}

RefinementReport is_refinement(const Cover& fine, const Cover& coarse) {
  if (!same_space(fine.space(), coarse.space())) {
    throw Error(ErrorKind::SpaceMismatch, "covers live on different spaces");
  }
  RefinementReport report;
  report.witness.resize(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const PointSet& v = fine.member(i);
    if (v.empty()) continue;
    const auto first = coarse.containing(v.front());
    std::vector<std::size_t> candidates(first.begin(), first.end());
    for (std::size_t k = 1; k < v.size() && !candidates.empty(); ++k) {
      const auto owners = coarse.containing(v[k]);
      std::vector<std::size_t> next;
      std::set_intersection(candidates.begin(), candidates.end(), owners.begin(), owners.end(),
                            std::back_inserter(next));
      candidates.swap(next);
    }
    if (candidates.empty()) {
      if (report.refines) report.failing_member = i;
      report.refines = false;
    } else {
      report.witness[i] = candidates.front();
    }
  }
  return report;
}

namespace {

struct Box {
  std::array<double, 8> lo{};
  std::array<double, 8> hi{};
};

}  // namespace

DisjointnessReport is_r_disjoint(const FiniteMetricSpace& space, std::span<const PointSet> family, double r) {
  DisjointnessReport report;
  const double limit = r + kTolerance;
  const std::size_t k = family.size();
  // Bounding boxes give a cheap lower bound on member distances for coordinate
  // spaces in low dimension (sup coordinate gap <= every norm).
  const bool boxes = !space.is_dense() && space.coordinate_dim() <= 8;
  std::vector<Box> box(boxes ? k : 0);
  if (boxes) {
    for (std::size_t i = 0; i < k; ++i) {
      box[i].lo.fill(kInfinity);
      box[i].hi.fill(-kInfinity);
      for (PointIndex x : family[i]) {
        const auto c = space.coordinates_of(x);
        for (std::size_t a = 0; a < c.size(); ++a) {
          box[i].lo[a] = std::min(box[i].lo[a], c[a]);
          box[i].hi[a] = std::max(box[i].hi[a], c[a]);
        }
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (family[i].empty()) continue;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (family[j].empty()) continue;
      if (boxes) {
        double gap = 0.0;
        for (std::size_t a = 0; a < space.coordinate_dim(); ++a) {
          gap = std::max({gap, box[j].lo[a] - box[i].hi[a], box[i].lo[a] - box[j].hi[a]});
        }
        if (gap * space.scale() > limit) continue;
      }
      const detail::NearestFinder finder(space, family[j]);
      for (PointIndex x : family[i]) {
        const auto [d, y] = finder.query(x);
        if (d <= limit) {
          report.disjoint = false;
          report.members = std::make_pair(i, j);
          report.points = std::make_pair(x, y);
          return report;
        }
      }
    }
  }
  return report;
}

Cover shrink_to_indexed(const Cover& refinement, const Cover& original) {
  const auto rep = is_refinement(refinement, original);
  if (!rep.refines) {
    throw Error(ErrorKind::NotARefinement, "member " + std::to_string(*rep.failing_member) +
                                               " lies in no member of the original cover",
                {*rep.failing_member});
  }
  std::vector<PointSet> out(original.size());
  for (std::size_t i = 0; i < refinement.size(); ++i) {
    if (!rep.witness[i]) continue;
    auto& dst = out[*rep.witness[i]];
    dst.insert(dst.end(), refinement.member(i).begin(), refinement.member(i).end());
  }
  return Cover(original.space(), std::move(out));
}

Cover without_empty_members(const Cover& cover) {
  std::vector<PointSet> kept;
  for (const auto& m : cover.members()) {
    if (!m.empty()) kept.push_back(m);
  }
  return Cover(cover.space(), std::move(kept));
}

ColoredCover::ColoredCover(Cover flat, std::vector<std::vector<std::size_t>> families, double r)
    : flat_(std::move(flat)), families_(std::move(families)), r_(r) {
  if (!(r_ > 0.0) || !std::isfinite(r_)) throw Error(ErrorKind::InvalidArgument, "r must be positive");
  if (families_.empty()) throw Error(ErrorKind::InvalidArgument, "a colored cover needs at least one family");
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  family_of_.assign(flat_.size(), kUnset);
  for (std::size_t f = 0; f < families_.size(); ++f) {
    for (std::size_t m : families_[f]) {
      if (m >= flat_.size()) throw Error(ErrorKind::InvalidArgument, "family lists an unknown member", {m});
      if (family_of_[m] != kUnset) throw Error(ErrorKind::InvalidArgument, "member listed in two families", {m});
      family_of_[m] = f;
    }
  }
  for (std::size_t m = 0; m < flat_.size(); ++m) {
    if (family_of_[m] == kUnset) throw Error(ErrorKind::InvalidArgument, "member in no family", {m});
  }
}

namespace {

Cover flatten(SpacePtr space, const std::vector<std::vector<PointSet>>& families,
              std::vector<std::vector<std::size_t>>& index) {
  std::vector<PointSet> members;
  index.assign(families.size(), {});
  for (std::size_t f = 0; f < families.size(); ++f) {
    for (const auto& m : families[f]) {
      index[f].push_back(members.size());
      members.push_back(m);
    }
  }
  return Cover(std::move(space), std::move(members));
}

}  // namespace

ColoredCover::ColoredCover(SpacePtr space, const std::vector<std::vector<PointSet>>& families, double r)
    : ColoredCover(
          [&] {
            std::vector<std::vector<std::size_t>> index;
            Cover c = flatten(std::move(space), families, index);
            return std::pair<Cover, std::vector<std::vector<std::size_t>>>(std::move(c), std::move(index));
          }(),
          r) {}

std::vector<PointSet> ColoredCover::family_members(std::size_t i) const {
  std::vector<PointSet> out;
  for (std::size_t m : families_.at(i)) out.push_back(flat_.member(m));
  return out;
}

}  // namespace coarse
