#include "coarse/nerve.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace coarse {

long NerveComplex::dimension() const {
  long d = -1;
  for (const auto& s : simplices) d = std::max(d, static_cast<long>(s.size()) - 1);
  return d;
}

bool NerveComplex::contains(const std::vector<std::size_t>& simplex) const {
  return std::binary_search(simplices.begin(), simplices.end(), simplex,
                            [](const auto& a, const auto& b) {
                              if (a.size() != b.size()) return a.size() < b.size();
                              return a < b;
                            });
}

NerveComplex nerve_of(const Cover& cover) {
  // Every simplex is a face of some point's owner set, so it suffices to
  // close the distinct owner sets downward.
  std::set<std::vector<std::size_t>> tops;
  for (PointIndex x = 0; x < cover.metric().size(); ++x) {
    const auto owners = cover.containing(x);
    tops.emplace(owners.begin(), owners.end());
  }
  std::set<std::vector<std::size_t>> faces;
  for (const auto& top : tops) {
    if (top.size() >= 63) throw Error(ErrorKind::InvalidArgument, "multiplicity too large for nerve enumeration");
    const std::uint64_t count = std::uint64_t{1} << top.size();
    for (std::uint64_t mask = 1; mask < count; ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t k = 0; k < top.size(); ++k) {
        if (mask & (std::uint64_t{1} << k)) face.push_back(top[k]);
      }
      faces.insert(std::move(face));
    }
  }
  NerveComplex out;
  out.member_count = cover.size();
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (!cover.member(i).empty()) out.vertices.push_back(i);
  }
  out.simplices.assign(faces.begin(), faces.end());
  std::stable_sort(out.simplices.begin(), out.simplices.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

PointFunction barycentric_map(const Cover& cover) {
  const auto& space = cover.metric();
  const auto leb = lebesgue_number(cover);
  if (!(leb.value > 0.0)) {
    throw Error(ErrorKind::ZeroLebesgue, "barycentric map needs a positive Lebesgue number",
                {*leb.critical_point});
  }
  const std::size_t n = space.size();
  const std::size_t k = cover.size();
  const double cap = space.diameter() + 1.0;
  std::vector<double> values(n * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    if (cover.member(i).empty()) continue;
    const auto f = complement_distances(cover, i);
    for (PointIndex x : cover.member(i)) values[x * k + i] = std::min(f[x], cap);
  }
  for (PointIndex x = 0; x < n; ++x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += values[x * k + i];
    for (std::size_t i = 0; i < k; ++i) values[x * k + i] /= sum;
  }
  return PointFunction::simplex(cover.space(), k, std::move(values));
}

double barycentric_lipschitz_bound(const Cover& cover) {
  const auto leb = lebesgue_number(cover);
  if (leb.infinite()) return kInfinity;
  const double m = static_cast<double>(multiplicity(cover));
  return 4.0 * m * m / leb.value;
}

}  // namespace coarse
