#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "coarse/asdim.hpp"
#include "coarse/parallel.hpp"

namespace coarse {

namespace {

// nbr[y] = points x with d(x, y) < s, ascending.
std::vector<PointSet> open_balls(const FiniteMetricSpace& X, double s) {
  const std::size_t n = X.size();
  std::vector<PointSet> nbr(n);
  if (X.is_dense()) {
    parallel_chunks(n, chunks_for(n), [&](std::size_t, std::size_t b, std::size_t e) {
      for (PointIndex y = b; y < e; ++y) {
        for (PointIndex x = 0; x < n; ++x) {
          if (X.distance(x, y) < s) nbr[y].push_back(x);
        }
      }
    });
    return nbr;
  }
  // Every norm dominates each coordinate difference, so a window on the first
  // coordinate contains the ball.
  std::vector<PointIndex> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto first = [&](PointIndex p) { return X.coordinates_of(p)[0]; };
  std::sort(order.begin(), order.end(), [&](PointIndex a, PointIndex b) { return first(a) < first(b); });
  const double reach = s / X.scale();
  parallel_chunks(n, chunks_for(n), [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const PointIndex y = order[k];
      const double c = first(y);
      auto lo = std::lower_bound(order.begin(), order.end(), c - reach,
                                 [&](PointIndex p, double v) { return first(p) < v; });
      for (auto it = lo; it != order.end() && first(*it) <= c + reach; ++it) {
        if (X.distance(*it, y) < s) nbr[y].push_back(*it);
      }
      std::sort(nbr[y].begin(), nbr[y].end());
    }
  });
  return nbr;
}

class LabelState {
 public:
  LabelState(const std::vector<PointSet>& nbr, std::size_t k, std::size_t target)
      : nbr_(nbr), k_(k), target_(target), count_(nbr.size() * k, 0), distinct_(nbr.size(), 0),
        label_(nbr.size(), kUnset) {}

  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  std::size_t label(PointIndex x) const { return label_[x]; }
  long violation() const { return violation_; }
  std::size_t distinct(PointIndex y) const { return distinct_[y]; }
  bool over(PointIndex y) const { return distinct_[y] > target_; }
  bool has(PointIndex y, std::size_t i) const { return count_[y * k_ + i] > 0; }

  // Change in total violation if x moved to label b.
  long delta(PointIndex x, std::size_t b) const {
    const std::size_t a = label_[x];
    if (a == b) return 0;
    long d = 0;
    for (PointIndex y : nbr_[x]) {
      long dist = static_cast<long>(distinct_[y]);
      const long before = std::max(0L, dist - static_cast<long>(target_));
      if (a != kUnset && count_[y * k_ + a] == 1) --dist;
      if (count_[y * k_ + b] == 0) ++dist;
      d += std::max(0L, dist - static_cast<long>(target_)) - before;
    }
    return d;
  }

  void set(PointIndex x, std::size_t b) {
    const std::size_t a = label_[x];
    if (a == b) return;
    for (PointIndex y : nbr_[x]) {
      const long before = excess(y);
      if (a != kUnset && --count_[y * k_ + a] == 0) --distinct_[y];
      if (count_[y * k_ + b]++ == 0) ++distinct_[y];
      violation_ += excess(y) - before;
    }
    label_[x] = b;
  }

  void unset(PointIndex x) {
    const std::size_t a = label_[x];
    if (a == kUnset) return;
    for (PointIndex y : nbr_[x]) {
      const long before = excess(y);
      if (--count_[y * k_ + a] == 0) --distinct_[y];
      violation_ += excess(y) - before;
    }
    label_[x] = kUnset;
  }

 private:
  long excess(PointIndex y) const { return std::max(0L, static_cast<long>(distinct_[y]) - static_cast<long>(target_)); }

  const std::vector<PointSet>& nbr_;
  std::size_t k_;
  std::size_t target_;
  std::vector<std::uint32_t> count_;
  std::vector<std::size_t> distinct_;
  std::vector<std::size_t> label_;
  long violation_ = 0;
};

bool backtrack(LabelState& state, const std::vector<std::vector<std::size_t>>& allowed,
               const std::vector<PointIndex>& order, std::size_t depth, std::uint64_t& budget) {
  if (depth == order.size()) return true;
  const PointIndex x = order[depth];
  for (std::size_t label : allowed[x]) {
    if (budget == 0) return false;
    --budget;
    if (state.delta(x, label) > 0) continue;
    state.set(x, label);
    if (backtrack(state, allowed, order, depth + 1, budget)) return true;
    state.unset(x);
  }
  return false;
}

}  // namespace

std::optional<Cover> search_refinement(const Cover& cover, double target_leb, std::size_t target_mult,
                                       const SearchOptions& options) {
  if (!(target_leb > 0.0)) throw Error(ErrorKind::InvalidArgument, "target Lebesgue number must be positive");
  if (target_mult == 0) throw Error(ErrorKind::InvalidArgument, "target multiplicity must be positive");
  const auto& X = cover.metric();
  const std::size_t n = X.size();
  const std::size_t k = cover.size();
  if (lebesgue_number(cover).value >= target_leb - kTolerance && multiplicity(cover) <= target_mult) return cover;

  std::vector<std::vector<double>> far(k);
  for (std::size_t i = 0; i < k; ++i) far[i] = complement_distances(cover, i);
  std::vector<std::vector<std::size_t>> allowed(n);
  std::vector<std::size_t> home(n);
  for (PointIndex x = 0; x < n; ++x) {
    double best = -1.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (far[i][x] >= target_leb - kTolerance) allowed[x].push_back(i);
      if (far[i][x] > best) {
        best = far[i][x];
        home[x] = i;
      }
    }
    if (allowed[x].empty()) return std::nullopt;
  }

  const auto nbr = open_balls(X, target_leb);
  LabelState state(nbr, k, target_mult);
  for (PointIndex x = 0; x < n; ++x) state.set(x, home[x]);

  std::uint64_t budget = options.budget;
  if (state.violation() > 0) {
    // Greedy pass over the thickest points first.
    std::vector<PointIndex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](PointIndex a, PointIndex b) {
      return cover.containing(a).size() > cover.containing(b).size();
    });
    for (PointIndex x : order) state.unset(x);
    for (PointIndex x : order) {
      std::size_t pick = allowed[x].front();
      long best = state.delta(x, pick);
      for (std::size_t label : allowed[x]) {
        const long d = state.delta(x, label);
        if (d < best || (d == best && label == home[x])) {
          best = d;
          pick = label;
        }
      }
      state.set(x, pick);
    }

    // Min-conflicts repair with a short tabu list.
    std::mt19937_64 rng(options.seed);
    std::vector<std::uint64_t> tabu_until(n * k, 0);
    const std::uint64_t tenure = 7;
    std::uint64_t step = 0;
    PointSet bad;
    while (state.violation() > 0 && budget > 0) {
      --budget;
      ++step;
      bad.clear();
      for (PointIndex y = 0; y < n; ++y) {
        if (state.over(y)) bad.push_back(y);
      }
      const PointIndex y = bad[std::uniform_int_distribution<std::size_t>(0, bad.size() - 1)(rng)];
      const auto& movers = nbr[y];
      const PointIndex x = movers[std::uniform_int_distribution<std::size_t>(0, movers.size() - 1)(rng)];
      long best = 0;
      std::vector<std::size_t> picks;
      for (std::size_t label : allowed[x]) {
        if (label == state.label(x)) continue;
        const long d = state.delta(x, label);
        const bool aspirate = state.violation() + d == 0;
        if (tabu_until[x * k + label] > step && !aspirate) continue;
        if (picks.empty() || d < best) {
          best = d;
          picks.assign(1, label);
        } else if (d == best) {
          picks.push_back(label);
        }
      }
      if (picks.empty()) continue;
      const std::size_t pick = picks[std::uniform_int_distribution<std::size_t>(0, picks.size() - 1)(rng)];
      tabu_until[x * k + state.label(x)] = step + tenure;
      state.set(x, pick);
    }

    if (state.violation() > 0 && n <= 24) {
      for (PointIndex x = 0; x < n; ++x) state.unset(x);
      std::uint64_t nodes = options.budget;
      if (!backtrack(state, allowed, order, 0, nodes)) return std::nullopt;
    }
    if (state.violation() > 0) return std::nullopt;
  }

  std::vector<PointSet> members(k);
  for (PointIndex y = 0; y < n; ++y) {
    for (std::size_t i = 0; i < k; ++i) {
      if (state.has(y, i)) members[i].push_back(y);
    }
  }
  Cover out(cover.space(), std::move(members));
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::includes(cover.member(i).begin(), cover.member(i).end(), out.member(i).begin(), out.member(i).end())) {
      throw Error(ErrorKind::VerificationFailed, "search output leaves its input member");
    }
  }
  const auto leb = lebesgue_number(out);
  if (leb.value < target_leb - kTolerance || multiplicity(out) > target_mult) {
    throw Error(ErrorKind::VerificationFailed, "search output misses its targets");
  }
  return out;
}

}  // namespace coarse
