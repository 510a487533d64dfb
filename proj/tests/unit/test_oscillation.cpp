#include <gtest/gtest.h>

#include <random>

#include "coarse/oscillation.hpp"
#include "oracles.hpp"

using namespace coarse;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

PointFunction random_real(const SpacePtr& X, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::vector<double> v(X->size());
  for (auto& x : v) x = std::round(u(rng) * 8.0) / 8.0;
  return PointFunction::real(X, v);
}

}  // namespace

TEST(Continuity, MatchesBruteForceWithStrictInequalities) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const auto X = share(trial % 2 ? integer_grid(0, 5) : integer_interval(0, 30));
    const auto f = random_real(X, rng);
    const double eps = 0.25 * (1 + trial % 8);
    const double delta = 1.0 + trial % 4;
    std::optional<std::pair<PointIndex, PointIndex>> first;
    for (PointIndex x = 0; x < X->size() && !first; ++x) {
      for (PointIndex y = x + 1; y < X->size() && !first; ++y) {
        if (X->distance(x, y) < delta && std::abs(f.at(x) - f.at(y)) >= eps) first = {x, y};
      }
    }
    const auto rep = continuity_check(f, eps, delta);
    EXPECT_EQ(rep.continuous, !first.has_value());
    EXPECT_EQ(rep.witness, first);
  }
}

TEST(Continuity, BoundaryDistanceIsExcluded) {
  const auto X = share(integer_interval(0, 2));
  const auto f = PointFunction::real(X, {0.0, 0.0, 5.0});
  EXPECT_TRUE(continuity_check(f, 1.0, 1.0).continuous);
  EXPECT_FALSE(continuity_check(f, 1.0, 1.5).continuous);
  EXPECT_TRUE(continuity_check(f, 5.5, 100.0).continuous);
  EXPECT_FALSE(continuity_check(f, 5.0, 100.0).continuous);
}

TEST(Continuity, ModulusMatchesBruteForce) {
  std::mt19937_64 rng(73);
  const auto X = share(integer_interval(0, 25));
  const auto f = random_real(X, rng);
  const std::vector<double> deltas = {0.5, 1.0, 1.5, 3.0, 30.0};
  const auto table = modulus(f, deltas);
  for (double d : deltas) {
    double ref = 0.0;
    for (PointIndex x = 0; x < X->size(); ++x) {
      for (PointIndex y = x + 1; y < X->size(); ++y) {
        if (X->distance(x, y) < d) ref = std::max(ref, std::abs(f.at(x) - f.at(y)));
      }
    }
    EXPECT_DOUBLE_EQ(table(d), ref);
  }
}

TEST(Variation, ProfileMatchesBruteForce) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 10; ++trial) {
    const auto X = share(integer_interval(0, 40).with_basepoint(0));
    const auto f = random_real(X, rng);
    const double R = 1.0 + trial % 3;
    const std::vector<double> Ns = {0.0, 5.0, 17.5, 39.0, 45.0};
    const auto prof = variation_profile(f, R, Ns);
    ASSERT_EQ(prof.entries.size(), Ns.size());
    for (std::size_t k = 0; k < Ns.size(); ++k) {
      double ref = 0.0;
      for (PointIndex x = 0; x < X->size(); ++x) {
        for (PointIndex y = 0; y < X->size(); ++y) {
          if (X->distance(x, y) <= R && X->distance(0, x) >= Ns[k] && X->distance(0, y) >= Ns[k]) {
            ref = std::max(ref, std::abs(f.at(x) - f.at(y)));
          }
        }
      }
      EXPECT_EQ(prof.entries[k].first, Ns[k]);
      EXPECT_DOUBLE_EQ(prof.entries[k].second, ref);
      EXPECT_DOUBLE_EQ(prof.at(Ns[k]), ref);
    }
  }
}

TEST(Variation, RequiresBasepoint) {
  const auto X = share(FiniteMetricSpace::from_distance_matrix({{0, 1}, {1, 0}}));
  const auto f = PointFunction::real(X, {0.0, 1.0});
  const std::vector<double> Ns = {0.0};
  EXPECT_EQ(kind_of([&] { variation_profile(f, 1.0, Ns); }), ErrorKind::NoBasepoint);
  EXPECT_EQ(kind_of([&] { oscillation_witness(f, 1.0, 1.0, 0.0); }), ErrorKind::NoBasepoint);
}

TEST(Squares, InstanceShape) {
  const auto inst = squares_instance(6);
  EXPECT_EQ(inst.space->size(), 37u);
  EXPECT_EQ(inst.squares, (PointSet{0, 1, 4, 9, 16, 25, 36}));
  EXPECT_EQ(inst.inclusion.domain, inst.squares);
  EXPECT_EQ(inst.inclusion.values[3], 9.0);
  EXPECT_EQ(kind_of([] { squares_instance(1); }), ErrorKind::NmaxTooSmall);
}

TEST(Squares, ExtensionsAgreeWithTheInclusion) {
  const auto inst = squares_instance(12);
  const auto lin = linear_extension(inst);
  const auto near = nearest_square_extension(inst);
  for (PointIndex x = 0; x < inst.space->size(); ++x) {
    EXPECT_EQ(lin.at(x), static_cast<double>(x));
    double best = INFINITY, val = 0.0;
    for (PointIndex s : inst.squares) {
      const double d = std::abs(static_cast<double>(x) - static_cast<double>(s));
      if (d < best) best = d, val = static_cast<double>(s);
    }
    EXPECT_EQ(near.at(x), val);
  }
}

TEST(Squares, BothExtensionsOscillateFarOut) {
  const auto inst = squares_instance(15);
  for (const auto& g : {linear_extension(inst), nearest_square_extension(inst)}) {
    for (double N : {0.0, 50.0, 150.0, 200.0}) {
      const auto w = oscillation_witness(g, 1.0, 1.0, N);
      ASSERT_TRUE(w.has_value());
      EXPECT_LE(inst.space->distance(w->first, w->second), 1.0);
      EXPECT_GE(static_cast<double>(w->first), N);
      EXPECT_GE(std::abs(g.at(w->first) - g.at(w->second)), 1.0);
    }
  }
}

TEST(Annulus, PreconditionsAreChecked) {
  const auto inst = squares_instance(10);
  PartialFunction f{inst.squares, 1, std::vector<double>(inst.squares.size(), 0.5)};
  const auto ext = mcshane_bounded_extender();
  AnnulusParams p{10.0, 0.2, 3.0, 0.3, 6.0, std::nullopt};
  EXPECT_NO_THROW(annulus_extend(inst.space, f, p, ext));
  p.S = 3.4;
  EXPECT_EQ(kind_of([&] { annulus_extend(inst.space, f, p, ext); }), ErrorKind::PreconditionViolated);
  p.S = 3.0;
  p.M = 10.0;
  EXPECT_EQ(kind_of([&] { annulus_extend(inst.space, f, p, ext); }), ErrorKind::PreconditionViolated);
  p.M = 6.0;
  f.values[2] = 1.0;
  EXPECT_EQ(kind_of([&] { annulus_extend(inst.space, f, p, ext); }), ErrorKind::PreconditionViolated);
  f.values[2] = 1.5;
  EXPECT_EQ(kind_of([&] { annulus_extend(inst.space, f, p, ext); }), ErrorKind::InvalidArgument);
}

TEST(Annulus, SlowlyVaryingDataExtendsContinuously) {
  const auto inst = squares_instance(30);
  PartialFunction f{inst.squares, 1, {}};
  for (std::size_t i = 0; i < inst.squares.size(); ++i) f.values.push_back(0.5 + 0.4 * std::sin(i / 40.0));
  AnnulusParams p{30.0, 0.2, 30.0 / 3.5, 0.3, 18.0, std::nullopt};
  const auto res = annulus_extend(inst.space, f, p, mcshane_bounded_extender());
  EXPECT_GT(res.annuli, 1u);
  for (std::size_t a = 0; a < f.domain.size(); ++a) EXPECT_NEAR(res.g.at(f.domain[a]), f.values[a], 1e-9);
  EXPECT_TRUE(continuity_check(res.g, p.epsilon, p.M).continuous);
  for (PointIndex x = 0; x < inst.space->size(); ++x) {
    EXPECT_GE(res.g.at(x), 0.0);
    EXPECT_LE(res.g.at(x), 1.0);
  }
}
