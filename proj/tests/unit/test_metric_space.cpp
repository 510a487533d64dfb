#include <gtest/gtest.h>

#include <random>

#include "coarse/metric_space.hpp"
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

std::vector<std::size_t> witness_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.witness();
  }
  return {};
}

}  // namespace

TEST(MetricSpace, RejectsAsymmetricMatrixWithWitness) {
  const std::vector<std::vector<double>> m = {{0, 1, 2}, {1.5, 0, 1}, {2, 1, 0}};
  EXPECT_EQ(kind_of([&] { FiniteMetricSpace::from_distance_matrix(m); }), ErrorKind::AsymmetricMatrix);
  EXPECT_EQ(witness_of([&] { FiniteMetricSpace::from_distance_matrix(m); }), (std::vector<std::size_t>{0, 1, 0}));
}

TEST(MetricSpace, RejectsBadEntries) {
  EXPECT_EQ(kind_of([] { FiniteMetricSpace::from_distance_matrix({{0, -1}, {-1, 0}}); }), ErrorKind::NegativeDistance);
  EXPECT_EQ(kind_of([] { FiniteMetricSpace::from_distance_matrix({{0, 0}, {0, 0}}); }), ErrorKind::CoincidentPoints);
  EXPECT_EQ(kind_of([] { FiniteMetricSpace::from_distance_matrix({{1, 1}, {1, 0}}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { FiniteMetricSpace::from_distance_matrix({{0, 1}, {1}}); }), ErrorKind::NonSquareMatrix);
  EXPECT_EQ(kind_of([] { FiniteMetricSpace::from_distance_matrix({{0, INFINITY}, {INFINITY, 0}}); }),
            ErrorKind::NonFiniteValue);
}

TEST(MetricSpace, TriangleWitnessIsLexicographicallyFirst) {
  std::mt19937_64 rng(3);
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + trial % 5;
    std::uniform_real_distribution<double> w(1.0, 6.0);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = std::round(w(rng));
    }
    std::vector<std::size_t> expected;
    for (std::size_t x = 0; x < n && expected.empty(); ++x) {
      for (std::size_t y = 0; y < n && expected.empty(); ++y) {
        for (std::size_t z = 0; z < n && expected.empty(); ++z) {
          if (d[x][z] > d[x][y] + d[y][z] + 1e-9) expected = {x, y, z};
        }
      }
    }
    if (expected.empty()) {
      EXPECT_NO_THROW(FiniteMetricSpace::from_distance_matrix(d));
      continue;
    }
    ++found;
    EXPECT_EQ(kind_of([&] { FiniteMetricSpace::from_distance_matrix(d); }), ErrorKind::TriangleViolation);
    EXPECT_EQ(witness_of([&] { FiniteMetricSpace::from_distance_matrix(d); }), expected);
  }
  EXPECT_GT(found, 20);
}

TEST(MetricSpace, GraphDistancesMatchFloydWarshall) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial;
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 1; i < n; ++i) {
      edges.push_back({i, std::uniform_int_distribution<std::size_t>(0, i - 1)(rng), 1.0 + (rng() % 7)});
    }
    for (int extra = 0; extra < static_cast<int>(n); ++extra) {
      const auto a = rng() % n;
      const auto b = rng() % n;
      if (a != b) edges.push_back({a, b, 0.5 + (rng() % 9)});
    }
    std::vector<std::vector<double>> d(n, std::vector<double>(n, INFINITY));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const auto& e : edges) {
      d[e.u][e.v] = std::min(d[e.u][e.v], e.weight);
      d[e.v][e.u] = d[e.u][e.v];
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
    const auto X = FiniteMetricSpace::from_graph(n, edges);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) EXPECT_DOUBLE_EQ(X.distance(i, j), d[i][j]);
    }
  }
}

TEST(MetricSpace, DisconnectedGraphIsRejected) {
  const std::vector<WeightedEdge> edges = {{0, 1, 1.0}};
  EXPECT_EQ(kind_of([&] { FiniteMetricSpace::from_graph(3, edges); }), ErrorKind::DisconnectedGraph);
}

TEST(MetricSpace, CoordinateDistancesFollowTheNorm) {
  const std::vector<double> c = {0, 0, 3, 4, -1, 2};
  const auto sup = FiniteMetricSpace::from_coordinates(2, c, Norm::Sup, 2.0);
  const auto l1 = FiniteMetricSpace::from_coordinates(2, c, Norm::L1);
  const auto l2 = FiniteMetricSpace::from_coordinates(2, c, Norm::L2);
  EXPECT_DOUBLE_EQ(sup.distance(0, 1), 8.0);
  EXPECT_DOUBLE_EQ(l1.distance(0, 1), 7.0);
  EXPECT_DOUBLE_EQ(l2.distance(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(l1.distance(1, 2), 6.0);
  EXPECT_EQ(kind_of([] { FiniteMetricSpace::from_coordinates(1, {1, 2, 1}, Norm::Sup); }), ErrorKind::CoincidentPoints);
}

TEST(MetricSpace, DiameterAndSeparationMatchBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (Norm norm : {Norm::Sup, Norm::L1, Norm::L2}) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 2 + rng() % 60;
      const std::size_t dim = 1 + rng() % 3;
      std::vector<double> c(n * dim);
      for (auto& v : c) v = u(rng);
      const auto X = FiniteMetricSpace::from_coordinates(dim, c, norm, 1.5);
      double diam = 0.0, sep = INFINITY;
      for (PointIndex i = 0; i < n; ++i) {
        for (PointIndex j = i + 1; j < n; ++j) {
          diam = std::max(diam, X.distance(i, j));
          sep = std::min(sep, X.distance(i, j));
        }
      }
      EXPECT_NEAR(X.diameter(), diam, 1e-9);
      EXPECT_NEAR(X.min_separation(), sep, 1e-9);
    }
  }
}

TEST(MetricSpace, MicroVersionIsIdempotentAndTruncates) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto X = oracle::random_metric(3 + trial % 10, rng);
    const double M = 1.0 + trial % 5;
    const auto micro = micro_version(X, M);
    const auto twice = micro_version(micro, M);
    for (PointIndex i = 0; i < X.size(); ++i) {
      for (PointIndex j = 0; j < X.size(); ++j) {
        EXPECT_DOUBLE_EQ(micro.distance(i, j), std::min(X.distance(i, j), M));
        EXPECT_DOUBLE_EQ(twice.distance(i, j), micro.distance(i, j));
      }
    }
  }
}

TEST(MetricSpace, MacroVersionIsDiscrete) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto X = oracle::random_metric(3 + trial % 10, rng);
    const double M = 2.0 + trial % 4;
    const auto macro = macro_version(X, M);
    const auto both = macro_version(micro_version(X, M / 2.0), M);
    for (PointIndex i = 0; i < X.size(); ++i) {
      for (PointIndex j = i + 1; j < X.size(); ++j) {
        EXPECT_DOUBLE_EQ(macro.distance(i, j), std::max(X.distance(i, j), M));
        EXPECT_GE(both.distance(i, j), M);
      }
    }
  }
  EXPECT_EQ(kind_of([] { macro_version(integer_interval(0, 3), 0.0); }), ErrorKind::NonpositiveM);
}

TEST(MetricSpace, LiteralPseudoMacroBreaksTriangleInequality) {
  // Zeroing distances below M = 1 turns 0.7, 0.7, 1.2 into 0, 0, 1.2.
  const std::vector<std::vector<double>> d = {{0, 0.7, 1.2}, {0.7, 0, 0.7}, {1.2, 0.7, 0}};
  const auto X = FiniteMetricSpace::from_distance_matrix(d);
  const auto macro = macro_version(X, 1.0);
  EXPECT_DOUBLE_EQ(macro.distance(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(macro.distance(0, 2), 1.2);
}

TEST(MetricSpace, BallsAreOpen) {
  const auto X = integer_interval(0, 9);
  EXPECT_EQ(ball(X, 5, 2.0), (PointSet{4, 5, 6}));
  EXPECT_EQ(ball(X, 0, 1.0), (PointSet{0}));
}

TEST(MetricSpace, SubspaceKeepsDistancesAndIds) {
  const auto X = integer_grid(0, 4, Norm::L1);
  const PointSet pts = {0, 7, 24};
  const auto sub = X.subspace(pts);
  ASSERT_EQ(sub.size(), 3u);
  for (PointIndex i = 0; i < 3; ++i) {
    EXPECT_EQ(sub.id(i), X.id(pts[i]));
    for (PointIndex j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(sub.distance(i, j), X.distance(pts[i], pts[j]));
  }
}

TEST(MetricSpace, IdsAndBasepoint) {
  const auto X = integer_interval(-2, 2);
  EXPECT_EQ(X.index_of("-2"), 0u);
  EXPECT_FALSE(X.find("7").has_value());
  EXPECT_FALSE(X.basepoint().has_value());
  EXPECT_EQ(X.with_basepoint(2).basepoint(), std::optional<PointIndex>(2));
}

TEST(Simplex, PointsAndDistances) {
  EXPECT_THROW(SimplexPoint({0.5, 0.6}), Error);
  EXPECT_THROW(SimplexPoint({-0.1, 1.1}), Error);
  const SimplexPoint a({0.25, 0.75, 0.0});
  EXPECT_TRUE(a.on_boundary());
  EXPECT_FALSE(SimplexPoint({0.2, 0.3, 0.5}).on_boundary());
  EXPECT_DOUBLE_EQ(l1_distance(a, SimplexPoint::vertex(3, 2)), 2.0);
  EXPECT_THROW(l1_distance(a, SimplexPoint::vertex(2, 0)), Error);
}

TEST(Simplex, L1IsAMetricOnSampledPoints) {
  std::mt19937_64 rng(19);
  std::exponential_distribution<double> e(1.0);
  std::vector<SimplexPoint> pts;
  for (int i = 0; i < 25; ++i) {
    std::vector<double> c(4);
    double s = 0.0;
    for (auto& v : c) s += (v = e(rng));
    for (auto& v : c) v /= s;
    pts.emplace_back(c);
  }
  for (const auto& p : pts) {
    for (const auto& q : pts) {
      EXPECT_NEAR(l1_distance(p, q), l1_distance(q, p), 1e-15);
      for (const auto& r : pts) EXPECT_LE(l1_distance(p, r), l1_distance(p, q) + l1_distance(q, r) + 1e-12);
    }
  }
}
