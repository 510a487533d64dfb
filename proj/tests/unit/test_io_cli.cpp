#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "coarse/cli.hpp"
#include "coarse/io.hpp"
#include "oracles.hpp"

using namespace coarse;
using io::Json;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("coarse_test_" + std::to_string(std::random_device{}()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const Json& j) const {
    const auto p = path_ / name;
    std::ofstream(p) << j.dump(2);
    return p.string();
  }
  fs::path path() const { return path_; }

 private:
  fs::path path_;
};

struct Run {
  int code;
  Json report;
  std::string out;
};

Run cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const auto r = cli::run(args, out, err);
  return {r.exit_code, r.report, out.str()};
}

}  // namespace

TEST(Json, NumberFormatting) {
  EXPECT_EQ(io::number(2.0).dump(), "2");
  EXPECT_EQ(io::number(-7.0).dump(), "-7");
  EXPECT_EQ(io::number(0.1 + 0.2).dump(), "0.3");
  EXPECT_EQ(io::number(kInfinity).dump(), "\"inf\"");
  EXPECT_EQ(io::number(-kInfinity).dump(), "\"-inf\"");
  EXPECT_EQ(io::to_double(Json("inf")), kInfinity);
  EXPECT_EQ(io::to_double(Json(2.5)), 2.5);
  EXPECT_THROW(io::to_double(Json("many")), Error);
}

TEST(Json, SpaceRoundTrips) {
  std::mt19937_64 rng(97);
  std::vector<FiniteMetricSpace> spaces = {integer_interval(-3, 7), integer_grid(0, 3, Norm::L1),
                                           path_graph(6, 2.0), oracle::random_metric(7, rng),
                                           integer_interval(0, 5).with_basepoint(2)};
  for (const auto& X : spaces) {
    const auto Y = io::parse_space(Json::parse(io::space_json(X).dump()));
    ASSERT_EQ(Y->size(), X.size());
    EXPECT_EQ(Y->basepoint(), X.basepoint());
    for (PointIndex a = 0; a < X.size(); ++a) {
      EXPECT_EQ(Y->id(a), X.id(a));
      for (PointIndex b = 0; b < X.size(); ++b) EXPECT_NEAR(Y->distance(a, b), X.distance(a, b), 1e-9);
    }
  }
}

TEST(Json, GraphSpaceUsesShortestPaths) {
  const Json j = Json::parse(R"({"points": ["a", "b", "c"],
    "metric": {"graph": {"edges": [["a", "b", 1], ["b", "c", 2], ["a", "c", 5]]}}})");
  const auto X = io::parse_space(j);
  EXPECT_EQ(X->distance(0, 2), 3.0);
  EXPECT_EQ(io::point_id(*X, 1), Json("b"));
}

TEST(Json, MalformedSpacesAreRejected) {
  EXPECT_THROW(io::parse_space(Json::parse(R"({"points": [0, 1], "metric": {"matrix": [[0, 1], [2, 0]]}})")), Error);
  EXPECT_THROW(io::parse_space(Json::parse(R"({"points": [0, 1]})")), Error);
  EXPECT_THROW(io::parse_space(Json::parse(R"({"points": [0, 0], "metric": {"matrix": [[0, 1], [1, 0]]}})")), Error);
}

TEST(Json, CoverAndFunctionRoundTrips) {
  const auto X = share(integer_interval(0, 9));
  const Cover c(X, {{0, 1, 2, 3, 4, 5, 6}, {4, 5, 6, 7, 8, 9}});
  const Cover d = io::parse_cover(Json::parse(io::cover_json(c).dump()), ".");
  EXPECT_EQ(d.members(), c.members());
  EXPECT_EQ(lebesgue_number(d).value, 2.0);

  const auto cc = brick_cover_Z(0, 30, 2);
  const auto cd = io::parse_colored_cover(Json::parse(io::colored_cover_json(cc).dump()), ".");
  EXPECT_EQ(cd.family_count(), cc.family_count());
  EXPECT_EQ(cd.flat().members(), cc.flat().members());

  const auto f = PointFunction::simplex(X, 2, std::vector<double>(20, 0.5));
  const auto g = io::parse_function(Json::parse(io::function_json(f).dump()), ".");
  EXPECT_TRUE(g.total);
  EXPECT_EQ(g.partial.values, f.values());

  const PartialFunction p{{1, 4}, 1, {0.25, 0.75}};
  Json pj = io::partial_function_json(*X, p);
  pj["space"] = io::space_json(*X);
  const auto q = io::parse_function(pj, ".");
  EXPECT_FALSE(q.total);
  EXPECT_EQ(q.partial.domain, p.domain);
  EXPECT_EQ(q.partial.values, p.values);
}

TEST(Cli, LebesgueOfAFile) {
  TempDir tmp;
  const auto X = integer_interval(0, 9);
  const auto cover = tmp.write("c.json", io::cover_json(Cover(share(X), {{0, 1, 2, 3, 4, 5, 6}, {4, 5, 6, 7, 8, 9}})));
  const auto r = cli_run({"leb", "--cover", cover});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report["value"], 2);
  EXPECT_EQ(r.report["witness"], 5);
  EXPECT_EQ(Json::parse(r.out), r.report);
  // Same input, same bytes.
  EXPECT_EQ(cli_run({"leb", "--cover", cover}).out, r.out);
}

TEST(Cli, ExitCodes) {
  TempDir tmp;
  EXPECT_EQ(cli_run({"no-such-command"}).code, 2);
  EXPECT_EQ(cli_run({"leb"}).code, 2);
  EXPECT_EQ(cli_run({"leb", "--cover", (tmp.path() / "missing.json").string()}).code, 2);
  const auto bad = tmp.write("bad.json", Json::parse(R"({"space": {"points": [0, 1, 2],
    "metric": {"matrix": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]}}, "members": [[0], [2]]})"));
  const auto r = cli_run({"leb", "--cover", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.report["error"], "NotACover");
  EXPECT_EQ(r.report["witness_indices"], Json::array({1}));

  // A refinement that cannot exist is a verification failure, not an input error.
  const auto X = integer_interval(0, 9);
  const auto c = tmp.write("c.json", io::cover_json(Cover(share(X), {{0, 1, 2, 3, 4, 5, 6}, {4, 5, 6, 7, 8, 9}})));
  EXPECT_EQ(cli_run({"search-refine", "--cover", c, "--params", R"({"s": 3, "multiplicity": 1})"}).code, 1);
  EXPECT_EQ(cli_run({"search-refine", "--cover", c, "--params", R"({"s": 1, "multiplicity": 1})"}).code, 0);
}

TEST(Cli, CounterexampleFindsAWitness) {
  const auto r = cli_run({"counterexample", "--nmax", "20", "--extender", "linear", "--epsilon", "1", "--radius", "1",
                          "--beyond", "300"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report["witness"], Json::array({300, 301}));
}

TEST(Cli, SphereExtendReportsIdentityCase) {
  TempDir tmp;
  const auto X = share(path_graph(12));
  std::vector<double> v;
  for (PointIndex x = 0; x < 12; ++x) v.insert(v.end(), {1.0, 0.0});
  const auto f = tmp.write("f.json", io::function_json(PointFunction::simplex(X, 2, v)));
  const auto r = cli_run({"sphere-extend", "--function", f, "--params", R"({"delta": 0.01})"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report["identity_extension"], true);
  EXPECT_EQ(r.report["note"], "identity extension");
}

TEST(Cli, OutFileHoldsTheReport) {
  TempDir tmp;
  const auto out = (tmp.path() / "brick.json").string();
  const auto r = cli_run({"brick", "--params", R"({"L": 2, "lattice": 1, "first": 0, "last": 40})", "--out", out});
  EXPECT_EQ(r.code, 0);
  const Json written = io::read_file(out);
  EXPECT_EQ(written, r.report);
  const auto cc = io::parse_colored_cover(written.contains("cover") ? written["cover"] : written, tmp.path());
  EXPECT_TRUE(verify_ostrand(cc, 2.0, 1).verdict);
}
