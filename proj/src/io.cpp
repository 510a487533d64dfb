#include "coarse/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace coarse::io {

namespace {

std::string id_string(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
    return j.dump();
  }
  throw Error(ErrorKind::ParseError, "point ids must be strings or numbers, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

Norm parse_norm(const Json& j) {
  const std::string s = j.get<std::string>();
  if (s == "sup" || s == "linf") return Norm::Sup;
  if (s == "l1") return Norm::L1;
  if (s == "l2" || s == "euclidean") return Norm::L2;
  throw Error(ErrorKind::ParseError, "unknown norm '" + s + "'");
}

const char* norm_name(Norm n) {
  switch (n) {
    case Norm::Sup: return "sup";
    case Norm::L1: return "l1";
    case Norm::L2: return "l2";
  }
  return "sup";
}

SpacePtr space_of(const Json& j, const std::filesystem::path& base, SpacePtr given) {
  if (j.is_object() && j.contains("space")) {
    SpacePtr parsed = parse_space(resolve(j.at("space"), base));
    if (given && !(*given == *parsed)) throw Error(ErrorKind::SpaceMismatch, "the embedded space differs from --space");
    return given ? given : parsed;
  }
  if (!given) throw Error(ErrorKind::ParseError, "no space given");
  return given;
}

std::vector<PointSet> parse_members(const FiniteMetricSpace& space, const Json& j) {
  std::vector<PointSet> members;
  for (const auto& m : j) {
    PointSet set;
    for (const auto& id : m) set.push_back(resolve_point(space, id));
    members.push_back(std::move(set));
  }
  return members;
}

}  // namespace

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == std::floor(v) && std::abs(v) < 1e15) return static_cast<long long>(v);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

double to_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  throw Error(ErrorKind::ParseError, "expected a number, got " + j.dump());
}

Json point_id(const FiniteMetricSpace& space, PointIndex x) {
  const std::string& id = space.id(x);
  if (space.numeric_ids()) return std::stoll(id);
  return id;
}

PointIndex resolve_point(const FiniteMetricSpace& space, const Json& id) {
  const std::string s = id_string(id);
  if (auto p = space.find(s)) return *p;
  throw Error(ErrorKind::UnknownPoint, "unknown point '" + s + "'");
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
}

Json resolve(const Json& ref, const std::filesystem::path& base) {
  if (ref.is_string()) {
    std::filesystem::path p = ref.get<std::string>();
    if (p.is_relative()) p = base / p;
    return read_file(p);
  }
  if (ref.is_object()) return ref;
  throw Error(ErrorKind::ParseError, "expected a file name or an inline object");
}

SpacePtr parse_space(const Json& j) {
  try {
    std::vector<std::string> ids;
    for (const auto& p : field(j, "points")) ids.push_back(id_string(p));
    const std::size_t n = ids.size();
    std::optional<PointIndex> basepoint;
    if (j.contains("basepoint") && !j.at("basepoint").is_null()) {
      const std::string b = id_string(j.at("basepoint"));
      const auto it = std::find(ids.begin(), ids.end(), b);
      if (it == ids.end()) throw Error(ErrorKind::UnknownPoint, "unknown basepoint '" + b + "'");
      basepoint = static_cast<PointIndex>(it - ids.begin());
    }
    const Json& metric = field(j, "metric");
    if (metric.contains("matrix")) {
      std::vector<std::vector<double>> rows;
      for (const auto& row : metric.at("matrix")) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(to_double(v));
        rows.push_back(std::move(r));
      }
      if (rows.size() != n) throw Error(ErrorKind::NonSquareMatrix, "matrix size differs from the point count");
      return share(FiniteMetricSpace::from_distance_matrix(rows, std::move(ids), basepoint));
    }
    if (metric.contains("graph")) {
      std::unordered_map<std::string, PointIndex> index;
      for (PointIndex i = 0; i < n; ++i) index.emplace(ids[i], i);
      std::vector<WeightedEdge> edges;
      for (const auto& e : field(metric.at("graph"), "edges")) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3) throw Error(ErrorKind::ParseError, "edges are [u, v, w]");
        const auto u = index.find(id_string(e[0]));
        const auto v = index.find(id_string(e[1]));
        if (u == index.end() || v == index.end()) throw Error(ErrorKind::UnknownPoint, "edge " + e.dump());
        edges.push_back({u->second, v->second, e.size() == 3 ? to_double(e[2]) : 1.0});
      }
      return share(FiniteMetricSpace::from_graph(n, edges, std::move(ids), basepoint));
    }
    if (metric.contains("coordinates")) {
      const Json& c = metric.at("coordinates");
      const Json& values = field(c, "values");
      if (values.size() != n) throw Error(ErrorKind::DimensionMismatch, "one coordinate row per point expected");
      const std::size_t dim = n == 0 ? 1 : values.at(0).size();
      std::vector<double> coords;
      for (const auto& row : values) {
        if (row.size() != dim) throw Error(ErrorKind::DimensionMismatch, "coordinate rows differ in length");
        for (const auto& v : row) coords.push_back(to_double(v));
      }
      const Norm norm = c.contains("norm") ? parse_norm(c.at("norm")) : Norm::Sup;
      const double scale = c.contains("scale") ? to_double(c.at("scale")) : 1.0;
      return share(FiniteMetricSpace::from_coordinates(dim, std::move(coords), norm, scale, std::move(ids), basepoint));
    }
    throw Error(ErrorKind::ParseError, "metric needs 'matrix', 'graph' or 'coordinates'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("space: ") + e.what());
  }
}

Json space_json(const FiniteMetricSpace& space) {
  Json j;
  Json points = Json::array();
  for (PointIndex x = 0; x < space.size(); ++x) points.push_back(point_id(space, x));
  j["points"] = std::move(points);
  if (space.is_dense()) {
    Json rows = Json::array();
    for (PointIndex x = 0; x < space.size(); ++x) {
      Json row = Json::array();
      for (PointIndex y = 0; y < space.size(); ++y) row.push_back(number(space.distance(x, y)));
      rows.push_back(std::move(row));
    }
    j["metric"] = {{"matrix", std::move(rows)}};
  } else {
    Json values = Json::array();
    for (PointIndex x = 0; x < space.size(); ++x) {
      Json row = Json::array();
      for (double c : space.coordinates_of(x)) row.push_back(number(c));
      values.push_back(std::move(row));
    }
    j["metric"] = {{"coordinates", {{"values", std::move(values)}, {"norm", norm_name(space.norm())},
                                    {"scale", number(space.scale())}}}};
  }
  if (space.basepoint()) j["basepoint"] = point_id(space, *space.basepoint());
  return j;
}

Cover parse_cover(const Json& j, const std::filesystem::path& base, SpacePtr space) {
  try {
    space = space_of(j, base, std::move(space));
    return Cover(space, parse_members(*space, field(j, "members")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("cover: ") + e.what());
  }
}

ColoredCover parse_colored_cover(const Json& j, const std::filesystem::path& base, SpacePtr space) {
  try {
    Cover flat = parse_cover(j, base, std::move(space));
    std::vector<std::vector<std::size_t>> families;
    for (const auto& f : field(j, "families")) families.push_back(f.get<std::vector<std::size_t>>());
    const double r = j.contains("r") ? to_double(j.at("r")) : 0.0;
    return ColoredCover(std::move(flat), std::move(families), r);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("colored cover: ") + e.what());
  }
}

Json cover_json(const Cover& cover, bool embed_space) {
  Json j;
  if (embed_space) j["space"] = space_json(cover.metric());
  Json members = Json::array();
  for (const auto& m : cover.members()) {
    Json ids = Json::array();
    for (PointIndex x : m) ids.push_back(point_id(cover.metric(), x));
    members.push_back(std::move(ids));
  }
  j["members"] = std::move(members);
  return j;
}

Json colored_cover_json(const ColoredCover& colored, bool embed_space) {
  Json j = cover_json(colored.flat(), embed_space);
  j["families"] = colored.families();
  j["r"] = number(colored.r());
  return j;
}

PointFunction LoadedFunction::as_total(TargetMetric metric) const {
  if (!total) throw Error(ErrorKind::InvalidArgument, "the function is not defined on every point");
  std::vector<double> values(space->size() * partial.dim);
  for (std::size_t a = 0; a < partial.domain.size(); ++a) {
    const auto row = partial.row(a);
    std::copy(row.begin(), row.end(), values.begin() + static_cast<long>(partial.domain[a] * partial.dim));
  }
  return PointFunction(space, partial.dim, std::move(values), metric);
}

LoadedFunction parse_function(const Json& j, const std::filesystem::path& base, SpacePtr space) {
  try {
    LoadedFunction out;
    out.space = space_of(j, base, std::move(space));
    const Json& values = field(j, "values");
    if (!values.is_object()) throw Error(ErrorKind::ParseError, "'values' must map point ids to values");
    std::vector<std::pair<PointIndex, std::vector<double>>> rows;
    for (const auto& [key, v] : values.items()) {
      std::vector<double> row;
      if (v.is_array()) {
        for (const auto& c : v) row.push_back(to_double(c));
      } else {
        row.push_back(to_double(v));
      }
      rows.emplace_back(resolve_point(*out.space, Json(key)), std::move(row));
    }
    if (rows.empty()) throw Error(ErrorKind::EmptyA, "the function has no values");
    std::sort(rows.begin(), rows.end());
    out.partial.dim = rows.front().second.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && rows[i].first == rows[i - 1].first) {
        throw Error(ErrorKind::InvalidArgument, "duplicate value for a point", {rows[i].first});
      }
      if (rows[i].second.size() != out.partial.dim) {
        throw Error(ErrorKind::DimensionMismatch, "value rows differ in length", {rows[i].first});
      }
      out.partial.domain.push_back(rows[i].first);
      out.partial.values.insert(out.partial.values.end(), rows[i].second.begin(), rows[i].second.end());
    }
    out.total = out.partial.domain.size() == out.space->size();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("function: ") + e.what());
  }
}

Json function_json(const PointFunction& f, bool embed_space) {
  std::vector<PointIndex> all(f.metric().size());
  for (PointIndex x = 0; x < all.size(); ++x) all[x] = x;
  Json j = partial_function_json(f.metric(), PartialFunction::restrict(f, all));
  if (!embed_space) j.erase("space");
  return j;
}

Json partial_function_json(const FiniteMetricSpace& space, const PartialFunction& f) {
  Json j;
  j["space"] = space_json(space);
  Json values = Json::object();
  for (std::size_t a = 0; a < f.domain.size(); ++a) {
    const auto row = f.row(a);
    Json v;
    if (f.dim == 1) {
      v = number(row[0]);
    } else {
      v = Json::array();
      for (double c : row) v.push_back(number(c));
    }
    values[space.id(f.domain[a])] = std::move(v);
  }
  j["values"] = std::move(values);
  return j;
}

Json lebesgue_json(const FiniteMetricSpace& space, const LebesgueReport& report) {
  Json j;
  j["value"] = number(report.value);
  j["witness"] = report.critical_point ? point_id(space, *report.critical_point) : Json(nullptr);
  return j;
}

Json lipschitz_json(const FiniteMetricSpace& space, const LipschitzReport& report) {
  Json j;
  j["lambda"] = number(report.lambda);
  j["c"] = number(report.c);
  j["satisfied"] = report.satisfied;
  j["worst_ratio"] = number(report.worst_ratio);
  if (report.worst_pair) {
    j["worst_pair"] = {point_id(space, report.worst_pair->first), point_id(space, report.worst_pair->second)};
  } else {
    j["worst_pair"] = nullptr;
  }
  return j;
}

}  // namespace coarse::io
