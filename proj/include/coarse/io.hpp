#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "coarse/asdim.hpp"
#include "coarse/cover.hpp"
#include "coarse/point_function.hpp"

namespace coarse::io {

using Json = nlohmann::ordered_json;

/// 12 significant digits; integral values become integers, infinities "inf".
Json number(double v);
/// Accepts numbers and the strings "inf" / "-inf". Throws ParseError.
double to_double(const Json& j);

/// Point id as JSON: an integer when the id is a canonical integer.
Json point_id(const FiniteMetricSpace& space, PointIndex x);
/// Resolves an id given as a string or a number. Throws UnknownPoint.
PointIndex resolve_point(const FiniteMetricSpace& space, const Json& id);

Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// A file reference (string, relative to `base`) or an inline object.
Json resolve(const Json& ref, const std::filesystem::path& base);

/// {"points", "metric": {"matrix"} | {"graph": {"edges"}} |
/// {"coordinates": {"values", "norm", "scale"}}, "basepoint"?}.
SpacePtr parse_space(const Json& j);
Json space_json(const FiniteMetricSpace& space);

/// {"space": file or inline, "members": [[ids]], "families"?, "r"?}. With a
/// given space the "space" field may be omitted.
Cover parse_cover(const Json& j, const std::filesystem::path& base, SpacePtr space = nullptr);
ColoredCover parse_colored_cover(const Json& j, const std::filesystem::path& base, SpacePtr space = nullptr);
Json cover_json(const Cover& cover, bool embed_space = true);
Json colored_cover_json(const ColoredCover& colored, bool embed_space = true);

/// {"space", "values": {id: [coords] or number}}. Values on every point give a
/// total function; otherwise the function is partial.
struct LoadedFunction {
  SpacePtr space;
  PartialFunction partial;
  bool total = false;
  PointFunction as_total(TargetMetric metric = TargetMetric::L1) const;
};
LoadedFunction parse_function(const Json& j, const std::filesystem::path& base, SpacePtr space = nullptr);
Json function_json(const PointFunction& f, bool embed_space = true);
Json partial_function_json(const FiniteMetricSpace& space, const PartialFunction& f);

Json lebesgue_json(const FiniteMetricSpace& space, const LebesgueReport& report);
Json lipschitz_json(const FiniteMetricSpace& space, const LipschitzReport& report);

}  // namespace coarse::io
