#include "coarse/cli.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <ostream>

#include "CLI11.hpp"

#include "coarse/asdim.hpp"
#include "coarse/extension.hpp"
#include "coarse/nerve.hpp"
#include "coarse/oscillation.hpp"
#include "coarse/svg.hpp"

namespace coarse::cli {

namespace {

using io::Json;
using io::number;
namespace fs = std::filesystem;

struct Options {
  std::string space;
  std::string cover;
  std::string function;
  std::string params;
  std::string out;
  std::string plot;
  long nmax = 20;
  std::string extender = "linear";
  double epsilon = 1.0;
  double radius = 1.0;
  double beyond = 0.0;
};

struct Context {
  Options opt;
  Json params = Json::object();
  SpacePtr space;
  std::ostream* err = nullptr;
  std::vector<std::string> artifacts;
};

using Outcome = std::pair<int, Json>;

fs::path parent_of(const std::string& file) {
  const fs::path p = fs::path(file).parent_path();
  return p.empty() ? fs::path(".") : p;
}

double param(const Context& ctx, const char* key) {
  if (!ctx.params.contains(key)) throw Error(ErrorKind::InvalidArgument, std::string("missing parameter '") + key + "'");
  return io::to_double(ctx.params.at(key));
}

double param_or(const Context& ctx, const char* key, double fallback) {
  return ctx.params.contains(key) ? io::to_double(ctx.params.at(key)) : fallback;
}

std::string string_param(const Context& ctx, const char* key, const std::string& fallback) {
  if (!ctx.params.contains(key)) return fallback;
  if (!ctx.params.at(key).is_string()) throw Error(ErrorKind::InvalidArgument, std::string("'") + key + "' must be a string");
  return ctx.params.at(key).get<std::string>();
}

std::size_t count_param(const Context& ctx, const char* key, std::size_t fallback) {
  const double v = param_or(ctx, key, static_cast<double>(fallback));
  if (v < 0 || v != std::floor(v)) throw Error(ErrorKind::InvalidArgument, std::string("'") + key + "' must be a count");
  return static_cast<std::size_t>(v);
}

Cover load_cover(const Context& ctx) {
  if (ctx.opt.cover.empty()) throw Error(ErrorKind::InvalidArgument, "--cover is required");
  return io::parse_cover(io::read_file(ctx.opt.cover), parent_of(ctx.opt.cover), ctx.space);
}

ColoredCover load_colored(const Context& ctx) {
  if (ctx.opt.cover.empty()) throw Error(ErrorKind::InvalidArgument, "--cover is required");
  return io::parse_colored_cover(io::read_file(ctx.opt.cover), parent_of(ctx.opt.cover), ctx.space);
}

io::LoadedFunction load_function(const Context& ctx) {
  if (ctx.opt.function.empty()) throw Error(ErrorKind::InvalidArgument, "--function is required");
  return io::parse_function(io::read_file(ctx.opt.function), parent_of(ctx.opt.function), ctx.space);
}

TargetMetric target_metric(const Context& ctx) {
  const std::string m = string_param(ctx, "metric", "l1");
  if (m == "l1") return TargetMetric::L1;
  if (m == "euclidean" || m == "l2") return TargetMetric::Euclidean;
  if (m == "sup") return TargetMetric::Sup;
  throw Error(ErrorKind::InvalidArgument, "unknown target metric '" + m + "'");
}

void emit_plot(Context& ctx, const std::function<std::string()>& draw) {
  if (ctx.opt.plot.empty()) return;
  try {
    io::write_file(ctx.opt.plot, draw());
    ctx.artifacts.push_back(ctx.opt.plot);
  } catch (const Error& e) {
    *ctx.err << "plot skipped: " << e.what() << '\n';
  }
}

void plot_cover(Context& ctx, const Cover& cover, const std::string& title) {
  emit_plot(ctx, [&] { return svg::cover_diagram(cover, title); });
}

Json ids_json(const FiniteMetricSpace& space, const PointSet& points) {
  Json j = Json::array();
  for (PointIndex x : points) j.push_back(io::point_id(space, x));
  return j;
}

Json cert_json(const CertBundle& c) {
  return Json{{"m", c.m},
              {"delta", number(c.delta)},
              {"C", number(c.C)},
              {"identity_extension", c.identity_extension},
              {"lipschitz_g", number(c.lipschitz_g)},
              {"lipschitz_g_bound", number(c.lipschitz_g_bound)},
              {"lebesgue_u", number(c.lebesgue_u)},
              {"lebesgue_u_required", number(c.lebesgue_u_required)},
              {"case1_points", c.case1_points},
              {"case2_points", c.case2_points},
              {"refiner", c.refiner},
              {"refiner_s", number(c.refiner_s)},
              {"lebesgue_v", number(c.lebesgue_v)},
              {"multiplicity_v", c.multiplicity_v},
              {"lipschitz_phi", number(c.lipschitz_phi)},
              {"lipschitz_h", number(c.lipschitz_h)},
              {"lipschitz_h_bound", number(c.lipschitz_h_bound)},
              {"agreement", c.agreement},
              {"boundary", c.boundary},
              {"lipschitz", c.lipschitz}};
}

RefinerOracle refiner_from(const Context& ctx, const char* key, const std::string& fallback, std::size_t members,
                           std::size_t max_mult, double s, double t) {
  SearchOptions search;
  search.budget = count_param(ctx, "budget", search.budget);
  search.seed = count_param(ctx, "seed", search.seed);
  return make_refiner(string_param(ctx, key, fallback), members, max_mult, s, t, count_param(ctx, "lattice", 1),
                      search);
}

Outcome cmd_leb(Context& ctx) {
  const Cover c = load_cover(ctx);
  plot_cover(ctx, c, "cover");
  return {0, io::lebesgue_json(c.metric(), lebesgue_number(c))};
}

Outcome cmd_mult(Context& ctx) {
  const Cover c = load_cover(ctx);
  std::size_t best = 0;
  PointIndex where = 0;
  for (PointIndex x = 0; x < c.metric().size(); ++x) {
    if (c.containing(x).size() > best) {
      best = c.containing(x).size();
      where = x;
    }
  }
  plot_cover(ctx, c, "cover");
  return {0, Json{{"value", best}, {"dimension", static_cast<long>(best) - 1}, {"witness", io::point_id(c.metric(), where)}}};
}

Outcome cmd_mesh(Context& ctx) {
  const Cover c = load_cover(ctx);
  double best = 0.0;
  std::size_t member = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double d = member_diameter(c.metric(), c.member(i));
    if (d > best) {
      best = d;
      member = i;
    }
  }
  plot_cover(ctx, c, "cover");
  return {0, Json{{"value", number(best)}, {"witness", member}}};
}

Outcome cmd_nerve(Context& ctx) {
  const Cover c = load_cover(ctx);
  const NerveComplex n = nerve_of(c);
  return {0, Json{{"member_count", n.member_count},
                  {"vertices", n.vertices},
                  {"simplices", n.simplices},
                  {"dimension", n.dimension()}}};
}

Outcome cmd_barymap(Context& ctx) {
  const Cover c = load_cover(ctx);
  const PointFunction phi = barycentric_map(c);
  const double measured = lipschitz_constant(phi);
  const double bound = barycentric_lipschitz_bound(c);
  const bool ok = measured <= bound + kTolerance;
  return {ok ? 0 : 1, Json{{"function", io::function_json(phi)},
                           {"lebesgue", io::lebesgue_json(c.metric(), lebesgue_number(c))},
                           {"multiplicity", multiplicity(c)},
                           {"lipschitz", number(measured)},
                           {"bound", number(bound)},
                           {"passed", ok}}};
}

Outcome cmd_mcshane(Context& ctx) {
  const auto f = load_function(ctx);
  if (f.partial.dim != 1) throw Error(ErrorKind::DimensionMismatch, "McShane extension takes real values");
  const double lambda = param(ctx, "lambda");
  std::optional<Interval> clamp;
  if (ctx.params.contains("clamp")) {
    const Json& cl = ctx.params.at("clamp");
    if (!cl.is_array() || cl.size() != 2) throw Error(ErrorKind::InvalidArgument, "clamp is [lo, hi]");
    clamp = Interval{io::to_double(cl[0]), io::to_double(cl[1])};
  }
  const PointFunction g = mcshane_extend(f.space, f.partial.domain, f.partial.values, lambda, clamp);
  const auto lip = check_lipschitz(g, lambda);
  return {lip.satisfied ? 0 : 1,
          Json{{"function", io::function_json(g)}, {"lipschitz", io::lipschitz_json(g.metric(), lip)}}};
}

Outcome cmd_simplex_extend(Context& ctx) {
  const auto f = load_function(ctx);
  const double lambda = param(ctx, "lambda");
  const PointFunction g = simplex_extend(f.space, f.partial, lambda);
  const double bound = simplex_extension_constant(f.partial.dim) * lambda;
  const auto lip = check_lipschitz(g, bound);
  return {lip.satisfied ? 0 : 1, Json{{"function", io::function_json(g)},
                                      {"C", number(simplex_extension_constant(f.partial.dim))},
                                      {"lipschitz", io::lipschitz_json(g.metric(), lip)}}};
}

Outcome cmd_sphere_extend(Context& ctx) {
  const auto f = load_function(ctx);
  if (f.partial.dim < 2) throw Error(ErrorKind::InvalidArgument, "sphere values need at least two coordinates");
  const std::size_t m = f.partial.dim - 2;
  const double delta = param(ctx, "delta");
  const RefinerOracle refiner = refiner_from(ctx, "refiner", "search", m + 2, m + 1, param_or(ctx, "refiner_s", 1.0),
                                             sphere_lebesgue_bound(m, delta));
  const SphereExtension res = sphere_extend(f.space, f.partial, delta, refiner);
  Json report{{"identity_extension", res.cert.identity_extension}};
  if (res.cert.identity_extension) report["note"] = "identity extension";
  report["cert"] = cert_json(res.cert);
  report["h"] = io::function_json(res.h);
  report["u"] = io::cover_json(res.u, false);
  report["v"] = io::cover_json(res.v, false);
  return {0, report};
}

Outcome cmd_refine_via_extension(Context& ctx) {
  const Cover c = load_cover(ctx);
  if (c.size() < 2) throw Error(ErrorKind::InvalidArgument, "need a cover with at least two members");
  const std::size_t m = c.size() - 2;
  const double delta = param(ctx, "delta");
  const RefinerOracle inner = refiner_from(ctx, "refiner", "search", m + 2, m + 1, param_or(ctx, "refiner_s", 1.0),
                                           sphere_lebesgue_bound(m, delta));
  const auto res = refine_via_extension(c, sphere_extender(inner, delta), param(ctx, "epsilon"));
  plot_cover(ctx, res.refinement, "refinement");
  return {0, Json{{"refinement", io::cover_json(res.refinement)},
                  {"boundary_points", ids_json(c.metric(), res.boundary_points)},
                  {"s", number(res.s)},
                  {"lebesgue", io::lebesgue_json(c.metric(), res.lebesgue)},
                  {"multiplicity", res.multiplicity}}};
}

Outcome cmd_promote(Context& ctx) {
  const Cover c = load_cover(ctx);
  if (c.size() < 3) throw Error(ErrorKind::InvalidArgument, "promotion needs a cover with at least three members");
  const RefinerOracle inner =
      refiner_from(ctx, "inner", "search", c.size() - 1, c.size() - 2, param(ctx, "q"), param(ctx, "t"));
  const RefinerOracle outer = promote_refiner(inner);
  const auto out = outer.refine(c);
  if (!out) return {1, Json{{"refiner", outer.name}, {"found", false}}};
  const auto check = check_refiner_output(c, *out, outer);
  plot_cover(ctx, *out, "promoted refinement");
  return {check.ok ? 0 : 1, Json{{"refiner", outer.name},
                                 {"refinement", io::cover_json(*out)},
                                 {"lebesgue", io::lebesgue_json(c.metric(), check.lebesgue)},
                                 {"multiplicity", check.multiplicity},
                                 {"passed", check.ok}}};
}

Outcome cmd_reduce_dim(Context& ctx) {
  const ColoredCover colored = load_colored(ctx);
  const std::size_t k = colored.family_count();
  if (k < 2) throw Error(ErrorKind::FamilyCountMismatch, "dimension reduction needs at least two families");
  const RefinerOracle refiner = refiner_from(ctx, "refiner", "search", k, k - 1, param(ctx, "s"), param(ctx, "t"));
  const auto res = reduce_dimension(colored, refiner);
  plot_cover(ctx, res.cover, "reduced cover");
  return {0, Json{{"cover", io::cover_json(res.cover)},
                  {"lebesgue", io::lebesgue_json(res.cover.metric(), res.lebesgue)},
                  {"multiplicity", res.multiplicity},
                  {"dimension", static_cast<long>(res.multiplicity) - 1},
                  {"mesh", number(res.mesh)},
                  {"input_mesh", number(res.input_mesh)}}};
}

Outcome cmd_ostrand_verify(Context& ctx) {
  const ColoredCover colored = load_colored(ctx);
  const double r = param_or(ctx, "r", colored.r());
  const std::size_t n = count_param(ctx, "n", colored.family_count() == 0 ? 0 : colored.family_count() - 1);
  const auto rep = verify_ostrand(colored, r, n);
  const auto& X = colored.flat().metric();
  Json families = Json::array();
  for (const auto& d : rep.disjointness) {
    Json f{{"disjoint", d.disjoint}};
    if (d.members) f["members"] = {d.members->first, d.members->second};
    if (d.points) f["points"] = {io::point_id(X, d.points->first), io::point_id(X, d.points->second)};
    families.push_back(std::move(f));
  }
  plot_cover(ctx, colored.flat(), "colored cover");
  return {rep.verdict ? 0 : 1, Json{{"r", number(r)},
                                    {"n", n},
                                    {"verdict", rep.verdict},
                                    {"families", std::move(families)},
                                    {"lebesgue", io::lebesgue_json(X, rep.lebesgue)},
                                    {"mesh", number(rep.mesh)}}};
}

Outcome cmd_brick(Context& ctx) {
  const std::size_t lattice = count_param(ctx, "lattice", ctx.space ? ctx.space->coordinate_dim() : 1);
  const long L = static_cast<long>(count_param(ctx, "L", 1));
  std::optional<ColoredCover> colored;
  if (ctx.space) {
    colored = lattice == 2 ? brick_cover_Z2(ctx.space, L) : brick_cover_Z(ctx.space, L);
  } else {
    const long first = static_cast<long>(param(ctx, "first"));
    const long last = static_cast<long>(param(ctx, "last"));
    colored = lattice == 2 ? brick_cover_Z2(first, last, L) : brick_cover_Z(first, last, L);
  }
  Json report = io::colored_cover_json(*colored);
  report["lebesgue"] = io::lebesgue_json(colored->flat().metric(), lebesgue_number(colored->flat()));
  report["multiplicity"] = multiplicity(colored->flat());
  report["mesh"] = number(mesh(colored->flat()));
  plot_cover(ctx, colored->flat(), "bricks");
  return {0, report};
}

Outcome cmd_search_refine(Context& ctx) {
  const Cover c = load_cover(ctx);
  SearchOptions options;
  options.budget = count_param(ctx, "budget", options.budget);
  options.seed = count_param(ctx, "seed", options.seed);
  const auto out = search_refinement(c, param(ctx, "s"), count_param(ctx, "multiplicity", c.size() - 1), options);
  if (!out) return {1, Json{{"found", false}}};
  plot_cover(ctx, *out, "refinement");
  return {0, Json{{"found", true},
                  {"refinement", io::cover_json(*out)},
                  {"lebesgue", io::lebesgue_json(c.metric(), lebesgue_number(*out))},
                  {"multiplicity", multiplicity(*out)}}};
}

std::vector<double> sample_ns(const Context& ctx, double upto) {
  std::vector<double> ns;
  if (ctx.params.contains("Ns")) {
    for (const auto& v : ctx.params.at("Ns")) ns.push_back(io::to_double(v));
    return ns;
  }
  const double last = param_or(ctx, "N_max", upto);
  const double step = param_or(ctx, "N_step", std::max(1.0, std::ceil(last / 50.0)));
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "N_step must be positive");
  for (double n = 0.0; n <= last + kTolerance; n += step) ns.push_back(n);
  return ns;
}

double radius_from_basepoint(const FiniteMetricSpace& X) {
  if (!X.basepoint()) throw Error(ErrorKind::NoBasepoint, "the space has no basepoint");
  double r = 0.0;
  for (PointIndex x = 0; x < X.size(); ++x) r = std::max(r, X.distance(*X.basepoint(), x));
  return r;
}

Json profile_json(const VariationProfile& p) {
  Json entries = Json::array();
  for (const auto& [n, v] : p.entries) entries.push_back({number(n), number(v)});
  return Json{{"R", number(p.R)}, {"profile", std::move(entries)}};
}

void plot_profile(Context& ctx, const VariationProfile& p) {
  emit_plot(ctx, [&] { return svg::line_chart(p.entries, "variation profile, R = " + std::to_string(p.R), "N", "sup |g(x) - g(y)|"); });
}

Outcome cmd_so_profile(Context& ctx) {
  const auto f = load_function(ctx);
  const double R = param(ctx, "R");
  const auto ns = sample_ns(ctx, radius_from_basepoint(*f.space));
  const VariationProfile p = f.total ? variation_profile(f.as_total(target_metric(ctx)), R, ns)
                                     : variation_profile(*f.space, f.partial, R, ns, target_metric(ctx));
  plot_profile(ctx, p);
  return {0, profile_json(p)};
}

Outcome cmd_check_lip(Context& ctx) {
  const auto f = load_function(ctx);
  const double lambda = param(ctx, "lambda");
  const double c = param_or(ctx, "c", 0.0);
  const LipschitzReport rep = f.total ? check_lipschitz(f.as_total(target_metric(ctx)), lambda, c)
                                      : check_lipschitz(*f.space, f.partial, lambda, c, target_metric(ctx));
  return {rep.satisfied ? 0 : 1, io::lipschitz_json(*f.space, rep)};
}

Outcome cmd_counterexample(Context& ctx) {
  const auto& o = ctx.opt;
  const SquaresInstance inst = squares_instance(o.nmax);
  std::optional<PointFunction> g;
  if (o.extender == "linear") {
    g = linear_extension(inst);
  } else if (o.extender == "nearest") {
    g = nearest_square_extension(inst);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown extender '" + o.extender + "' (linear, nearest)");
  }
  const auto& X = *inst.space;
  const auto hit = oscillation_witness(*g, o.epsilon, o.radius, o.beyond);
  Json report{{"nmax", o.nmax},   {"extender", o.extender}, {"epsilon", number(o.epsilon)},
              {"radius", number(o.radius)}, {"beyond", number(o.beyond)}, {"found", hit.has_value()}};
  if (hit) {
    report["witness"] = {io::point_id(X, hit->first), io::point_id(X, hit->second)};
    report["distance"] = number(X.distance(hit->first, hit->second));
    report["image_distance"] = number(g->target_distance(hit->first, hit->second));
  }
  if (!o.plot.empty()) {
    std::vector<double> ns;
    const double top = static_cast<double>(o.nmax * o.nmax);
    for (double n = 0.0; n <= top; n += std::max(1.0, std::floor(top / 100.0))) ns.push_back(n);
    plot_profile(ctx, variation_profile(*g, o.radius, ns));
  }
  return {hit ? 0 : 1, report};
}

Outcome cmd_annulus_extend(Context& ctx) {
  const auto f = load_function(ctx);
  if (f.partial.dim != 1) throw Error(ErrorKind::DimensionMismatch, "annulus extension takes real values");
  AnnulusParams p;
  p.R = param(ctx, "R");
  p.mu = param(ctx, "mu");
  p.S = param(ctx, "S");
  p.epsilon = param(ctx, "epsilon");
  p.M = param(ctx, "M");
  if (ctx.params.contains("lambda")) p.lambda = param(ctx, "lambda");
  const AnnulusExtension res = annulus_extend(f.space, f.partial, p, mcshane_bounded_extender());
  const auto cont = continuity_check(res.g, p.epsilon, p.M);
  Json report{{"function", io::function_json(res.g)},
              {"delta", number(res.delta)},
              {"annuli", res.annuli},
              {"continuous", cont.continuous}};
  if (cont.witness) report["witness"] = {io::point_id(*f.space, cont.witness->first), io::point_id(*f.space, cont.witness->second)};
  return {cont.continuous ? 0 : 1, report};
}

const std::map<std::string, std::pair<const char*, Outcome (*)(Context&)>>& commands() {
  static const std::map<std::string, std::pair<const char*, Outcome (*)(Context&)>> table = {
      {"leb", {"Lebesgue number of a cover", cmd_leb}},
      {"mult", {"multiplicity of a cover", cmd_mult}},
      {"mesh", {"mesh of a cover", cmd_mesh}},
      {"nerve", {"nerve of a cover", cmd_nerve}},
      {"barymap", {"barycentric map and its Lipschitz bound", cmd_barymap}},
      {"mcshane", {"McShane extension of a real function (params: lambda, clamp?)", cmd_mcshane}},
      {"simplex-extend", {"extension of a simplex-valued function (params: lambda)", cmd_simplex_extend}},
      {"sphere-extend", {"extension into the simplex boundary (params: delta, refiner?, refiner_s?)", cmd_sphere_extend}},
      {"refine-via-extension", {"cover refinement through a sphere extension (params: epsilon, delta, refiner?, refiner_s?)", cmd_refine_via_extension}},
      {"promote", {"run a promoted refiner (params: q, t, inner?)", cmd_promote}},
      {"reduce-dim", {"dimension reduction of a colored cover (params: s, t, refiner?)", cmd_reduce_dim}},
      {"ostrand-verify", {"check a colored cover (params: r?, n?)", cmd_ostrand_verify}},
      {"brick", {"brick covers of Z and Z^2 (params: L, lattice, first, last)", cmd_brick}},
      {"search-refine", {"search for a refinement (params: s, multiplicity?, budget?, seed?)", cmd_search_refine}},
      {"so-profile", {"variation profile (params: R, Ns | N_max, N_step)", cmd_so_profile}},
      {"counterexample", {"oscillation witness for the squares instance", cmd_counterexample}},
      {"check-lip", {"affine Lipschitz check (params: lambda, c?, metric?)", cmd_check_lip}},
      {"annulus-extend", {"annulus pasting extension (params: R, mu, S, epsilon, M, lambda?)", cmd_annulus_extend}},
  };
  return table;
}

Json error_report(const Error& e, const FiniteMetricSpace* space) {
  Json j{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  j["witness_indices"] = e.witness();
  if (space) {
    Json ids = Json::array();
    for (std::size_t w : e.witness()) {
      if (w < space->size()) ids.push_back(io::point_id(*space, w));
    }
    if (ids.size() == e.witness().size()) j["witness"] = std::move(ids);
  }
  return j;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coarse geometry on finite metric spaces", "coarse-ext"};
  app.require_subcommand(1);
  Context ctx;
  ctx.err = &err;
  std::map<CLI::App*, std::string> names;
  for (const auto& [name, entry] : commands()) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--space", ctx.opt.space, "space JSON file");
    sub->add_option("--cover", ctx.opt.cover, "cover JSON file");
    sub->add_option("--function", ctx.opt.function, "function JSON file");
    sub->add_option("--params", ctx.opt.params, "parameters: JSON file or inline object");
    sub->add_option("--out", ctx.opt.out, "write the report here instead of stdout");
    sub->add_option("--plot", ctx.opt.plot, "write an SVG plot here");
    if (name == "counterexample") {
      sub->add_option("--nmax", ctx.opt.nmax, "largest square root")->capture_default_str();
      sub->add_option("--extender", ctx.opt.extender, "linear or nearest")->capture_default_str();
      sub->add_option("--epsilon", ctx.opt.epsilon)->capture_default_str();
      sub->add_option("--radius", ctx.opt.radius)->capture_default_str();
      sub->add_option("--beyond", ctx.opt.beyond, "distance from the basepoint")->capture_default_str();
    }
    names[sub] = name;
  }

  CommandResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.exit_code = code == 0 ? 0 : 2;
    return result;
  }

  std::string chosen;
  for (const auto& [sub, name] : names) {
    if (sub->parsed()) chosen = name;
  }

  const FiniteMetricSpace* space_for_errors = nullptr;
  try {
    try {
      if (!ctx.opt.params.empty()) {
        const auto first = ctx.opt.params.find_first_not_of(" \t\n");
        if (first != std::string::npos && ctx.opt.params[first] == '{') {
          ctx.params = Json::parse(ctx.opt.params);
        } else {
          ctx.params = io::read_file(ctx.opt.params);
        }
        if (!ctx.params.is_object()) throw Error(ErrorKind::ParseError, "--params must be a JSON object");
      }
      if (!ctx.opt.space.empty()) {
        ctx.space = io::parse_space(io::read_file(ctx.opt.space));
        space_for_errors = ctx.space.get();
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
    auto [code, report] = commands().at(chosen).second(ctx);
    result.exit_code = code;
    result.report = std::move(report);
  } catch (const Error& e) {
    result.exit_code = is_input_error(e.kind()) ? 2 : 1;
    result.report = error_report(e, space_for_errors);
    err << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    result.exit_code = 2;
    result.report = Json{{"error", "ParseError"}, {"message", e.what()}};
    err << e.what() << '\n';
  }

  const std::string text = result.report.dump(2) + "\n";
  if (ctx.opt.out.empty()) {
    out << text;
  } else {
    try {
      io::write_file(ctx.opt.out, text);
      result.artifacts.push_back(ctx.opt.out);
    } catch (const Error& e) {
      err << e.what() << '\n';
      result.exit_code = 2;
    }
  }
  result.artifacts.insert(result.artifacts.end(), ctx.artifacts.begin(), ctx.artifacts.end());
  return result;
}

}  // namespace coarse::cli
