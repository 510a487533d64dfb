#include "coarse/asdim.hpp"

#include <algorithm>
#include <cmath>

#include "nearest.hpp"

namespace coarse {

OstrandReport verify_ostrand(const ColoredCover& colored, double r, std::size_t n) {
  if (colored.family_count() != n + 1) {
    throw Error(ErrorKind::FamilyCountMismatch, "expected " + std::to_string(n + 1) + " families, got " +
                                                    std::to_string(colored.family_count()));
  }
  OstrandReport report;
  report.r = r;
  report.families_checked = colored.family_count();
  bool ok = true;
  for (std::size_t f = 0; f < colored.family_count(); ++f) {
    const auto members = colored.family_members(f);
    report.disjointness.push_back(is_r_disjoint(colored.flat().metric(), members, r));
    ok = ok && report.disjointness.back().disjoint;
  }
  report.lebesgue = lebesgue_number(colored.flat());
  report.mesh = mesh(colored.flat());
  report.verdict = ok && report.lebesgue.value >= r - kTolerance && std::isfinite(report.mesh);
  return report;
}

Cover colored_to_plain(const ColoredCover& colored) {
  std::vector<PointSet> members(colored.family_count());
  for (std::size_t f = 0; f < colored.family_count(); ++f) {
    for (std::size_t m : colored.family(f)) {
      const auto& pts = colored.flat().member(m);
      members[f].insert(members[f].end(), pts.begin(), pts.end());
    }
  }
  return Cover(colored.space(), std::move(members));
}

DimensionReduction reduce_dimension(const ColoredCover& colored, const RefinerOracle& refiner) {
  if (colored.family_count() < 2) {
    throw Error(ErrorKind::FamilyCountMismatch, "dimension reduction needs at least two families");
  }
  const std::size_t n = colored.family_count() - 2;
  const double s = refiner.s;
  const double t = refiner.t;
  if (s > t / 2.0 + kTolerance) {
    throw Error(ErrorKind::PreconditionViolated, "need s <= t/2 (s = " + std::to_string(s) +
                                                     ", t = " + std::to_string(t) + ")");
  }
  const auto ostrand = verify_ostrand(colored, t, n + 1);
  if (!ostrand.verdict) {
    throw Error(ErrorKind::OstrandFailed, "the colored cover is not an Ostrand witness at scale t = " +
                                              std::to_string(t));
  }
  Cover plain = colored_to_plain(colored);
  std::optional<Cover> refined;
  try {
    refined = refiner.refine(plain);
  } catch (const Error& e) {
    throw Error(ErrorKind::RefinerFailed, "refiner '" + refiner.name + "' raised: " + e.what());
  }
  if (!refined) throw Error(ErrorKind::RefinerFailed, "refiner '" + refiner.name + "' found no refinement");
  const auto check = check_refiner_output(plain, *refined, refiner);
  if (!check.ok) throw Error(ErrorKind::RefinerFailed, "refiner '" + refiner.name + "': " + check.reason);

  const auto witness = is_refinement(*refined, plain).witness;
  std::vector<PointSet> pieces;
  for (std::size_t v = 0; v < refined->size(); ++v) {
    if (!witness[v]) continue;
    const PointSet& V = refined->member(v);
    for (std::size_t w : colored.family(*witness[v])) {
      const PointSet& W = colored.flat().member(w);
      PointSet cut;
      std::set_intersection(V.begin(), V.end(), W.begin(), W.end(), std::back_inserter(cut));
      if (!cut.empty()) pieces.push_back(std::move(cut));
    }
  }
  std::optional<Cover> out;
  try {
    out.emplace(colored.space(), std::move(pieces));
  } catch (const Error& e) {
    throw Error(ErrorKind::VerificationFailed, std::string("pieces do not cover: ") + e.what(), e.witness());
  }
  DimensionReduction result{*out, plain, *refined, lebesgue_number(*out), multiplicity(*out), mesh(*out),
                            ostrand.mesh};
  if (result.multiplicity > n + 1) {
    throw Error(ErrorKind::VerificationFailed, "dimension " + std::to_string(result.multiplicity - 1) +
                                                   " exceeds n = " + std::to_string(n));
  }
  const double need = std::min(s, t / 2.0);
  if (result.lebesgue.value < need - kTolerance) {
    throw Error(ErrorKind::VerificationFailed, "Lebesgue number below min(s, t/2)", {*result.lebesgue.critical_point});
  }
  if (result.mesh > result.input_mesh + kTolerance) {
    throw Error(ErrorKind::VerificationFailed, "mesh grew beyond the input mesh");
  }
  return result;
}

RefinerOracle promote_refiner(RefinerOracle inner) {
  RefinerOracle outer;
  outer.name = "promoted:" + inner.name;
  outer.member_count = inner.member_count + 1;
  outer.max_multiplicity = inner.max_multiplicity + 1;
  outer.s = inner.s;
  outer.t = 4.0 * inner.t;
  const double q = inner.s;
  const double t = inner.t;
  const std::size_t members = outer.member_count;
  const std::size_t max_mult = outer.max_multiplicity;
  outer.refine = [inner = std::move(inner), q, t, members, max_mult](const Cover& W) -> std::optional<Cover> {
    if (W.size() != members) {
      throw Error(ErrorKind::PreconditionViolated, "expected a cover with " + std::to_string(members) + " members");
    }
    const auto& X = W.metric();
    const auto lebW = lebesgue_number(W);
    if (lebW.value < 4.0 * t - kTolerance) {
      throw Error(ErrorKind::PreconditionViolated, "input Lebesgue number below r = 4t", {*lebW.critical_point});
    }
    const std::size_t last = W.size() - 1;

    // A = union of B(x, 2t) over the x whose ball B(x, 4t) leaves W_last.
    const auto f_last = complement_distances(W, last);
    PointSet seeds;
    for (PointIndex x = 0; x < X.size(); ++x) {
      if (f_last[x] < 4.0 * t) seeds.push_back(x);
    }
    PointSet A;
    {
      const detail::NearestFinder near(X, seeds);
      for (PointIndex y = 0; y < X.size(); ++y) {
        if (near.query(y).first < 2.0 * t) A.push_back(y);
      }
    }
    std::vector<PointSet> result(members);
    if (A.empty()) {
      result[last] = W.member(last);
      return Cover(W.space(), std::move(result));
    }
    std::vector<bool> in_a(X.size(), false);
    for (PointIndex a : A) in_a[a] = true;

    // U_i = W_i cut to A, as a cover of the subspace A: Lebesgue number >= 2t.
    {
      const auto sub = share(X.subspace(A));
      std::vector<PointIndex> local(X.size(), 0);
      for (std::size_t k = 0; k < A.size(); ++k) local[A[k]] = k;
      std::vector<PointSet> u(last);
      for (std::size_t i = 0; i < last; ++i) {
        for (PointIndex x : W.member(i)) {
          if (in_a[x]) u[i].push_back(local[x]);
        }
      }
      std::optional<Cover> cover_a;
      try {
        cover_a.emplace(sub, std::move(u));
      } catch (const Error& e) {
        throw Error(ErrorKind::VerificationFailed, std::string("W_i cut to A do not cover A: ") + e.what());
      }
      const auto leb_a = lebesgue_number(*cover_a);
      if (leb_a.value < 2.0 * t - kTolerance) {
        throw Error(ErrorKind::VerificationFailed, "cover of A has Lebesgue number below 2t",
                    {A[*leb_a.critical_point]});
      }
    }

    // U'_i = (W_i cut to A) plus everything outside A: Lebesgue number >= t.
    std::vector<PointSet> u_prime(last);
    for (std::size_t i = 0; i < last; ++i) {
      for (PointIndex x = 0; x < X.size(); ++x) {
        if (!in_a[x] || W.contains(i, x)) u_prime[i].push_back(x);
      }
    }
    const Cover U(W.space(), std::move(u_prime));
    const auto leb_u = lebesgue_number(U);
    if (leb_u.value < t - kTolerance) {
      throw Error(ErrorKind::VerificationFailed, "extended cover has Lebesgue number below t", {*leb_u.critical_point});
    }

    std::optional<Cover> refined;
    try {
      refined = inner.refine(U);
    } catch (const Error& e) {
      throw Error(ErrorKind::InputRefinerFailed, "inner refiner '" + inner.name + "' raised: " + e.what());
    }
    if (!refined) throw Error(ErrorKind::InputRefinerFailed, "inner refiner '" + inner.name + "' found nothing");
    const auto check = check_refiner_output(U, *refined, inner);
    if (!check.ok) throw Error(ErrorKind::InputRefinerFailed, "inner refiner '" + inner.name + "': " + check.reason);

    const Cover shrunk = shrink_to_indexed(*refined, U);
    for (std::size_t i = 0; i < last; ++i) {
      for (PointIndex x : shrunk.member(i)) {
        if (in_a[x]) result[i].push_back(x);
      }
    }
    result[last] = W.member(last);
    std::optional<Cover> out;
    try {
      out.emplace(W.space(), std::move(result));
    } catch (const Error& e) {
      throw Error(ErrorKind::VerificationFailed, std::string("promoted sets do not cover: ") + e.what());
    }
    const auto rep = is_refinement(*out, W);
    for (std::size_t i = 0; i < out->size(); ++i) {
      if (!out->member(i).empty() && !std::includes(W.member(i).begin(), W.member(i).end(),
                                                    out->member(i).begin(), out->member(i).end())) {
        throw Error(ErrorKind::VerificationFailed, "promoted member " + std::to_string(i) + " leaves W_i");
      }
    }
    if (!rep.refines) throw Error(ErrorKind::VerificationFailed, "promoted cover does not refine the input");
    if (multiplicity(*out) > max_mult) throw Error(ErrorKind::VerificationFailed, "promoted cover too thick");
    const auto leb = lebesgue_number(*out);
    if (leb.value < q - kTolerance) {
      throw Error(ErrorKind::VerificationFailed, "promoted cover has Lebesgue number below q", {*leb.critical_point});
    }
    return out;
  };
  return outer;
}

RefinerOracle identity_refiner(std::size_t members, std::size_t max_multiplicity, double s, double t) {
  RefinerOracle r{"identity", members, max_multiplicity, s, t, nullptr};
  r.refine = [](const Cover& c) -> std::optional<Cover> { return c; };
  return r;
}

RefinerOracle search_refiner(std::size_t members, std::size_t max_multiplicity, double s, double t,
                             SearchOptions options) {
  RefinerOracle r{"search", members, max_multiplicity, s, t, nullptr};
  r.refine = [s, max_multiplicity, options](const Cover& c) {
    return search_refinement(c, s, max_multiplicity, options);
  };
  return r;
}

RefinerOracle brick_refiner(std::size_t members, std::size_t lattice_dim, double s) {
  if (lattice_dim != 1 && lattice_dim != 2) {
    throw Error(ErrorKind::InvalidArgument, "brick refiners exist for Z and Z^2 only");
  }
  const long L = std::max(1L, static_cast<long>(std::ceil(s - kTolerance)));
  const double t = (lattice_dim == 1 ? 5.0 : 10.0) * static_cast<double>(L);
  RefinerOracle r{"brick", members, lattice_dim + 1, s, t, nullptr};
  r.refine = [L, lattice_dim](const Cover& c) -> std::optional<Cover> {
    const ColoredCover bricks = lattice_dim == 1 ? brick_cover_Z(c.space(), L) : brick_cover_Z2(c.space(), L);
    if (!(lebesgue_number(c).value > mesh(bricks.flat()))) return std::nullopt;
    return bricks.flat();
  };
  return r;
}

RefinerOracle make_refiner(const std::string& name, std::size_t members, std::size_t max_multiplicity, double s,
                           double t, std::size_t lattice_dim, SearchOptions options) {
  if (name == "identity") return identity_refiner(members, max_multiplicity, s, t);
  if (name == "search") return search_refiner(members, max_multiplicity, s, t, options);
  if (name == "brick") return brick_refiner(members, lattice_dim, s);
  const std::string prefix = "promoted:";
  if (name.rfind(prefix, 0) == 0) {
    if (members < 2 || max_multiplicity < 2) {
      throw Error(ErrorKind::InvalidArgument, "promoted refiners need at least two members and multiplicity 2");
    }
    return promote_refiner(make_refiner(name.substr(prefix.size()), members - 1, max_multiplicity - 1, s, t / 4.0,
                                        lattice_dim, options));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown refiner '" + name + "'");
}

}  // namespace coarse
