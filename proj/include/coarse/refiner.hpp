#pragma once

#include <functional>
#include <optional>
#include <string>

#include "coarse/cover.hpp"

namespace coarse {

/// A capability that refines covers with `member_count` members and Lebesgue
/// number >= t into covers with Lebesgue number >= s and multiplicity at most
/// `max_multiplicity`. Outputs are never trusted: callers re-verify them with
/// check_refiner_output.
struct RefinerOracle {
  std::string name;
  std::size_t member_count = 0;
  std::size_t max_multiplicity = 1;
  double s = 0.0;
  double t = 0.0;
  std::function<std::optional<Cover>(const Cover&)> refine;
};

struct RefinerCheck {
  bool ok = false;
  std::string reason;
  LebesgueReport lebesgue;
  std::size_t multiplicity = 0;
};

/// Refinement, multiplicity and Lebesgue checks on a refiner's output.
RefinerCheck check_refiner_output(const Cover& input, const Cover& output, const RefinerOracle& refiner);

}  // namespace coarse
