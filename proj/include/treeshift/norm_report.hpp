#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "treeshift/certificates.hpp"
#include "treeshift/numeric.hpp"

namespace treeshift {

enum class Verdict { bounded, unbounded, inconclusive };
std::string to_string(Verdict v);

struct LevelRatio {
  std::size_t n = 0;
  Quantity value;
};

/// Value of a sup formula over levels plus where and how it was found.
struct NormReport {
  std::string subject;
  unsigned power = 1;
  double p = 1.0;
  std::size_t depth = 0;

  /// Sup before the 1/p root; empty when the verdict is unbounded.
  std::optional<Quantity> value_p_power;
  /// value_p_power^(1/p), +inf when unbounded.
  double value = 0.0;

  /// Sup over the materialized levels only, and its smallest attaining level.
  Quantity prefix_sup;
  std::size_t attained_level = 0;
  /// The prefix sup was still growing at the deepest admissible level and no
  /// certificate closes the gap.
  bool truncated = false;
  Verdict verdict = Verdict::inconclusive;

  /// Per-level terms of the sup (empty for plain function norms).
  std::vector<LevelRatio> terms;

  /// Closed-form rule backing the verdict, if any, and whether the prefix
  /// data agreed with it.
  std::optional<std::string> certificate;
  bool certificate_attained = false;
  std::vector<std::string> certificate_mismatches;
};

}  // namespace treeshift
