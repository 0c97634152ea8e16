#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treeshift/level_tree.hpp"
#include "treeshift/norm_report.hpp"
#include "treeshift/shift.hpp"
#include "treeshift/tree_function.hpp"

namespace treeshift {

// Everything here measures ratios ||T^m f|| / ||f|| with apply_* and
// hardy_norm only. The formula norm is computed separately for comparison.

struct OracleReport {
  ShiftKind op = ShiftKind::forward;
  unsigned power = 1;
  double p = 1.0;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  /// Best ratio of p-th powers ||T^m f||^p / ||f||^p and its p-th root.
  Quantity best_p_power;
  double best = 0.0;
  std::string best_source;
  /// Prefix sup of the formula over the materialized levels.
  NormReport formula;
  std::size_t violations = 0;
  /// best_p_power equals the formula prefix sup.
  bool meets_formula = false;
};

/// Samples `trials` random finitely supported f (sample i seeded by (seed, i))
/// plus the extremal function at the level attaining the formula prefix sup.
OracleReport randomized_norm_lower_bound(const LevelTree& tree, ShiftKind op, unsigned m,
                                         const Exponent& p, std::size_t trials,
                                         std::uint64_t seed);

/// Single-level functions on which the norm ratio equals the level-n term:
/// S: the indicator of a vertex w of level n-m with K(m, n-m) m-children.
/// B: the indicator of the m-children of a vertex w of level n attaining K(m, n).
RationalFunction extremal_function(const LevelTree& tree, ShiftKind op, unsigned m, std::size_t n);

struct AttainmentLevel {
  std::size_t n = 0;
  /// M_p^p(n, T^m f) / ||f||^p, measured.
  Quantity measured;
  /// The formula term.
  Quantity formula;
  bool equal = false;
};

struct AttainmentReport {
  ShiftKind op = ShiftKind::forward;
  unsigned power = 1;
  double p = 1.0;
  std::size_t depth = 0;
  std::vector<AttainmentLevel> levels;
  bool all_equal = true;
};

AttainmentReport extremal_attainment(const LevelTree& tree, ShiftKind op, unsigned m,
                                     const Exponent& p);

struct GridReport {
  ShiftKind op = ShiftKind::forward;
  double p = 1.0;
  std::vector<long> grid;
  std::size_t free_vertices = 0;
  std::uint64_t evaluated = 0;
  Quantity best_p_power;
  double best = 0.0;
  /// Values on the free vertices, level by level, of a maximizer.
  std::vector<long> best_values;
  Quantity formula_p_power;
  bool exceeded = false;
  bool attained = false;
};

/// Enumerates every nonzero assignment of grid values to the vertices that
/// T can act on without leaving the prefix, and reports the best ratio of
/// ||T f||^p / ||f||^p. Throws ResourceLimitError when the grid would need
/// more than `budget` evaluations.
GridReport truncated_finite_support_check(const LevelTree& tree, ShiftKind op, const Exponent& p,
                                          const std::vector<long>& grid, std::uint64_t budget);

}  // namespace treeshift
