#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treeshift/level_tree.hpp"
#include "treeshift/shift.hpp"
#include "treeshift/tree_function.hpp"

namespace treeshift {

struct HypercyclicityVerdict {
  ShiftKind op = ShiftKind::backward;
  /// "yes", "no" or "inconclusive".
  std::string verdict;
  /// "S_never", "leaf_found", "gamma_divergent", "gamma_bounded" or "depth_limited".
  std::string reason;
  std::string evidence;
  std::optional<VertexId> leaf;
  std::size_t depth = 0;
  /// gamma(n) is nondecreasing over the materialized levels.
  bool gamma_nondecreasing = false;
  /// gamma over the last few materialized levels.
  std::vector<BigInt> gamma_tail;
};

/// S is never hypercyclic; B is exactly when the tree is leafless and
/// gamma(n) diverges. Divergence is only accepted from a certificate.
HypercyclicityVerdict hypercyclicity_verdict(const LevelTree& tree, ShiftKind op);

/// (T_n g)(v) = g(u) / gamma(n, u) where u is the n-parent of v.
RationalFunction kgs_right_inverse(const LevelTree& tree, const RationalFunction& g, unsigned n);

struct KgsStep {
  unsigned n = 0;
  bool identity = false;
  Quantity norm_p;
  Quantity bound_p;
  bool bound_holds = false;
};

struct KgsSample {
  std::uint64_t seed = 0;
  std::size_t max_support_level = 0;
  Quantity g_norm_p;
  /// B^(N+1) g = 0 where N is the top support level.
  bool orbit_null = false;
  std::vector<KgsStep> steps;
  /// ||T_n g|| nonincreasing in n.
  bool decreasing = false;
};

struct KgsReport {
  double p = 1.0;
  std::size_t depth = 0;
  unsigned n_max = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t identity_passes = 0;
  std::size_t orbit_null_passes = 0;
  std::size_t bound_passes = 0;
  std::size_t decreasing_passes = 0;
  /// max over samples of ||T_(n_max) g|| / ||g|| (norms, not p-th powers).
  double worst_final_ratio = 0.0;
  /// M_p^p profile of T_n chi_root, n = 1..n_max.
  std::vector<Quantity> root_profile;
  std::vector<KgsSample> details;
};

/// Random finitely supported rational g with support on levels <= min(depth/2,
/// depth - n_max); sample i is drawn from an engine seeded with (seed, i).
KgsReport kgs_suite(const LevelTree& tree, std::size_t samples, unsigned n_max, const Exponent& p,
                    std::uint64_t seed);

/// The sampler used by kgs_suite, exposed for the oracle and tests.
RationalFunction random_rational_function(const LevelTree& tree, std::size_t max_level,
                                          std::uint64_t seed, std::uint64_t index);

}  // namespace treeshift
