#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "treeshift/level_tree.hpp"
#include "treeshift/norm_report.hpp"
#include "treeshift/tree_function.hpp"

namespace treeshift {

/// M_p^p(n, f): the p-th power of the p-th mean of |f| over level n. Exact
/// for rational f and integer p.
Quantity mean_p_power(const LevelTree& tree, const RationalFunction& f, const Exponent& p,
                      std::size_t n);
Quantity mean_p_power(const LevelTree& tree, const ComplexFunction& f, const Exponent& p,
                      std::size_t n);

/// M_p(n, f).
double mean_p(const LevelTree& tree, const RationalFunction& f, const Exponent& p, std::size_t n);
double mean_p(const LevelTree& tree, const ComplexFunction& f, const Exponent& p, std::size_t n);

/// Sup of M_p(n, f) over all levels. For a finitely supported f this is the
/// true norm, so the report is never truncated.
NormReport hardy_norm(const LevelTree& tree, const RationalFunction& f, const Exponent& p);
NormReport hardy_norm(const LevelTree& tree, const ComplexFunction& f, const Exponent& p);

enum class LittleVerdict { vanishing, stationary, inconclusive };
std::string to_string(LittleVerdict v);

struct MeanProfile {
  double p = 1.0;
  /// M_p^p(n, f) for n = 0..last level examined.
  std::vector<Quantity> values;
  LittleVerdict verdict = LittleVerdict::inconclusive;
  /// Levels used by the tail heuristic, [tail_begin, values.size()).
  std::size_t tail_begin = 0;
};

/// Whether M_p(n, f) -> 0. Finitely supported functions vanish; for
/// truncations of rule-generated functions the tail (last half of the
/// evaluated levels) decides: constant means stationary, a nonincreasing
/// tail that at least halves means vanishing, anything else is inconclusive.
MeanProfile little_space_profile(const LevelTree& tree, const RationalFunction& f,
                                 const Exponent& p);
MeanProfile little_space_profile(const LevelTree& tree, const ComplexFunction& f,
                                 const Exponent& p);

}  // namespace treeshift
