#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treeshift/certificates.hpp"
#include "treeshift/hardy.hpp"
#include "treeshift/level_tree.hpp"
#include "treeshift/norm_report.hpp"
#include "treeshift/tree_function.hpp"

namespace treeshift {

std::string to_string(ShiftKind op);
/// "S"/"forward" or "B"/"backward".
ShiftKind parse_shift_kind(const std::string& text);

/// Copies runs of `level` onto the children of their vertices. Each child of
/// a vertex with value x and d children receives transform(x, d).
template <class V, class F>
std::vector<Run<V>> push_to_children(const LevelTree& tree, std::size_t level,
                                     const std::vector<Run<V>>& runs, F&& transform) {
  const auto segs = tree.segments(level);
  std::vector<Run<V>> out;
  auto seg = segs.begin();
  for (const auto& run : runs) {
    while (seg != segs.end() && seg->end() <= run.first) ++seg;
    for (auto it = seg; it != segs.end() && it->first < run.end(); ++it) {
      if (it->degree == 0) continue;
      const BigInt lo = std::max(run.first, it->first);
      const BigInt hi = std::min(run.end(), it->end());
      const BigInt d(static_cast<unsigned long>(it->degree));
      out.push_back({it->first_child + (lo - it->first) * d, (hi - lo) * d,
                     transform(run.value, it->degree)});
    }
  }
  return normalize_runs(std::move(out));
}

/// (S^m f)(v) = f(m-parent of v), zero on levels below m.
RationalFunction apply_forward(const LevelTree& tree, const RationalFunction& f, unsigned m = 1);
ComplexFunction apply_forward(const LevelTree& tree, const ComplexFunction& f, unsigned m = 1);

/// (B^m f)(v) = sum of f over the m-children of v.
RationalFunction apply_backward(const LevelTree& tree, const RationalFunction& f, unsigned m = 1);
ComplexFunction apply_backward(const LevelTree& tree, const ComplexFunction& f, unsigned m = 1);

/// K(m, n-m) gamma(n-m) / gamma(n), the level-n term of the S^m norm.
Quantity forward_term(const LevelTree& tree, unsigned m, std::size_t n);
/// K(m, n)^(p-1) gamma(n+m) / gamma(n), the level-n term of the B^m norm.
Quantity backward_term(const LevelTree& tree, unsigned m, std::size_t n, const Exponent& p);

/// ||S^m|| as the sup of forward_term over m <= n <= depth, root 1/p.
NormReport forward_norm(const LevelTree& tree, const Exponent& p, unsigned m = 1);
/// ||B^m|| as the sup of backward_term over 0 <= n <= depth - m, root 1/p.
NormReport backward_norm(const LevelTree& tree, const Exponent& p, unsigned m = 1);
NormReport operator_norm(const LevelTree& tree, ShiftKind op, const Exponent& p, unsigned m = 1);

struct IsometryReport {
  bool isometric = false;
  /// s_1..s_depth with s_{n+1} = gamma(n+1)/gamma(n) (isometric case).
  std::vector<std::uint64_t> sequence;
  /// Two same-level vertices with different degrees (otherwise).
  std::optional<VertexId> first;
  std::optional<VertexId> second;
  std::uint64_t first_degree = 0;
  std::uint64_t second_degree = 0;
  /// Vertex w of the pair whose degree differs from the level average, with
  /// ||S chi_w||^p = gamma(1,w)/gamma(|w|+1) against ||chi_w||^p = 1/gamma(|w|).
  std::optional<VertexId> witness;
  Quantity shifted_norm_p;
  Quantity norm_p;
};

IsometryReport isometry_check(const LevelTree& tree, const Exponent& p);

struct ObstructionStep {
  unsigned N = 0;
  /// ||S^N f - g||^p and the lower bound |g(root)|^p.
  Quantity distance_p;
  Quantity bound_p;
  bool holds = false;
};

/// ||S^N f - g|| >= |g(root)| for N = 1..n_max; g(root) must be nonzero.
std::vector<ObstructionStep> forward_orbit_obstruction(const LevelTree& tree,
                                                       const RationalFunction& f,
                                                       const RationalFunction& g,
                                                       const Exponent& p, unsigned n_max);
std::vector<ObstructionStep> forward_orbit_obstruction(const LevelTree& tree,
                                                       const ComplexFunction& f,
                                                       const ComplexFunction& g,
                                                       const Exponent& p, unsigned n_max);

/// Builds a report from level terms. With a bounded certificate the value is
/// the certified sup and the terms are only checked against it; with an
/// unbounded one the verdict is unbounded once the terms match the closed
/// form and still increase; without one the verdict stays inconclusive.
NormReport summarize_terms(std::string subject, unsigned m, const Exponent& p, std::size_t depth,
                           std::vector<LevelRatio> terms, const std::optional<OperatorBound>& cert);

}  // namespace treeshift
