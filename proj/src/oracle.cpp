#include "treeshift/oracle.hpp"

#include "treeshift/hardy.hpp"
#include "treeshift/hypercyclicity.hpp"

namespace treeshift {

namespace {

RationalFunction apply(const LevelTree& tree, ShiftKind op, const RationalFunction& f, unsigned m) {
  return op == ShiftKind::forward ? apply_forward(tree, f, m) : apply_backward(tree, f, m);
}

// ||T^m f||^p / ||f||^p; f must be nonzero.
Quantity ratio_p_power(const LevelTree& tree, ShiftKind op, const RationalFunction& f, unsigned m,
                       const Exponent& p) {
  const Quantity top = *hardy_norm(tree, apply(tree, op, f, m), p).value_p_power;
  const Quantity bottom = *hardy_norm(tree, f, p).value_p_power;
  return top / bottom;
}

std::size_t top_level(const LevelTree& tree, ShiftKind op, unsigned m) {
  return op == ShiftKind::forward ? tree.depth() - m : tree.depth();
}

}  // namespace

RationalFunction extremal_function(const LevelTree& tree, ShiftKind op, unsigned m, std::size_t n) {
  if (op == ShiftKind::forward) {
    if (n < m || n > tree.depth()) throw InvalidArgument("S^m extremal needs m <= n <= depth");
    return RationalFunction::indicator(tree.argmax_subtree(m, n - m));
  }
  if (n + m > tree.depth()) throw InvalidArgument("B^m extremal needs n + m <= depth");
  const VertexId w = tree.argmax_subtree(m, n);
  const IndexRange block = tree.descendants(n, {w.index, w.index + 1}, m);
  RationalFunction f;
  f.set_level(n + m, {Run<Rational>{block.first, block.size(), Rational(1)}});
  return f;
}

OracleReport randomized_norm_lower_bound(const LevelTree& tree, ShiftKind op, unsigned m,
                                         const Exponent& p, std::size_t trials,
                                         std::uint64_t seed) {
  OracleReport r;
  r.op = op;
  r.power = m;
  r.p = p.value();
  r.depth = tree.depth();
  r.seed = seed;
  r.trials = trials;
  r.formula = operator_norm(tree, op, p, m);
  const Quantity& sup = r.formula.prefix_sup;

  auto consider = [&](const RationalFunction& f, const std::string& source) {
    const Quantity q = ratio_p_power(tree, op, f, m, p);
    if (compare(q, sup) > 0) ++r.violations;
    if (r.best_source.empty() || compare(q, r.best_p_power) > 0) {
      r.best_p_power = q;
      r.best_source = source;
    }
  };
  const std::size_t top = top_level(tree, op, m);
  for (std::size_t i = 0; i < trials; ++i) {
    consider(random_rational_function(tree, top, seed, i), "random #" + std::to_string(i));
  }
  consider(extremal_function(tree, op, m, r.formula.attained_level),
           "extremal at level " + std::to_string(r.formula.attained_level));
  r.best = root(r.best_p_power, p);
  r.meets_formula = compare(r.best_p_power, sup) == 0;
  return r;
}

AttainmentReport extremal_attainment(const LevelTree& tree, ShiftKind op, unsigned m,
                                     const Exponent& p) {
  if (m == 0) throw InvalidArgument("operator power must be >= 1");
  if (tree.depth() < m) throw DepthError("attainment check needs depth >= m");
  AttainmentReport r;
  r.op = op;
  r.power = m;
  r.p = p.value();
  r.depth = tree.depth();
  const std::size_t first = op == ShiftKind::forward ? m : 0;
  const std::size_t last = op == ShiftKind::forward ? tree.depth() : tree.depth() - m;
  for (std::size_t n = first; n <= last; ++n) {
    const auto f = extremal_function(tree, op, m, n);
    AttainmentLevel level;
    level.n = n;
    level.measured = mean_p_power(tree, apply(tree, op, f, m), p, n) /
                     *hardy_norm(tree, f, p).value_p_power;
    level.formula =
        op == ShiftKind::forward ? forward_term(tree, m, n) : backward_term(tree, m, n, p);
    level.equal = compare(level.measured, level.formula) == 0;
    r.all_equal = r.all_equal && level.equal;
    r.levels.push_back(std::move(level));
  }
  return r;
}

GridReport truncated_finite_support_check(const LevelTree& tree, ShiftKind op, const Exponent& p,
                                          const std::vector<long>& grid, std::uint64_t budget) {
  if (grid.empty()) throw InvalidArgument("grid must not be empty");
  if (tree.depth() < 1) throw DepthError("grid check needs depth >= 1");
  GridReport r;
  r.op = op;
  r.p = p.value();
  r.grid = grid;
  r.formula_p_power = operator_norm(tree, op, p, 1).prefix_sup;

  std::vector<VertexId> free;
  BigInt total = 0;
  for (std::size_t n = 0; n <= top_level(tree, op, 1); ++n) total += tree.gamma(n);
  const BigInt needed = pow(BigInt(static_cast<unsigned long>(grid.size())), to_u64(total));
  if (total > 64 || needed > BigInt(std::to_string(budget))) {
    throw ResourceLimitError("grid enumeration needs " + to_string(needed) +
                             " evaluations, budget is " + std::to_string(budget));
  }
  for (std::size_t n = 0; n <= top_level(tree, op, 1); ++n) {
    for (BigInt i = 0; i < tree.gamma(n); ++i) free.push_back({n, i});
  }
  r.free_vertices = free.size();

  std::vector<std::size_t> digit(free.size(), 0);
  auto consider = [&](const RationalFunction& f, std::vector<long> values) {
    if (f.is_zero()) return;
    ++r.evaluated;
    const Quantity q = ratio_p_power(tree, op, f, 1, p);
    if (r.evaluated == 1 || compare(q, r.best_p_power) > 0) {
      r.best_p_power = q;
      r.best_values = std::move(values);
    }
  };
  while (true) {
    RationalFunction f;
    std::vector<long> values(free.size());
    for (std::size_t i = 0; i < free.size(); ++i) {
      values[i] = grid[digit[i]];
      if (values[i] != 0) f.set(free[i], Rational(values[i]));
    }
    consider(f, std::move(values));
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == grid.size()) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  const auto ext = extremal_function(tree, op, 1, operator_norm(tree, op, p, 1).attained_level);
  std::vector<long> ext_values;
  for (const auto& v : free) ext_values.push_back(ext.at(v) == 0 ? 0 : 1);
  consider(ext, std::move(ext_values));

  r.best = root(r.best_p_power, p);
  r.exceeded = compare(r.best_p_power, r.formula_p_power) > 0;
  r.attained = compare(r.best_p_power, r.formula_p_power) == 0;
  return r;
}

}  // namespace treeshift
