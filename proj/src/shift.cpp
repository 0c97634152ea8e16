#include "treeshift/shift.hpp"

#include <cmath>
#include <limits>

namespace treeshift {

std::string to_string(ShiftKind op) { return op == ShiftKind::forward ? "S" : "B"; }

ShiftKind parse_shift_kind(const std::string& text) {
  if (text == "S" || text == "forward") return ShiftKind::forward;
  if (text == "B" || text == "backward") return ShiftKind::backward;
  throw InvalidArgument("operator must be S or B, got '" + text + "'");
}

namespace {

template <class V>
TreeFunction<V> forward_impl(const LevelTree& tree, const TreeFunction<V>& f, unsigned m) {
  check_support(tree, f);
  if (m == 0) return f;
  if (!f.is_zero() && f.max_support_level() + m > tree.depth()) {
    throw DepthError("S^" + std::to_string(m) + " of a function supported up to level " +
                     std::to_string(f.max_support_level()) + " leaves depth " +
                     std::to_string(tree.depth()));
  }
  TreeFunction<V> out;
  for (const auto& [n, runs] : f.levels()) {
    std::vector<Run<V>> cur = runs;
    for (unsigned i = 0; i < m; ++i) {
      cur = push_to_children(tree, n + i, cur, [](const V& x, std::uint64_t) { return x; });
    }
    out.set_level(n + m, std::move(cur));
  }
  return out;
}

template <class V>
TreeFunction<V> backward_impl(const LevelTree& tree, const TreeFunction<V>& f, unsigned m) {
  check_support(tree, f);
  if (m == 0) return f;
  TreeFunction<V> out;
  for (const auto& [n, runs] : f.levels()) {
    if (n < m) continue;
    std::vector<Run<V>> cur = runs;
    for (unsigned i = 0; i < m && !cur.empty(); ++i) cur = sum_over_children(tree, n - 1 - i, cur);
    out.add_to_level(n - m, std::move(cur));
  }
  return out;
}

template <class V>
std::vector<ObstructionStep> obstruction_impl(const LevelTree& tree, const TreeFunction<V>& f,
                                              const TreeFunction<V>& g, const Exponent& p,
                                              unsigned n_max) {
  const V at_root = g.at(root_vertex());
  if (is_zero(at_root)) throw InvalidArgument("g(root) must be nonzero");
  const Quantity bound = abs_pow(at_root, p);
  std::vector<ObstructionStep> steps;
  for (unsigned N = 1; N <= n_max; ++N) {
    ObstructionStep step;
    step.N = N;
    const auto diff = forward_impl(tree, f, N) - g;
    step.distance_p = *hardy_norm(tree, diff, p).value_p_power;
    step.bound_p = bound;
    step.holds = compare(step.distance_p, bound) >= 0;
    steps.push_back(step);
  }
  return steps;
}

}  // namespace

RationalFunction apply_forward(const LevelTree& tree, const RationalFunction& f, unsigned m) {
  return forward_impl(tree, f, m);
}
ComplexFunction apply_forward(const LevelTree& tree, const ComplexFunction& f, unsigned m) {
  return forward_impl(tree, f, m);
}
RationalFunction apply_backward(const LevelTree& tree, const RationalFunction& f, unsigned m) {
  return backward_impl(tree, f, m);
}
ComplexFunction apply_backward(const LevelTree& tree, const ComplexFunction& f, unsigned m) {
  return backward_impl(tree, f, m);
}

Quantity forward_term(const LevelTree& tree, unsigned m, std::size_t n) {
  if (n < m) throw InvalidArgument("forward term needs n >= m");
  return Quantity(make_rational(tree.K(m, n - m) * tree.gamma(n - m), tree.gamma(n)));
}

Quantity backward_term(const LevelTree& tree, unsigned m, std::size_t n, const Exponent& p) {
  const BigInt k = tree.K(m, n);
  if (p.is_integer()) {
    return Quantity(make_rational(pow(k, p.as_integer() - 1) * tree.gamma(n + m), tree.gamma(n)));
  }
  if (k == 0) return Quantity(Rational(0));
  const double log_term =
      (p.value() - 1.0) * log_abs(k) + log_abs(tree.gamma(n + m)) - log_abs(tree.gamma(n));
  return Quantity::approximate(std::exp(log_term));
}

NormReport summarize_terms(std::string subject, unsigned m, const Exponent& p, std::size_t depth,
                           std::vector<LevelRatio> terms, const std::optional<OperatorBound>& cert) {
  NormReport r;
  r.subject = std::move(subject);
  r.power = m;
  r.p = p.value();
  r.depth = depth;
  r.prefix_sup = terms.empty() ? Quantity(Rational(0)) : terms.front().value;
  r.attained_level = terms.empty() ? 0 : terms.front().n;
  for (const auto& t : terms) {
    if (compare(t.value, r.prefix_sup) > 0) {
      r.prefix_sup = t.value;
      r.attained_level = t.n;
    }
  }
  const bool still_rising =
      terms.size() < 2 || compare(terms.back().value, terms[terms.size() - 2].value) >= 0;
  r.truncated = terms.empty() || (r.attained_level + 1 >= terms.back().n && still_rising);
  r.value_p_power = r.prefix_sup;
  r.value = root(r.prefix_sup, p);
  r.verdict = Verdict::inconclusive;
  r.terms = std::move(terms);

  if (!cert) return r;
  std::vector<std::string> mismatches;
  if (cert->ratio) {
    for (const auto& t : r.terms) {
      const Quantity expected = cert->ratio(t.n);
      if (compare(expected, t.value) != 0) {
        mismatches.push_back("level " + std::to_string(t.n) + ": computed " + t.value.to_string() +
                             ", closed form " + expected.to_string());
      }
    }
  }
  if (cert->bounded) {
    for (const auto& t : r.terms) {
      if (compare(t.value, cert->p_power) > 0) {
        mismatches.push_back("level " + std::to_string(t.n) + " term " + t.value.to_string() +
                             " exceeds certified sup " + cert->p_power.to_string());
      }
    }
    if (cert->attained_at && !r.terms.empty() && *cert->attained_at <= r.terms.back().n &&
        compare(r.prefix_sup, cert->p_power) != 0) {
      mismatches.push_back("certified sup " + cert->p_power.to_string() +
                           " is not attained at level " + std::to_string(*cert->attained_at));
    }
  } else {
    const std::size_t k = r.terms.size();
    const bool rising = k >= 3 && compare(r.terms[k - 1].value, r.terms[k - 2].value) > 0 &&
                        compare(r.terms[k - 2].value, r.terms[k - 3].value) > 0;
    if (!rising) mismatches.push_back("terms are not strictly increasing at the deepest levels");
  }
  r.certificate = cert->rule;
  r.certificate_attained = cert->attained_at.has_value();
  r.certificate_mismatches = mismatches;
  if (!mismatches.empty()) return r;
  if (cert->bounded) {
    r.value_p_power = cert->p_power;
    r.value = root(cert->p_power, p);
    r.truncated = false;
    r.verdict = Verdict::bounded;
  } else {
    r.value_p_power.reset();
    r.value = std::numeric_limits<double>::infinity();
    r.truncated = true;
    r.verdict = Verdict::unbounded;
  }
  return r;
}

namespace {

std::optional<OperatorBound> certificate_for(const LevelTree& tree, ShiftKind op, unsigned m,
                                             const Exponent& p) {
  const auto& certs = tree.spec().certificates();
  if (!certs) return std::nullopt;
  return certs->norm_bound(op, m, p);
}

}  // namespace

NormReport forward_norm(const LevelTree& tree, const Exponent& p, unsigned m) {
  if (m == 0) throw InvalidArgument("operator power must be >= 1");
  if (tree.depth() < m + 1) {
    throw DepthError("norm of S^" + std::to_string(m) + " needs depth >= " + std::to_string(m + 1));
  }
  std::vector<LevelRatio> terms;
  for (std::size_t n = m; n <= tree.depth(); ++n) terms.push_back({n, forward_term(tree, m, n)});
  return summarize_terms("S", m, p, tree.depth(), std::move(terms),
                         certificate_for(tree, ShiftKind::forward, m, p));
}

NormReport backward_norm(const LevelTree& tree, const Exponent& p, unsigned m) {
  if (m == 0) throw InvalidArgument("operator power must be >= 1");
  if (tree.depth() < m) {
    throw DepthError("norm of B^" + std::to_string(m) + " needs depth >= " + std::to_string(m));
  }
  std::vector<LevelRatio> terms;
  for (std::size_t n = 0; n + m <= tree.depth(); ++n) {
    terms.push_back({n, backward_term(tree, m, n, p)});
  }
  return summarize_terms("B", m, p, tree.depth(), std::move(terms),
                         certificate_for(tree, ShiftKind::backward, m, p));
}

NormReport operator_norm(const LevelTree& tree, ShiftKind op, const Exponent& p, unsigned m) {
  return op == ShiftKind::forward ? forward_norm(tree, p, m) : backward_norm(tree, p, m);
}

IsometryReport isometry_check(const LevelTree& tree, const Exponent& p) {
  if (tree.depth() < 2) throw DepthError("isometry check needs depth >= 2");
  IsometryReport report;
  for (std::size_t n = 0; n < tree.depth(); ++n) {
    const auto segs = tree.segments(n);
    if (segs.size() == 1) {
      report.sequence.push_back(segs.front().degree);
      continue;
    }
    report.isometric = false;
    report.sequence.clear();
    const Segment& a = segs[0];
    const Segment& b = segs[1];
    report.first = VertexId{n, a.first};
    report.second = VertexId{n, b.first};
    report.first_degree = a.degree;
    report.second_degree = b.degree;
    const bool a_is_average =
        BigInt(static_cast<unsigned long>(a.degree)) * tree.gamma(n) == tree.gamma(n + 1);
    const VertexId w = a_is_average ? *report.second : *report.first;
    report.witness = w;
    const auto chi = RationalFunction::indicator(w);
    report.norm_p = *hardy_norm(tree, chi, p).value_p_power;
    report.shifted_norm_p = *hardy_norm(tree, apply_forward(tree, chi), p).value_p_power;
    return report;
  }
  report.isometric = true;
  return report;
}

std::vector<ObstructionStep> forward_orbit_obstruction(const LevelTree& tree,
                                                       const RationalFunction& f,
                                                       const RationalFunction& g,
                                                       const Exponent& p, unsigned n_max) {
  return obstruction_impl(tree, f, g, p, n_max);
}

std::vector<ObstructionStep> forward_orbit_obstruction(const LevelTree& tree,
                                                       const ComplexFunction& f,
                                                       const ComplexFunction& g,
                                                       const Exponent& p, unsigned n_max) {
  return obstruction_impl(tree, f, g, p, n_max);
}

}  // namespace treeshift
