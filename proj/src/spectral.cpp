#include "treeshift/spectral.hpp"

#include <cmath>
#include <limits>
#include <type_traits>

namespace treeshift {

namespace {

template <class V>
TreeFunction<V> restrict_levels(const TreeFunction<V>& f, std::size_t begin, std::size_t end) {
  TreeFunction<V> out;
  for (const auto& [n, runs] : f.levels()) {
    if (n >= begin && n < end) out.set_level(n, runs);
  }
  return out;
}

template <class V>
double max_abs(const TreeFunction<V>& f) {
  double best = 0.0;
  for (const auto& [n, runs] : f.levels()) {
    for (const auto& r : runs) best = std::max(best, abs_value(r.value));
  }
  return best;
}

/// |x|^(k p), exact for rational x and integer p.
template <class V>
Quantity modulus_power(const V& x, long k, const Exponent& p) {
  if constexpr (std::is_same_v<V, Rational>) {
    if (p.is_integer()) {
      const long e = k * static_cast<long>(p.as_integer());
      if (sgn(x) == 0) return Quantity(Rational(e == 0 ? 1 : 0));
      return Quantity(pow(Rational(abs(x)), e));
    }
  }
  const double a = abs_value(x);
  if (a == 0.0) return Quantity::approximate(k == 0 ? 1.0 : 0.0);
  return Quantity::approximate(std::exp(static_cast<double>(k) * p.value() * std::log(a)));
}

bool level_regular(const LevelTree& tree) {
  for (std::size_t n = 0; n < tree.depth(); ++n) {
    if (tree.segments(n).size() != 1) return false;
  }
  return true;
}

/// Fills residual fields from the defect function D = lhs - rhs.
template <class V>
void record_residual(WitnessReport& report, const TreeFunction<V>& defect, double scale) {
  report.residual = max_abs(defect);
  const double tol = kWitnessTolerance * std::max(1.0, scale);
  if constexpr (std::is_same_v<V, Rational>) {
    Rational best = 0;
    for (const auto& [n, runs] : defect.levels()) {
      for (const auto& r : runs) best = std::max(best, Rational(abs(r.value)));
    }
    report.exact_residual = best;
    report.status = sgn(best) == 0 ? "verified" : "residual_too_large";
  } else {
    report.status = report.residual <= tol ? "verified" : "residual_too_large";
  }
  for (const auto& [n, runs] : defect.levels()) {
    for (const auto& r : runs) {
      const bool bad = std::is_same_v<V, Rational> ? true : abs_value(r.value) > tol;
      if (bad) {
        report.failure = VertexId{n, r.first};
        return;
      }
    }
  }
}

template <class V>
void set_witness(WitnessReport& report, const TreeFunction<V>& f) {
  if constexpr (std::is_same_v<V, Rational>) {
    report.exact = true;
    report.exact_witness = f;
    report.witness = to_complex(f);
  } else {
    report.exact = false;
    report.witness = f;
  }
}

template <class V>
V from_degree(std::uint64_t d) {
  if constexpr (std::is_same_v<V, Rational>) {
    return Rational(static_cast<unsigned long>(d));
  } else {
    return Complex(static_cast<double>(d), 0.0);
  }
}

template <class V>
WitnessReport eigen_impl(const LevelTree& tree, const V& lambda, const Exponent& p) {
  if (tree.depth() < 1) throw DepthError("eigenfunction check needs depth >= 1");
  WitnessReport report;
  report.kind = "eigenB";
  report.identity = "(B f)(v) = lambda f(v)";
  report.p = p.value();

  TreeFunction<V> f;
  std::vector<Run<V>> cur = {Run<V>{BigInt(0), BigInt(1), V(1)}};
  f.set_level(0, cur);
  for (std::size_t n = 0; n < tree.depth() && !cur.empty(); ++n) {
    cur = push_to_children(tree, n, cur, [&lambda](const V& x, std::uint64_t d) {
      return V(x * lambda / from_degree<V>(d));
    });
    f.set_level(n + 1, cur);
  }
  f.set_evaluated_to(tree.depth());

  const auto bf = apply_backward(tree, f);
  const auto lf = restrict_levels(f, 0, tree.depth()).scaled(lambda);
  report.region_begin = 0;
  report.region_end = tree.depth();
  record_residual(report, bf - lf, max_abs(lf));
  if (report.status != "verified") {
    if (auto leaf = tree.first_leaf()) {
      report.notes.push_back("identity fails at the leaf (" + std::to_string(leaf->level) + ", " +
                             leaf->index.get_str() + "): B f vanishes there while lambda f does not");
    }
  }

  const bool regular = level_regular(tree);
  BigInt product = 1;
  for (std::size_t n = 0; n <= tree.depth(); ++n) {
    const Quantity m = mean_p_power(tree, f, p, n);
    report.profile.push_back(m);
    // Level-regular: exactly |lambda|^(pn) / (s_1...s_n)^p. Otherwise at most
    // |lambda|^(pn) on leafless trees.
    Quantity expected;
    if (regular) {
      if constexpr (std::is_same_v<V, Rational>) {
        expected = modulus_power(V(pow(lambda, static_cast<unsigned long>(n)) / Rational(product)),
                                 1, p);
      } else {
        const double lg = n * std::log(std::abs(lambda)) - log_abs(product);
        expected = std::abs(lambda) == 0.0 ? Quantity::approximate(n == 0 ? 1.0 : 0.0)
                                           : Quantity::approximate(std::exp(p.value() * lg));
      }
      report.profile_ok = report.profile_ok && compare(m, expected, 1e-9) == 0;
    } else {
      expected = modulus_power(lambda, static_cast<long>(n), p);
      if (tree.is_leafless_up_to()) {
        report.profile_ok = report.profile_ok && compare(m, expected, 1e-9) <= 0;
      }
    }
    report.expected_profile.push_back(expected);
    if (n < tree.depth()) {
      product *= static_cast<unsigned long>(tree.segments(n).front().degree);
    }
  }
  set_witness(report, f);
  return report;
}

template <class V>
WitnessReport resolvent_impl(const LevelTree& tree, const VertexId& w, const V& lambda,
                             const Exponent& p) {
  if (!(abs_value(lambda) > 1.0)) {
    throw InvalidArgument("resolvent witness needs |lambda| > 1");
  }
  tree.check_vertex(w);
  if (w.level >= tree.depth()) throw DepthError("vertex w must lie above the deepest level");
  WitnessReport report;
  report.kind = "resolventS";
  report.identity = "((S - lambda) f_w)(v) = chi_w(v)";
  report.p = p.value();

  TreeFunction<V> f;
  V value = V(-1) / lambda;
  for (std::size_t n = w.level; n <= tree.depth(); ++n) {
    const IndexRange sector = tree.descendants(w.level, {w.index, w.index + 1}, n - w.level);
    f.set_level(n, {Run<V>{sector.first, sector.size(), value}});
    value = V(value / lambda);
  }
  f.set_evaluated_to(tree.depth());

  const auto upper = restrict_levels(f, 0, tree.depth());
  const auto sf = restrict_levels(apply_forward(tree, upper), 0, tree.depth());
  const auto chi = TreeFunction<V>::indicator(w);
  record_residual(report, sf - upper.scaled(lambda) - chi, max_abs(upper) * abs_value(lambda));
  report.region_begin = 0;
  report.region_end = tree.depth();

  for (std::size_t n = 0; n <= tree.depth(); ++n) {
    const Quantity m = mean_p_power(tree, f, p, n);
    report.profile.push_back(m);
    if (n < w.level) {
      report.expected_profile.push_back(Quantity(Rational(0)));
      report.profile_ok = report.profile_ok && compare(m, Quantity(Rational(0))) == 0;
      continue;
    }
    const long k = static_cast<long>(n - w.level + 1);
    const Quantity bound = modulus_power(lambda, -k, p);
    const IndexRange sector = tree.descendants(w.level, {w.index, w.index + 1}, n - w.level);
    const Quantity share(make_rational(sector.size(), tree.gamma(n)));
    const Quantity expected = share * bound;
    report.expected_profile.push_back(expected);
    report.profile_ok = report.profile_ok && compare(m, expected, 1e-9) == 0 &&
                        compare(m, bound, 1e-9) <= 0;
  }
  set_witness(report, f);
  return report;
}

template <class V>
WitnessReport blowup_impl(const LevelTree& tree, const V& lambda, const Exponent& p) {
  WitnessReport report;
  report.kind = "blowupS";
  report.identity = "((S - lambda) f)(v) = chi_root(v)";
  report.p = p.value();
  if (is_zero(lambda)) {
    report.status = "no_solution";
    report.notes.push_back("(S f)(root) = 0 for every f, so S f = chi_root has no solution");
    return report;
  }
  if (!(abs_value(lambda) < 1.0)) throw InvalidArgument("blowup witness needs 0 < |lambda| < 1");

  TreeFunction<V> f;
  V value = V(-1) / lambda;
  for (std::size_t n = 0; n <= tree.depth(); ++n) {
    f.set_level(n, {Run<V>{BigInt(0), tree.gamma(n), value}});
    value = V(value / lambda);
  }
  f.set_evaluated_to(tree.depth());

  const auto upper = restrict_levels(f, 0, tree.depth());
  const auto sf = restrict_levels(apply_forward(tree, upper), 0, tree.depth());
  const auto chi = TreeFunction<V>::indicator(root_vertex());
  record_residual(report, sf - upper.scaled(lambda) - chi, max_abs(upper) * abs_value(lambda));
  report.region_begin = 0;
  report.region_end = tree.depth();

  for (std::size_t n = 0; n <= tree.depth(); ++n) {
    const Quantity m = mean_p_power(tree, f, p, n);
    const Quantity expected = modulus_power(lambda, -static_cast<long>(n + 1), p);
    report.profile.push_back(m);
    report.expected_profile.push_back(expected);
    report.profile_ok = report.profile_ok && compare(m, expected, 1e-9) == 0;
  }
  set_witness(report, f);
  return report;
}

}  // namespace

WitnessReport eigenfunction_B(const LevelTree& tree, const Complex& lambda, const Exponent& p) {
  return eigen_impl(tree, lambda, p);
}
WitnessReport eigenfunction_B(const LevelTree& tree, const Rational& lambda, const Exponent& p) {
  return eigen_impl(tree, lambda, p);
}
WitnessReport resolvent_witness_S(const LevelTree& tree, const VertexId& w, const Complex& lambda,
                                  const Exponent& p) {
  return resolvent_impl(tree, w, lambda, p);
}
WitnessReport resolvent_witness_S(const LevelTree& tree, const VertexId& w,
                                  const Rational& lambda, const Exponent& p) {
  return resolvent_impl(tree, w, lambda, p);
}
WitnessReport nonsurjectivity_blowup_S(const LevelTree& tree, const Complex& lambda,
                                       const Exponent& p) {
  return blowup_impl(tree, lambda, p);
}
WitnessReport nonsurjectivity_blowup_S(const LevelTree& tree, const Rational& lambda,
                                       const Exponent& p) {
  return blowup_impl(tree, lambda, p);
}

HardyMode parse_hardy_mode(const std::string& text) {
  if (text == "Hp") return HardyMode::Hp;
  if (text == "Hp0") return HardyMode::Hp0;
  throw InvalidArgument("mode must be Hp or Hp0, got '" + text + "'");
}

std::string to_string(HardyMode mode) { return mode == HardyMode::Hp ? "Hp" : "Hp0"; }

RootGrowth root_growth_estimate(const LevelTree& tree) {
  RootGrowth g;
  g.window_end = tree.depth() + 1;
  g.window_begin = std::max<std::size_t>(1, tree.depth() / 2);
  g.estimate = std::numeric_limits<double>::infinity();
  for (std::size_t n = g.window_begin; n < g.window_end; ++n) {
    g.estimate = std::min(g.estimate, std::exp(log_abs(tree.gamma(n)) / static_cast<double>(n)));
  }
  return g;
}

MembershipReport point_spectrum_membership_B(const LevelTree& tree, const Complex& lambda,
                                             const Exponent& p, HardyMode mode) {
  MembershipReport r;
  r.modulus = std::abs(lambda);
  const auto eigen = eigenfunction_B(tree, lambda, p);
  r.eigen_residual = eigen.residual;
  if (eigen.status != "verified") {
    r.verdict = "not_witnessed";
    r.reason = "the eigenfunction identity fails within depth (the tree has a leaf)";
    return r;
  }
  const double tol = 1e-12;
  if (r.modulus < 1.0 - tol) {
    r.verdict = "member_witnessed";
    r.reason = "|lambda| < 1: M_p(n, f) <= |lambda|^n tends to 0";
    return r;
  }
  if (std::abs(r.modulus - 1.0) <= tol && mode == HardyMode::Hp) {
    r.verdict = "member_witnessed";
    r.reason = "|lambda| = 1: M_p(n, f) <= 1 keeps f bounded";
    return r;
  }
  if (!level_regular(tree)) {
    r.verdict = std::abs(r.modulus - 1.0) <= tol ? "boundary" : "not_witnessed";
    r.reason = "outside the unit disk and the tree is not level-regular";
    return r;
  }
  const auto& certs = tree.spec().certificates();
  if (certs && certs->root_growth_liminf()) {
    r.t = *certs->root_growth_liminf();
    r.t_source = "certificate";
  } else {
    const auto g = root_growth_estimate(tree);
    r.t = g.estimate;
    r.t_source = "window";
    r.window_begin = g.window_begin;
    r.window_end = g.window_end;
  }
  const auto nb = backward_norm(tree, p);
  if (nb.verdict != Verdict::unbounded) r.norm_B = nb.value;
  if (r.modulus < *r.t - tol) {
    r.verdict = "member_witnessed";
    r.reason = "|lambda| < liminf (s_1...s_n)^(1/n): the root test makes M_p(n, f) vanish";
  } else if (r.norm_B && r.modulus > *r.norm_B + tol) {
    r.verdict = "not_witnessed";
    r.reason = "|lambda| exceeds ||B||";
  } else if (std::abs(r.modulus - *r.t) <= tol) {
    r.verdict = "boundary";
    r.reason = "|lambda| equals the root-growth liminf";
  } else {
    r.verdict = "not_witnessed";
    r.reason = "|lambda| lies between the root-growth liminf and ||B||";
  }
  return r;
}

SpectralReport spectral_radius(const LevelTree& tree, ShiftKind op, const Exponent& p,
                               unsigned max_power) {
  if (max_power == 0) throw InvalidArgument("max power must be >= 1");
  const std::size_t needed = op == ShiftKind::forward ? max_power + 1 : max_power;
  if (tree.depth() < needed) {
    throw DepthError("radius up to power " + std::to_string(max_power) + " needs depth >= " +
                     std::to_string(needed));
  }
  SpectralReport r;
  r.op = op;
  r.p = p.value();
  r.depth = tree.depth();
  r.radius_estimate = std::numeric_limits<double>::infinity();
  for (unsigned m = 1; m <= max_power; ++m) {
    auto norm = operator_norm(tree, op, p, m);
    const double rad = std::isinf(norm.value)
                           ? norm.value
                           : (norm.value_p_power && norm.value_p_power->is_exact() &&
                                      sgn(norm.value_p_power->exact()) > 0
                                  ? std::exp(log_abs(norm.value_p_power->exact()) /
                                             (p.value() * m))
                                  : std::pow(norm.value, 1.0 / m));
    r.any_truncated = r.any_truncated || norm.truncated;
    r.radius_sequence.push_back(rad);
    r.radius_estimate = std::min(r.radius_estimate, rad);
    r.power_norms.push_back(std::move(norm));
  }
  const auto& seq = r.radius_sequence;
  if (seq.size() >= 3) {
    double change = 0.0;
    for (std::size_t i = seq.size() - 2; i < seq.size(); ++i) {
      change = std::max(change, std::abs(seq[i] - seq[i - 1]) / std::abs(seq[i]));
    }
    r.last_relative_change = change;
    r.converged = std::isfinite(change) && change < 1e-3;
  }
  if (const auto& certs = tree.spec().certificates()) r.closed_form = certs->spectral_radius(op, p);
  return r;
}

PointSpectrumS point_spectrum_S(const LevelTree& tree, const Complex& lambda) {
  PointSpectrumS r;
  if (auto leaf = tree.first_leaf()) {
    r.verdict = "zero_only";
    r.leaf = leaf;
    r.leaf_kernel_verified = apply_forward(tree, RationalFunction::indicator(*leaf)).is_zero();
  } else {
    r.verdict = "empty";
    r.caveat = "leafless up to depth " + std::to_string(tree.depth()) +
               "; deeper leaves are not excluded";
  }
  if (lambda != Complex(0.0, 0.0)) {
    // (S f)(root) = 0 forces f(root) = 0, then f(v) = f(parent)/lambda.
    std::vector<Run<Complex>> cur;
    r.forced_zero = true;
    for (std::size_t n = 0; n < tree.depth(); ++n) {
      cur = push_to_children(tree, n, cur,
                             [&lambda](const Complex& x, std::uint64_t) { return x / lambda; });
      r.forced_zero = r.forced_zero && cur.empty();
      r.forced_levels = n + 1;
    }
  }
  return r;
}

}  // namespace treeshift
