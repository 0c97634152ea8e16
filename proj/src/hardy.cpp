#include "treeshift/hardy.hpp"

#include <cmath>
#include <type_traits>

namespace treeshift {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded: return "bounded";
    case Verdict::unbounded: return "unbounded";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string to_string(LittleVerdict v) {
  switch (v) {
    case LittleVerdict::vanishing: return "vanishing";
    case LittleVerdict::stationary: return "stationary";
    case LittleVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

template <class V>
Quantity mean_p_power_impl(const LevelTree& tree, const TreeFunction<V>& f, const Exponent& p,
                           std::size_t n) {
  const BigInt& size = tree.gamma(n);
  const auto* runs = f.level(n);
  if (runs == nullptr) return Quantity(Rational(0));
  if constexpr (std::is_same_v<V, Rational>) {
    if (p.is_integer()) {
      Rational sum = 0;
      for (const auto& r : *runs) sum += abs_pow(r.value, p).exact() * Rational(r.count);
      return Quantity(Rational(sum / Rational(size)));
    }
  }
  double sum = 0.0;
  for (const auto& r : *runs) {
    const double share = to_double(Rational(r.count, size));
    sum += share * std::pow(abs_value(r.value), p.value());
  }
  return Quantity::approximate(sum);
}

template <class V>
NormReport hardy_norm_impl(const LevelTree& tree, const TreeFunction<V>& f, const Exponent& p) {
  check_support(tree, f);
  NormReport report;
  report.subject = "hardy_norm";
  report.p = p.value();
  report.depth = tree.depth();
  report.prefix_sup = Quantity(Rational(0));
  for (const auto& [n, runs] : f.levels()) {
    const Quantity m = mean_p_power_impl(tree, f, p, n);
    report.terms.push_back({n, m});
    if (compare(m, report.prefix_sup) > 0) {
      report.prefix_sup = m;
      report.attained_level = n;
    }
  }
  report.value_p_power = report.prefix_sup;
  report.value = root(report.prefix_sup, p);
  report.truncated = false;
  report.verdict = Verdict::bounded;
  return report;
}

template <class V>
MeanProfile little_space_impl(const LevelTree& tree, const TreeFunction<V>& f, const Exponent& p) {
  check_support(tree, f);
  MeanProfile profile;
  profile.p = p.value();
  const std::size_t last = f.evaluated_to().value_or(f.max_support_level());
  for (std::size_t n = 0; n <= last; ++n) profile.values.push_back(mean_p_power_impl(tree, f, p, n));
  if (!f.evaluated_to()) {
    // Finite support: the profile is identically zero past the last level.
    profile.verdict = LittleVerdict::vanishing;
    profile.tail_begin = profile.values.size();
    return profile;
  }
  profile.tail_begin = profile.values.size() / 2;
  const auto& tail_first = profile.values[profile.tail_begin];
  const auto& tail_last = profile.values.back();
  bool constant = true;
  bool nonincreasing = true;
  for (std::size_t n = profile.tail_begin + 1; n < profile.values.size(); ++n) {
    const int c = compare(profile.values[n], profile.values[n - 1]);
    constant = constant && c == 0;
    nonincreasing = nonincreasing && c <= 0;
  }
  if (constant) {
    profile.verdict =
        tail_last.value() == 0.0 ? LittleVerdict::vanishing : LittleVerdict::stationary;
  } else if (nonincreasing && 2.0 * tail_last.value() <= tail_first.value()) {
    profile.verdict = LittleVerdict::vanishing;
  } else {
    profile.verdict = LittleVerdict::inconclusive;
  }
  return profile;
}

}  // namespace

Quantity mean_p_power(const LevelTree& tree, const RationalFunction& f, const Exponent& p,
                      std::size_t n) {
  return mean_p_power_impl(tree, f, p, n);
}

Quantity mean_p_power(const LevelTree& tree, const ComplexFunction& f, const Exponent& p,
                      std::size_t n) {
  return mean_p_power_impl(tree, f, p, n);
}

double mean_p(const LevelTree& tree, const RationalFunction& f, const Exponent& p, std::size_t n) {
  return root(mean_p_power(tree, f, p, n), p);
}

double mean_p(const LevelTree& tree, const ComplexFunction& f, const Exponent& p, std::size_t n) {
  return root(mean_p_power(tree, f, p, n), p);
}

NormReport hardy_norm(const LevelTree& tree, const RationalFunction& f, const Exponent& p) {
  return hardy_norm_impl(tree, f, p);
}

NormReport hardy_norm(const LevelTree& tree, const ComplexFunction& f, const Exponent& p) {
  return hardy_norm_impl(tree, f, p);
}

MeanProfile little_space_profile(const LevelTree& tree, const RationalFunction& f,
                                 const Exponent& p) {
  return little_space_impl(tree, f, p);
}

MeanProfile little_space_profile(const LevelTree& tree, const ComplexFunction& f,
                                 const Exponent& p) {
  return little_space_impl(tree, f, p);
}

}  // namespace treeshift
