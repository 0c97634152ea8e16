#include "treeshift/hypercyclicity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "treeshift/hardy.hpp"

namespace treeshift {

HypercyclicityVerdict hypercyclicity_verdict(const LevelTree& tree, ShiftKind op) {
  HypercyclicityVerdict v;
  v.op = op;
  v.depth = tree.depth();
  v.gamma_nondecreasing = true;
  for (std::size_t n = 1; n <= tree.depth(); ++n) {
    v.gamma_nondecreasing = v.gamma_nondecreasing && tree.gamma(n) >= tree.gamma(n - 1);
  }
  const std::size_t tail = std::min<std::size_t>(5, tree.depth() + 1);
  for (std::size_t n = tree.depth() + 1 - tail; n <= tree.depth(); ++n) {
    v.gamma_tail.push_back(tree.gamma(n));
  }

  if (op == ShiftKind::forward) {
    v.verdict = "no";
    v.reason = "S_never";
    v.evidence = "||S^N f - g|| >= |g(root)| for every f, every N >= 1 and every g with g(root) != 0";
    return v;
  }
  if (auto leaf = tree.first_leaf()) {
    v.verdict = "no";
    v.reason = "leaf_found";
    v.leaf = leaf;
    v.evidence = "a leaf has no n-children, so the orbit of every f vanishes at it";
    return v;
  }
  const auto& certs = tree.spec().certificates();
  const bool leafless = (certs && certs->leafless().value_or(false)) ||
                        tree.spec().leafless_claim().value_or(false);
  if (!leafless) {
    v.verdict = "inconclusive";
    v.reason = "depth_limited";
    v.evidence = "leafless up to depth " + std::to_string(tree.depth()) +
                 " but no leafless certificate";
    return v;
  }
  const auto diverges = certs ? certs->gamma_diverges() : std::nullopt;
  if (!diverges) {
    v.verdict = "inconclusive";
    v.reason = "depth_limited";
    v.evidence = "gamma(n) -> infinity cannot be decided from a prefix; gamma(" +
                 std::to_string(tree.depth()) + ") = " + to_string(tree.gamma(tree.depth()));
    return v;
  }
  v.verdict = *diverges ? "yes" : "no";
  v.reason = *diverges ? "gamma_divergent" : "gamma_bounded";
  v.evidence = (*diverges ? "gamma(n) -> infinity by the closed form of " : "gamma is eventually "
                                                                             "constant for ") +
               certs->family();
  return v;
}

RationalFunction kgs_right_inverse(const LevelTree& tree, const RationalFunction& g, unsigned n) {
  check_support(tree, g);
  if (n == 0) return g;
  if (!g.is_zero() && g.max_support_level() + n > tree.depth()) {
    throw DepthError("T_" + std::to_string(n) + " of a function supported up to level " +
                     std::to_string(g.max_support_level()) + " leaves depth " +
                     std::to_string(tree.depth()));
  }
  RationalFunction out;
  for (const auto& [s, runs] : g.levels()) {
    const CountProfile& counts = tree.subtree_counts(n, s);
    std::vector<Run<Rational>> cur;
    auto c = counts.begin();
    for (const auto& run : runs) {
      while (c != counts.end() && c->end() <= run.first) ++c;
      for (auto it = c; it != counts.end() && it->first < run.end(); ++it) {
        if (it->value == 0) {
          throw InvalidArgument("vertex (" + std::to_string(s) + ", " +
                                to_string(std::max(run.first, it->first)) + ") has no " +
                                std::to_string(n) + "-children");
        }
        const BigInt lo = std::max(run.first, it->first);
        const BigInt hi = std::min(run.end(), it->end());
        cur.push_back({lo, hi - lo, run.value / Rational(it->value)});
      }
    }
    for (unsigned i = 0; i < n; ++i) {
      cur = push_to_children(tree, s + i, cur, [](const Rational& x, std::uint64_t) { return x; });
    }
    out.add_to_level(s + n, std::move(cur));
  }
  return out;
}

RationalFunction random_rational_function(const LevelTree& tree, std::size_t max_level,
                                          std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  max_level = std::min(max_level, tree.depth());
  auto value = [&rng] {
    long num = static_cast<long>(rng() % 11) - 5;
    if (num == 0) num = 1;
    return make_rational(BigInt(num), BigInt(1 + static_cast<long>(rng() % 4)));
  };
  RationalFunction f;
  const int points = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < points; ++i) {
    const std::size_t level = rng() % (max_level + 1);
    const BigInt& size = tree.gamma(level);
    const BigInt first = random_below(size, rng);
    if (rng() % 3 == 0) {
      // A block of equal values, possibly covering the rest of the level.
      const BigInt count = 1 + random_below(size - first, rng);
      std::vector<Run<Rational>> runs{{first, count, value()}};
      if (const auto* cur = f.level(level)) runs.insert(runs.end(), cur->begin(), cur->end());
      f.set_level(level, std::move(runs));
    } else {
      f.set({level, first}, value());
    }
  }
  if (f.is_zero()) f.set(root_vertex(), Rational(1));
  return f;
}

KgsReport kgs_suite(const LevelTree& tree, std::size_t samples, unsigned n_max, const Exponent& p,
                    std::uint64_t seed) {
  if (n_max == 0) throw InvalidArgument("n_max must be >= 1");
  if (n_max > tree.depth()) {
    throw DepthError("n_max = " + std::to_string(n_max) + " exceeds depth " +
                     std::to_string(tree.depth()));
  }
  KgsReport r;
  r.p = p.value();
  r.depth = tree.depth();
  r.n_max = n_max;
  r.seed = seed;
  r.samples = samples;
  const std::size_t top = std::min(tree.depth() / 2, tree.depth() - n_max);

  for (unsigned n = 1; n <= n_max; ++n) {
    const auto t = kgs_right_inverse(tree, RationalFunction::indicator(root_vertex()), n);
    r.root_profile.push_back(mean_p_power(tree, t, p, n));
  }

  for (std::size_t i = 0; i < samples; ++i) {
    KgsSample s;
    s.seed = i;
    const auto g = random_rational_function(tree, top, seed, i);
    s.max_support_level = g.max_support_level();
    s.g_norm_p = *hardy_norm(tree, g, p).value_p_power;
    s.orbit_null = apply_backward(tree, g, static_cast<unsigned>(s.max_support_level + 1)).is_zero();

    s.decreasing = true;
    bool identity = true;
    bool bound = true;
    for (unsigned n = 1; n <= n_max; ++n) {
      KgsStep step;
      step.n = n;
      const auto t = kgs_right_inverse(tree, g, n);
      step.identity = apply_backward(tree, t, n) == g;
      step.norm_p = *hardy_norm(tree, t, p).value_p_power;
      Rational worst(0);
      for (std::size_t lvl = 0; lvl <= s.max_support_level; ++lvl) {
        worst = std::max(worst, make_rational(tree.gamma(lvl), tree.gamma(lvl + n)));
      }
      step.bound_p = Quantity(worst) * s.g_norm_p;
      step.bound_holds = compare(step.norm_p, step.bound_p) <= 0;
      if (!s.steps.empty() && compare(step.norm_p, s.steps.back().norm_p) > 0) s.decreasing = false;
      identity = identity && step.identity;
      bound = bound && step.bound_holds;
      s.steps.push_back(std::move(step));
    }
    r.identity_passes += identity;
    r.orbit_null_passes += s.orbit_null;
    r.bound_passes += bound;
    r.decreasing_passes += s.decreasing;
    const double ratio = root(s.steps.back().norm_p, p) / root(s.g_norm_p, p);
    r.worst_final_ratio = std::max(r.worst_final_ratio, ratio);
    r.details.push_back(std::move(s));
  }
  return r;
}

}  // namespace treeshift
