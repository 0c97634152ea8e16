#include "doctest.h"

#include <cmath>

#include "treeshift/errors.hpp"
#include "treeshift/gallery.hpp"
#include "treeshift/hardy.hpp"
#include "treeshift/hypercyclicity.hpp"
#include "treeshift/oracle.hpp"

using namespace treeshift;

namespace {

LevelTree build(const std::string& name, std::size_t depth, const Json& params = Json::object()) {
  return materialize(build_gallery(name, params).spec, depth);
}

std::size_t depth_for(const std::string& name) {
  if (name == "factorial") return 10;
  if (name == "ceil_three_halves") return 20;
  return 14;
}

}  // namespace

TEST_CASE("hypercyclicity verdicts") {
  for (const auto& info : gallery_list()) {
    auto t = build(info.name, 8);
    CHECK(hypercyclicity_verdict(t, ShiftKind::forward).verdict == "no");
    auto b = hypercyclicity_verdict(t, ShiftKind::backward);
    CHECK(b.gamma_nondecreasing);
    CHECK_MESSAGE(b.verdict == "yes", info.name);
  }
  auto path = build("homogeneous", 8, {{"q", 1}});
  auto pb = hypercyclicity_verdict(path, ShiftKind::backward);
  CHECK(pb.verdict == "no");
  CHECK(pb.reason == "gamma_bounded");

  auto leafy = materialize(per_vertex_spec(2, {{2, BigInt(3), 0}}), 5);
  auto lb = hypercyclicity_verdict(leafy, ShiftKind::backward);
  CHECK(lb.verdict == "no");
  CHECK(lb.reason == "leaf_found");
  REQUIRE(lb.leaf);
  CHECK(*lb.leaf == VertexId{2, 3});

  // No certificate: leafless prefix but nothing known about the rest.
  auto plain = materialize(per_vertex_spec(2, {{1, BigInt(0), 3}}), 6);
  CHECK(hypercyclicity_verdict(plain, ShiftKind::backward).verdict == "inconclusive");
}

TEST_CASE("right inverse of B^n") {
  auto h3 = build("homogeneous", 6, {{"q", 3}});
  auto t = kgs_right_inverse(h3, RationalFunction::indicator(root_vertex()), 2);
  CHECK(t.support_size() == 9);
  CHECK(t.at({2, 7}) == Rational(1, 9));
  CHECK_THROWS_AS(kgs_right_inverse(h3, RationalFunction::indicator({5, 0}), 2), DepthError);

  auto ceil = build("ceil_three_halves", 12);
  RationalFunction g;
  g.set({3, 0}, Rational(2));
  g.set({3, 4}, Rational(-1, 3));
  g.set({5, 11}, Rational(5));
  for (unsigned n = 1; n <= 6; ++n) {
    auto tn = kgs_right_inverse(ceil, g, n);
    CHECK(apply_backward(ceil, tn, n) == g);
  }
}

TEST_CASE("KGS suite") {
  auto h2 = build("homogeneous", 24, {{"q", 2}});
  auto r = kgs_suite(h2, 40, 10, Exponent(2), 5);
  CHECK(r.identity_passes == 40);
  CHECK(r.orbit_null_passes == 40);
  CHECK(r.bound_passes == 40);
  CHECK(r.decreasing_passes == 40);
  CHECK(r.worst_final_ratio < 0.05);
  for (unsigned n = 1; n <= 10; ++n) {
    CHECK(r.root_profile[n - 1].exact() == pow(Rational(1, 4), static_cast<unsigned long>(n)));
  }

  auto ceil = build("ceil_three_halves", 24);
  auto rc = kgs_suite(ceil, 40, 10, Exponent(1), 9);
  CHECK(rc.identity_passes == 40);
  CHECK(rc.bound_passes == 40);
  CHECK(rc.decreasing_passes == 40);

  auto again = kgs_suite(ceil, 40, 10, Exponent(1), 9);
  CHECK(again.worst_final_ratio == rc.worst_final_ratio);
}

TEST_CASE("oracle lower bounds never exceed the formula") {
  for (const auto& info : gallery_list()) {
    auto t = build(info.name, depth_for(info.name));
    for (auto op : {ShiftKind::forward, ShiftKind::backward}) {
      for (unsigned m = 1; m <= 3; ++m) {
        for (double p : {1.0, 2.0}) {
          auto r = randomized_norm_lower_bound(t, op, m, Exponent(p), 40, 3);
          CHECK_MESSAGE(r.violations == 0, info.name);
          CHECK(r.meets_formula);
          auto a = extremal_attainment(t, op, m, Exponent(p));
          CHECK_MESSAGE(a.all_equal, info.name);
        }
      }
    }
  }
}

TEST_CASE("oracle examples") {
  auto h2 = build("homogeneous", 10, {{"q", 2}});
  auto b = randomized_norm_lower_bound(h2, ShiftKind::backward, 1, Exponent(1), 500, 1);
  CHECK(b.best <= 2.0);
  CHECK(b.best >= 1.9);

  auto k3 = build("k_tree", 30, {{"k", 3}});
  auto s = randomized_norm_lower_bound(k3, ShiftKind::forward, 1, Exponent(1), 200, 1);
  // The sup 3 is approached but not attained: 3 (2D-1)/(2D+1) at depth D.
  CHECK(s.best_p_power.exact() == Rational(3 * 59, 61));
  CHECK(s.violations == 0);

  auto a = extremal_attainment(k3, ShiftKind::forward, 1, Exponent(1.5));
  CHECK(a.all_equal);
  auto seq = build("level_sequence", 12, {{"s", {1, 2, 1, 3}}});
  auto ab = extremal_attainment(seq, ShiftKind::backward, 1, Exponent(3));
  CHECK(ab.all_equal);
  const std::uint64_t s_vals[] = {1, 2, 1, 3};
  for (const auto& level : ab.levels) {
    CHECK(level.formula.exact() == pow(BigInt(s_vals[level.n % 4]), 3ul));
  }

  auto small = build("homogeneous", 2, {{"q", 2}});
  auto g = truncated_finite_support_check(small, ShiftKind::backward, Exponent(1), {-1, 0, 1, 2},
                                          1u << 20);
  CHECK(g.evaluated == 16384);
  CHECK(g.best == doctest::Approx(2.0));
  CHECK_FALSE(g.exceeded);
  CHECK(g.attained);

  auto k2 = build("k_tree", 3, {{"k", 2}});
  auto gk = truncated_finite_support_check(k2, ShiftKind::forward, Exponent(1), {-1, 0, 1, 2},
                                           1u << 20);
  CHECK(gk.best <= 2.0);
  CHECK_FALSE(gk.exceeded);

  auto path = build("homogeneous", 5, {{"q", 1}});
  for (double p : {1.0, 2.5}) {
    auto gp = truncated_finite_support_check(path, ShiftKind::forward, Exponent(p), {-1, 0, 1, 2},
                                             1u << 20);
    CHECK(gp.best == doctest::Approx(1.0));
  }
  auto deep = build("homogeneous", 3, {{"q", 2}});
  CHECK_THROWS_AS(truncated_finite_support_check(deep, ShiftKind::backward, Exponent(1),
                                                 {-1, 0, 1, 2}, 1u << 20),
                  ResourceLimitError);
}
