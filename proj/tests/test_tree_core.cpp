#include "doctest.h"

#include <random>

#include "treeshift/errors.hpp"
#include "treeshift/level_tree.hpp"

using namespace treeshift;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Naive per-vertex recount of gamma(m, v) through explicit child ranges.
BigInt brute_sub(const LevelTree& t, std::size_t m, const VertexId& v) {
  if (m == 0) return 1;
  BigInt total = 0;
  const auto kids = t.children(v);
  for (BigInt i = kids.first; i < kids.last; ++i) total += brute_sub(t, m - 1, {v.level + 1, i});
  return total;
}

void check_invariants(const LevelTree& t) {
  CHECK(t.gamma(0) == 1);
  for (std::size_t n = 0; n < t.depth(); ++n) {
    BigInt sum = 0;
    BigInt expected_first = 0;
    for (BigInt i = 0; i < t.gamma(n); ++i) {
      const auto kids = t.children({n, i});
      CHECK(kids.first == expected_first);
      expected_first = kids.last;
      sum += kids.size();
      for (BigInt c = kids.first; c < kids.last; ++c) CHECK(t.parent_index(n + 1, c) == i);
    }
    CHECK(sum == t.gamma(n + 1));
  }
  for (std::size_t m = 1; m <= t.depth(); ++m) {
    for (std::size_t r = 0; r + m <= t.depth(); ++r) {
      BigInt best = 0;
      BigInt level_sum = 0;
      for (BigInt i = 0; i < t.gamma(r); ++i) {
        const BigInt g = t.gamma_sub(m, {r, i});
        CHECK(g == brute_sub(t, m, {r, i}));
        best = std::max(best, g);
        level_sum += g;
      }
      CHECK(level_sum == t.gamma(r + m));
      CHECK(t.K(m, r) == best);
      CHECK(t.gamma_sub(m, t.argmax_subtree(m, r)) == best);
    }
  }
}

}  // namespace

TEST_CASE("homogeneous levels are powers") {
  auto t = materialize(homogeneous_spec(2), 3);
  CHECK(t.level_sizes() == ints({1, 2, 4, 8}));
  CHECK(t.total_vertices() == 15);
  CHECK(t.gamma_sub(2, {1, 1}) == 4);
  CHECK(t.K(3, 0) == 8);
  check_invariants(t);
  auto q = materialize(homogeneous_spec(5), 6);
  CHECK(q.gamma(6) == 15625);
  CHECK(q.stored_segments() == 6);
}

TEST_CASE("per-vertex overrides build an irregular tree") {
  auto spec = per_vertex_spec(1, {{0, 0, 3}, {1, 0, 3}, {2, 0, 3}, {1, 2, 2}, {3, 1, 0}});
  auto t = materialize(spec, 5);
  CHECK(t.level_sizes() == ints({1, 3, 6, 8, 7, 7}));
  CHECK(t.first_leaf()->level == 3);
  CHECK(t.first_leaf()->index == 1);
  CHECK_FALSE(t.is_leafless_up_to());
  check_invariants(t);
}

TEST_CASE("random per-vertex rules keep the invariants") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<DegreeOverride> overrides;
    std::size_t size = 1;
    for (std::size_t level = 0; level < 4; ++level) {
      std::size_t next = 0;
      for (std::size_t i = 0; i < size; ++i) {
        const std::uint64_t d = rng() % 4;
        overrides.push_back({level, BigInt(static_cast<unsigned long>(i)), d});
        next += d;
      }
      if (next == 0) {
        overrides.back().children = 1;
        next = 1;
      }
      size = next;
    }
    auto t = materialize(per_vertex_spec(1, overrides), 5);
    check_invariants(t);
  }
}

TEST_CASE("level sequences and huge compressed levels") {
  auto t = materialize(level_sequence_spec("doubling", [](std::size_t) { return 2u; }), 200);
  CHECK(t.gamma(200) == pow(BigInt(2), 200ul));
  CHECK(t.K(100, 50) == pow(BigInt(2), 100ul));
  const BigInt far = t.gamma(150) - 1;
  CHECK(t.parent_index(150, far) == t.gamma(149) - 1);
  CHECK(t.ancestor({150, far}, 150) == root_vertex());
}

TEST_CASE("errors") {
  auto t = materialize(homogeneous_spec(2), 3);
  CHECK_THROWS_AS(t.gamma(4), DepthError);
  CHECK_THROWS_AS(t.gamma_sub(2, {2, 0}), DepthError);
  CHECK_THROWS_AS(t.K(4, 0), DepthError);
  CHECK_THROWS_AS(homogeneous_spec(0), InvalidArgument);

  auto leafy = per_vertex_spec(2, {{1, 1, 0}});
  leafy.set_leafless_claim(true);
  CHECK_THROWS_AS(materialize(leafy, 3), ContradictionError);

  auto dead = per_vertex_spec(0, {});
  CHECK_THROWS_AS(materialize(dead, 2), InvalidArgument);

  auto rule = TreeSpec::from_vertex_rule(TreeSpec::Kind::per_vertex, "binary",
                                         [](std::size_t, const BigInt&, const BigInt&) { return 2u; });
  MaterializeOptions small;
  small.vertex_cap = 100;
  CHECK_THROWS_AS(materialize(rule, 10, small), ResourceLimitError);
  CHECK(materialize(rule, 4, small).gamma(4) == 16);
}
