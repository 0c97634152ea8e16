#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "treeshift/errors.hpp"
#include "treeshift/level_tree.hpp"

namespace treeshift {

/// Finitely supported function on the vertices of a tree, stored per level
/// as sorted, disjoint, zero-free runs of equal values. Two value types are
/// used: Rational for exact identities, Complex for lambda-dependent ones.
template <class V>
class TreeFunction {
 public:
  using Runs = std::vector<Run<V>>;

  TreeFunction() = default;

  static TreeFunction indicator(const VertexId& v, const V& value = V(1)) {
    TreeFunction f;
    f.set(v, value);
    return f;
  }

  /// `value` on every vertex of a level with `size` vertices.
  static TreeFunction level_constant(std::size_t level, const BigInt& size, const V& value) {
    TreeFunction f;
    f.set_level(level, {Run<V>{BigInt(0), size, value}});
    return f;
  }

  const std::map<std::size_t, Runs>& levels() const { return levels_; }

  /// Runs of level n, or nullptr when f vanishes there.
  const Runs* level(std::size_t n) const {
    auto it = levels_.find(n);
    return it == levels_.end() ? nullptr : &it->second;
  }

  void set_level(std::size_t n, Runs runs) {
    runs = normalize_runs(std::move(runs));
    if (runs.empty()) {
      levels_.erase(n);
    } else {
      levels_[n] = std::move(runs);
    }
  }

  void add_to_level(std::size_t n, Runs runs) {
    if (auto it = levels_.find(n); it != levels_.end()) {
      runs.insert(runs.end(), it->second.begin(), it->second.end());
    }
    set_level(n, std::move(runs));
  }

  /// Overwrites the value at v.
  void set(const VertexId& v, const V& value) {
    if (v.index < 0) throw InvalidArgument("negative vertex index");
    Runs out;
    if (const Runs* cur = level(v.level)) {
      for (const auto& r : *cur) {
        if (v.index < r.first || v.index >= r.end()) {
          out.push_back(r);
          continue;
        }
        if (v.index > r.first) out.push_back({r.first, v.index - r.first, r.value});
        if (r.end() > v.index + 1) out.push_back({v.index + 1, r.end() - v.index - 1, r.value});
      }
    }
    out.push_back({v.index, BigInt(1), value});
    set_level(v.level, std::move(out));
  }

  V at(const VertexId& v) const {
    const Runs* runs = level(v.level);
    if (runs == nullptr) return V(0);
    auto it = std::upper_bound(runs->begin(), runs->end(), v.index,
                               [](const BigInt& x, const Run<V>& r) { return x < r.first; });
    if (it == runs->begin()) return V(0);
    --it;
    return v.index < it->end() ? it->value : V(0);
  }

  bool is_zero() const { return levels_.empty(); }

  /// Largest level carrying a nonzero value (0 for the zero function).
  std::size_t max_support_level() const { return levels_.empty() ? 0 : levels_.rbegin()->first; }
  std::size_t min_support_level() const { return levels_.empty() ? 0 : levels_.begin()->first; }

  BigInt support_size() const {
    BigInt total = 0;
    for (const auto& [n, runs] : levels_) {
      for (const auto& r : runs) total += r.count;
    }
    return total;
  }

  /// Set for truncations of infinite rule-generated functions: the depth
  /// up to which the rule was evaluated.
  const std::optional<std::size_t>& evaluated_to() const { return evaluated_to_; }
  void set_evaluated_to(std::optional<std::size_t> depth) { evaluated_to_ = depth; }

  TreeFunction scaled(const V& c) const {
    TreeFunction out;
    if (is_zero_value(c)) return out;
    for (const auto& [n, runs] : levels_) {
      Runs scaled_runs = runs;
      for (auto& r : scaled_runs) r.value = r.value * c;
      out.set_level(n, std::move(scaled_runs));
    }
    out.evaluated_to_ = evaluated_to_;
    return out;
  }

  friend TreeFunction operator+(const TreeFunction& a, const TreeFunction& b) {
    TreeFunction out = a;
    for (const auto& [n, runs] : b.levels_) out.add_to_level(n, runs);
    out.evaluated_to_.reset();
    return out;
  }

  friend TreeFunction operator-(const TreeFunction& a) { return a.scaled(V(-1)); }
  friend TreeFunction operator-(const TreeFunction& a, const TreeFunction& b) { return a + (-b); }

  friend bool operator==(const TreeFunction& a, const TreeFunction& b) {
    if (a.levels_.size() != b.levels_.size()) return false;
    for (auto ia = a.levels_.begin(), ib = b.levels_.begin(); ia != a.levels_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || ia->second.size() != ib->second.size()) return false;
      for (std::size_t i = 0; i < ia->second.size(); ++i) {
        const auto& x = ia->second[i];
        const auto& y = ib->second[i];
        if (x.first != y.first || x.count != y.count || !(x.value == y.value)) return false;
      }
    }
    return true;
  }

 private:
  static bool is_zero_value(const V& v) { return treeshift::is_zero(v); }

  std::map<std::size_t, Runs> levels_;
  std::optional<std::size_t> evaluated_to_;
};

using RationalFunction = TreeFunction<Rational>;
using ComplexFunction = TreeFunction<Complex>;

inline ComplexFunction to_complex(const RationalFunction& f) {
  ComplexFunction out;
  for (const auto& [n, runs] : f.levels()) {
    ComplexFunction::Runs c;
    c.reserve(runs.size());
    for (const auto& r : runs) c.push_back({r.first, r.count, Complex(to_double(r.value), 0.0)});
    out.set_level(n, std::move(c));
  }
  out.set_evaluated_to(f.evaluated_to());
  return out;
}

/// Throws unless every supported vertex of f exists in the tree.
template <class V>
void check_support(const LevelTree& tree, const TreeFunction<V>& f) {
  for (const auto& [n, runs] : f.levels()) {
    if (n > tree.depth()) {
      throw DepthError("function is supported on level " + std::to_string(n) +
                       " beyond depth " + std::to_string(tree.depth()));
    }
    if (runs.back().end() > tree.gamma(n)) {
      throw InvalidArgument("function is supported outside level " + std::to_string(n));
    }
  }
}

}  // namespace treeshift
