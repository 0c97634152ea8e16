#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "treeshift/numeric.hpp"
#include "treeshift/tree_spec.hpp"

namespace treeshift {

/// Vertex address: level |v| and position within the level.
struct VertexId {
  std::size_t level = 0;
  BigInt index = 0;

  friend bool operator==(const VertexId& a, const VertexId& b) {
    return a.level == b.level && a.index == b.index;
  }
  friend bool operator<(const VertexId& a, const VertexId& b) {
    return a.level != b.level ? a.level < b.level : a.index < b.index;
  }
};

inline VertexId root_vertex() { return VertexId{0, 0}; }

/// Half-open index range [first, last) within one level.
struct IndexRange {
  BigInt first;
  BigInt last;
  BigInt size() const { return last - first; }
  bool empty() const { return last <= first; }
};

/// A maximal block of consecutive equal-degree vertices of one level. Its
/// children are the contiguous block starting at `first_child`.
struct Segment {
  BigInt first;
  BigInt count;
  std::uint64_t degree = 0;
  BigInt first_child;

  BigInt end() const { return first + count; }
  BigInt child_end() const { return first_child + count * degree; }
};

/// `count` consecutive indices starting at `first` that share `value`.
template <class V>
struct Run {
  BigInt first;
  BigInt count;
  V value;

  BigInt end() const { return first + count; }
};

/// Piecewise-constant description of a full level.
using CountProfile = std::vector<Run<BigInt>>;

/// Storage cap, read from TREESHIFT_VERTEX_CAP when set (default 1e8).
BigInt default_vertex_cap();

struct MaterializeOptions {
  /// Upper bound on stored segments plus per-vertex rule evaluations.
  BigInt vertex_cap = default_vertex_cap();
};

/// Depth-D prefix of an infinite tree, stored level by level as segments.
///
/// Immutable after construction. Subtree counts are memoized lazily behind
/// a mutex, so concurrent readers are safe.
class LevelTree {
 public:
  LevelTree(LevelTree&&) noexcept;
  LevelTree& operator=(LevelTree&&) noexcept;
  ~LevelTree();

  const TreeSpec& spec() const { return spec_; }
  std::size_t depth() const { return depth_; }

  /// gamma(n): number of vertices on level n.
  const BigInt& gamma(std::size_t n) const;
  const std::vector<BigInt>& level_sizes() const { return level_sizes_; }
  BigInt total_vertices() const;
  std::size_t stored_segments() const;

  /// Segments of a level below the deepest one (level < depth).
  std::span<const Segment> segments(std::size_t level) const;

  bool contains(const VertexId& v) const;
  void check_vertex(const VertexId& v) const;

  /// gamma(1, v); v must lie above the deepest level.
  std::uint64_t children_count(const VertexId& v) const;
  BigInt parent_index(std::size_t level, const BigInt& index) const;
  VertexId parent(const VertexId& v) const;
  /// m-parent of v (v itself for m = 0); requires m <= |v|.
  VertexId ancestor(const VertexId& v, std::size_t m) const;

  /// Index of the first child of vertex `index` on `level`; for
  /// index == gamma(level) this is gamma(level + 1).
  BigInt child_offset(std::size_t level, const BigInt& index) const;
  IndexRange children(const VertexId& v) const;
  /// All m-children of the vertices `range` on `level`, itself a range.
  IndexRange descendants(std::size_t level, const IndexRange& range, std::size_t m) const;

  /// gamma(m, v): number of m-children of v.
  BigInt gamma_sub(std::size_t m, const VertexId& v) const;
  /// K(m, r) = max of gamma(m, v) over level r.
  BigInt K(std::size_t m, std::size_t r) const;
  /// Leftmost vertex of level r attaining K(m, r).
  VertexId argmax_subtree(std::size_t m, std::size_t r) const;
  /// gamma(m, .) over the whole level r, as runs.
  const CountProfile& subtree_counts(std::size_t m, std::size_t r) const;

  bool is_leafless_up_to() const;
  std::optional<VertexId> first_leaf() const;

 private:
  friend LevelTree materialize(const TreeSpec& spec, std::size_t depth,
                               const MaterializeOptions& options);
  struct Memo;

  LevelTree(TreeSpec spec, std::size_t depth);
  const Segment& segment_of(std::size_t level, const BigInt& index) const;

  TreeSpec spec_;
  std::size_t depth_ = 0;
  std::vector<BigInt> level_sizes_;
  std::vector<std::vector<Segment>> segments_;
  std::unique_ptr<Memo> memo_;
};

/// Breadth-first, leftmost-first materialization of levels 0..depth.
LevelTree materialize(const TreeSpec& spec, std::size_t depth,
                      const MaterializeOptions& options = {});

/// Sums a sparse run function on level `parent_level + 1` over the children
/// of each vertex of `parent_level` (one application of the backward shift).
template <class V>
std::vector<Run<V>> sum_over_children(const LevelTree& tree, std::size_t parent_level,
                                      const std::vector<Run<V>>& child_runs);

/// Sorts, sums overlapping pieces, drops zeros and merges equal neighbours.
template <class V>
std::vector<Run<V>> normalize_runs(std::vector<Run<V>> pieces);

}  // namespace treeshift
