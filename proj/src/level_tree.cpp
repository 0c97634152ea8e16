#include "treeshift/level_tree.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <mutex>

#include "treeshift/errors.hpp"

namespace treeshift {

struct LevelTree::Memo {
  std::mutex mutex;
  // counts[m][r] = gamma(m, .) on level r, sparse (missing indices are 0).
  std::deque<std::vector<CountProfile>> counts;
};

BigInt default_vertex_cap() {
  if (const char* env = std::getenv("TREESHIFT_VERTEX_CAP"); env != nullptr && *env != '\0') {
    BigInt cap;
    if (cap.set_str(env, 10) != 0 || cap <= 0) {
      throw InvalidArgument(std::string("TREESHIFT_VERTEX_CAP is not a positive integer: ") + env);
    }
    return cap;
  }
  return BigInt(100000000);
}

LevelTree::LevelTree(TreeSpec spec, std::size_t depth)
    : spec_(std::move(spec)), depth_(depth), memo_(std::make_unique<Memo>()) {}

LevelTree::LevelTree(LevelTree&&) noexcept = default;
LevelTree& LevelTree::operator=(LevelTree&&) noexcept = default;
LevelTree::~LevelTree() = default;

LevelTree materialize(const TreeSpec& spec, std::size_t depth, const MaterializeOptions& options) {
  LevelTree tree(spec, depth);
  tree.level_sizes_.reserve(depth + 1);
  tree.level_sizes_.emplace_back(1);
  tree.segments_.resize(depth);
  BigInt used = 0;
  for (std::size_t n = 0; n < depth; ++n) {
    const BigInt& size = tree.level_sizes_[n];
    const BigInt budget = options.vertex_cap - used;
    auto runs = spec.degree_runs(n, size, budget);
    if (!spec.has_run_rule()) used += size;

    auto& segs = tree.segments_[n];
    BigInt cursor = 0;
    BigInt child_cursor = 0;
    for (const auto& run : runs) {
      if (run.count <= 0) throw ContradictionError("degree rule produced an empty run");
      if (run.degree == 0 && spec.leafless_claim().value_or(false)) {
        throw ContradictionError("tree declared leafless but vertex (" + std::to_string(n) +
                                 ", " + cursor.get_str() + ") has no children");
      }
      if (!segs.empty() && segs.back().degree == run.degree) {
        segs.back().count += run.count;
      } else {
        segs.push_back(Segment{cursor, run.count, run.degree, child_cursor});
      }
      cursor += run.count;
      child_cursor += run.count * run.degree;
    }
    if (cursor != size) {
      throw ContradictionError("degree rule covers " + cursor.get_str() + " vertices of level " +
                               std::to_string(n) + " which has " + size.get_str());
    }
    if (child_cursor == 0) {
      throw InvalidArgument("level " + std::to_string(n + 1) +
                            " is empty: the described tree is finite");
    }
    used += segs.size();
    if (used > options.vertex_cap) {
      throw ResourceLimitError("materialization exceeds the vertex cap of " +
                               options.vertex_cap.get_str() + " at level " + std::to_string(n));
    }
    tree.level_sizes_.push_back(child_cursor);
  }
  return tree;
}

const BigInt& LevelTree::gamma(std::size_t n) const {
  if (n > depth_) {
    throw DepthError("level " + std::to_string(n) + " is beyond depth " + std::to_string(depth_));
  }
  return level_sizes_[n];
}

BigInt LevelTree::total_vertices() const {
  BigInt total = 0;
  for (const auto& s : level_sizes_) total += s;
  return total;
}

std::size_t LevelTree::stored_segments() const {
  std::size_t total = 0;
  for (const auto& level : segments_) total += level.size();
  return total;
}

std::span<const Segment> LevelTree::segments(std::size_t level) const {
  if (level >= depth_) {
    throw DepthError("children of level " + std::to_string(level) +
                     " are not materialized (depth " + std::to_string(depth_) + ")");
  }
  return segments_[level];
}

bool LevelTree::contains(const VertexId& v) const {
  return v.level <= depth_ && v.index >= 0 && v.index < level_sizes_[v.level];
}

void LevelTree::check_vertex(const VertexId& v) const {
  if (v.level > depth_) {
    throw DepthError("vertex level " + std::to_string(v.level) + " is beyond depth " +
                     std::to_string(depth_));
  }
  if (v.index < 0 || v.index >= level_sizes_[v.level]) {
    throw InvalidArgument("vertex index " + v.index.get_str() + " outside level " +
                          std::to_string(v.level));
  }
}

const Segment& LevelTree::segment_of(std::size_t level, const BigInt& index) const {
  const auto segs = segments(level);
  auto it = std::upper_bound(segs.begin(), segs.end(), index,
                             [](const BigInt& x, const Segment& s) { return x < s.first; });
  if (it == segs.begin()) throw InvalidArgument("vertex index outside its level");
  --it;
  if (index >= it->end()) throw InvalidArgument("vertex index outside its level");
  return *it;
}

std::uint64_t LevelTree::children_count(const VertexId& v) const {
  check_vertex(v);
  return segment_of(v.level, v.index).degree;
}

BigInt LevelTree::child_offset(std::size_t level, const BigInt& index) const {
  if (level >= depth_) {
    throw DepthError("children of level " + std::to_string(level) + " are not materialized");
  }
  if (index == level_sizes_[level]) return level_sizes_[level + 1];
  const Segment& s = segment_of(level, index);
  return s.first_child + (index - s.first) * s.degree;
}

BigInt LevelTree::parent_index(std::size_t level, const BigInt& index) const {
  if (level == 0) throw InvalidArgument("the root has no parent");
  check_vertex(VertexId{level, index});
  const auto segs = segments(level - 1);
  // Last segment with children whose first child is <= index.
  auto it = std::upper_bound(segs.begin(), segs.end(), index, [](const BigInt& x, const Segment& s) {
    return x < s.first_child;
  });
  while (it != segs.begin()) {
    --it;
    if (it->degree > 0 && index < it->child_end()) {
      return it->first + (index - it->first_child) / it->degree;
    }
  }
  throw ContradictionError("no parent found for vertex on level " + std::to_string(level));
}

VertexId LevelTree::parent(const VertexId& v) const {
  return VertexId{v.level - 1, parent_index(v.level, v.index)};
}

VertexId LevelTree::ancestor(const VertexId& v, std::size_t m) const {
  if (m > v.level) throw InvalidArgument("vertex has no " + std::to_string(m) + "-parent");
  VertexId cur = v;
  for (std::size_t i = 0; i < m; ++i) cur = parent(cur);
  return cur;
}

IndexRange LevelTree::children(const VertexId& v) const {
  check_vertex(v);
  return IndexRange{child_offset(v.level, v.index), child_offset(v.level, v.index + 1)};
}

IndexRange LevelTree::descendants(std::size_t level, const IndexRange& range,
                                  std::size_t m) const {
  if (level + m > depth_) {
    throw DepthError(std::to_string(m) + "-children of level " + std::to_string(level) +
                     " lie beyond depth " + std::to_string(depth_));
  }
  IndexRange cur = range;
  for (std::size_t i = 0; i < m; ++i) {
    if (cur.empty()) {
      const BigInt at = child_offset(level + i, cur.first);
      cur = IndexRange{at, at};
      continue;
    }
    cur = IndexRange{child_offset(level + i, cur.first), child_offset(level + i, cur.last)};
  }
  return cur;
}

const CountProfile& LevelTree::subtree_counts(std::size_t m, std::size_t r) const {
  if (r + m > depth_) {
    throw DepthError("gamma(" + std::to_string(m) + ", v) for level " + std::to_string(r) +
                     " needs depth " + std::to_string(r + m) + " > " + std::to_string(depth_));
  }
  std::lock_guard<std::mutex> lock(memo_->mutex);
  auto& counts = memo_->counts;
  if (counts.empty()) {
    std::vector<CountProfile> base(depth_ + 1);
    for (std::size_t level = 0; level <= depth_; ++level) {
      base[level] = {Run<BigInt>{BigInt(0), level_sizes_[level], BigInt(1)}};
    }
    counts.push_back(std::move(base));
  }
  while (counts.size() <= m) {
    const std::size_t k = counts.size();
    const auto& prev = counts.back();
    std::vector<CountProfile> next(depth_ + 1 - k);
    for (std::size_t level = 0; level + k <= depth_; ++level) {
      next[level] = sum_over_children(*this, level, prev[level + 1]);
    }
    counts.push_back(std::move(next));
  }
  return counts[m][r];
}

BigInt LevelTree::gamma_sub(std::size_t m, const VertexId& v) const {
  check_vertex(v);
  const auto& runs = subtree_counts(m, v.level);
  auto it = std::upper_bound(runs.begin(), runs.end(), v.index,
                             [](const BigInt& x, const Run<BigInt>& run) { return x < run.first; });
  if (it == runs.begin()) return 0;
  --it;
  return v.index < it->end() ? it->value : BigInt(0);
}

BigInt LevelTree::K(std::size_t m, std::size_t r) const {
  BigInt best = 0;
  for (const auto& run : subtree_counts(m, r)) best = std::max(best, run.value);
  return best;
}

VertexId LevelTree::argmax_subtree(std::size_t m, std::size_t r) const {
  const auto& runs = subtree_counts(m, r);
  BigInt best = 0;
  BigInt where = 0;
  for (const auto& run : runs) {
    if (run.value > best) {
      best = run.value;
      where = run.first;
    }
  }
  return VertexId{r, where};
}

bool LevelTree::is_leafless_up_to() const { return !first_leaf().has_value(); }

std::optional<VertexId> LevelTree::first_leaf() const {
  for (std::size_t level = 0; level < depth_; ++level) {
    for (const auto& s : segments_[level]) {
      if (s.degree == 0) return VertexId{level, s.first};
    }
  }
  return std::nullopt;
}

template <class V>
std::vector<Run<V>> normalize_runs(std::vector<Run<V>> pieces) {
  std::erase_if(pieces, [](const Run<V>& r) { return r.count <= 0 || is_zero(r.value); });
  std::sort(pieces.begin(), pieces.end(),
            [](const Run<V>& a, const Run<V>& b) { return a.first < b.first; });
  bool disjoint = true;
  for (std::size_t i = 1; i < pieces.size() && disjoint; ++i) {
    disjoint = pieces[i - 1].end() <= pieces[i].first;
  }
  std::vector<Run<V>> out;
  auto emit = [&out](const BigInt& first, const BigInt& count, const V& value) {
    if (count <= 0 || is_zero(value)) return;
    if (!out.empty() && out.back().end() == first && out.back().value == value) {
      out.back().count += count;
    } else {
      out.push_back(Run<V>{first, count, value});
    }
  };
  if (disjoint) {
    for (const auto& p : pieces) emit(p.first, p.count, p.value);
    return out;
  }
  // Sweep over elementary intervals between piece boundaries.
  std::vector<BigInt> cuts;
  cuts.reserve(2 * pieces.size());
  for (const auto& p : pieces) {
    cuts.push_back(p.first);
    cuts.push_back(p.end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<std::size_t> active;
  std::size_t next = 0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const BigInt& lo = cuts[c];
    const BigInt& hi = cuts[c + 1];
    std::erase_if(active, [&](std::size_t i) { return pieces[i].end() <= lo; });
    while (next < pieces.size() && pieces[next].first <= lo) active.push_back(next++);
    if (active.empty()) continue;
    V sum = pieces[active.front()].value;
    for (std::size_t k = 1; k < active.size(); ++k) sum = sum + pieces[active[k]].value;
    emit(lo, hi - lo, sum);
  }
  return out;
}

template <class V>
std::vector<Run<V>> sum_over_children(const LevelTree& tree, std::size_t parent_level,
                                      const std::vector<Run<V>>& child_runs) {
  const auto segs = tree.segments(parent_level);
  std::vector<Run<V>> pieces;
  for (const auto& run : child_runs) {
    if (run.count <= 0) continue;
    const BigInt a = run.first;
    const BigInt b = run.end();
    auto it = std::partition_point(segs.begin(), segs.end(),
                                   [&a](const Segment& s) { return s.child_end() <= a; });
    for (; it != segs.end() && it->first_child < b; ++it) {
      const Segment& s = *it;
      if (s.degree == 0) continue;
      const BigInt d(static_cast<unsigned long>(s.degree));
      const BigInt lo = std::max(a, s.first_child);
      const BigInt hi = std::min(b, s.child_end());
      if (lo >= hi) continue;
      const BigInt rel_lo = lo - s.first_child;
      const BigInt rel_hi = hi - s.first_child;
      const BigInt t_first = floor_div(rel_lo, d);
      const BigInt t_last = floor_div(rel_hi - 1, d);
      if (t_first == t_last) {
        pieces.push_back({s.first + t_first, BigInt(1), scale(run.value, hi - lo)});
        continue;
      }
      const BigInt full_lo = ceil_div(rel_lo, d);
      const BigInt full_hi = floor_div(rel_hi, d);
      if (full_lo != t_first) {
        pieces.push_back(
            {s.first + t_first, BigInt(1), scale(run.value, d * (t_first + 1) - rel_lo)});
      }
      if (full_hi > full_lo) {
        pieces.push_back({s.first + full_lo, full_hi - full_lo, scale(run.value, d)});
      }
      if (full_hi == t_last) {
        pieces.push_back({s.first + t_last, BigInt(1), scale(run.value, rel_hi - d * t_last)});
      }
    }
  }
  return normalize_runs(std::move(pieces));
}

template std::vector<Run<BigInt>> normalize_runs(std::vector<Run<BigInt>>);
template std::vector<Run<Rational>> normalize_runs(std::vector<Run<Rational>>);
template std::vector<Run<Complex>> normalize_runs(std::vector<Run<Complex>>);
template std::vector<Run<BigInt>> sum_over_children(const LevelTree&, std::size_t,
                                                    const std::vector<Run<BigInt>>&);
template std::vector<Run<Rational>> sum_over_children(const LevelTree&, std::size_t,
                                                      const std::vector<Run<Rational>>&);
template std::vector<Run<Complex>> sum_over_children(const LevelTree&, std::size_t,
                                                     const std::vector<Run<Complex>>&);

}  // namespace treeshift
