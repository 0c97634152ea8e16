#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "treeshift/certificates.hpp"
#include "treeshift/numeric.hpp"

namespace treeshift {

using Json = nlohmann::ordered_json;

/// `count` consecutive vertices of one level, each with `degree` children.
struct DegreeRun {
  BigInt count;
  std::uint64_t degree = 0;
};

/// An infinite rooted tree described by how many children each vertex has.
///
/// Vertices are addressed by (level, index) with indices assigned breadth
/// first, leftmost first. A spec supplies either a per-vertex rule or a
/// run rule that describes a whole level as consecutive blocks of equal
/// degree; run rules let levels with astronomically many vertices be
/// materialized in compressed form.
class TreeSpec {
 public:
  enum class Kind { homogeneous, level_sequence, per_vertex, gallery };

  using VertexRule = std::function<std::uint64_t(std::size_t level, const BigInt& index,
                                                 const BigInt& level_size)>;
  using RunRule =
      std::function<std::vector<DegreeRun>(std::size_t level, const BigInt& level_size)>;

  static TreeSpec from_vertex_rule(Kind kind, std::string name, VertexRule rule);
  static TreeSpec from_run_rule(Kind kind, std::string name, RunRule rule);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// Children count of vertex `index` on `level` (a level of `level_size`
  /// vertices).
  std::uint64_t degree(std::size_t level, const BigInt& index, const BigInt& level_size) const;

  /// Whole-level description. Per-vertex rules are evaluated vertex by
  /// vertex; at most `evaluation_budget` evaluations are allowed.
  std::vector<DegreeRun> degree_runs(std::size_t level, const BigInt& level_size,
                                     const BigInt& evaluation_budget) const;
  bool has_run_rule() const { return static_cast<bool>(run_rule_); }

  const std::optional<bool>& leafless_claim() const { return leafless_claim_; }
  TreeSpec& set_leafless_claim(std::optional<bool> claim);

  const Json& params() const { return params_; }
  TreeSpec& set_params(Json params);

  const std::shared_ptr<const Certificates>& certificates() const { return certificates_; }
  TreeSpec& set_certificates(std::shared_ptr<const Certificates> certs);

  Json to_json() const;

 private:
  TreeSpec() = default;

  Kind kind_ = Kind::per_vertex;
  std::string name_;
  VertexRule vertex_rule_;
  RunRule run_rule_;
  std::optional<bool> leafless_claim_;
  Json params_ = Json::object();
  std::shared_ptr<const Certificates> certificates_;
};

std::string to_string(TreeSpec::Kind kind);

/// Every vertex has q children.
TreeSpec homogeneous_spec(std::uint64_t q);

/// Every vertex on level n has s(n + 1) children.
TreeSpec level_sequence_spec(std::string name, std::function<std::uint64_t(std::size_t)> s);

/// Explicit per-vertex children counts over a default.
struct DegreeOverride {
  std::size_t level = 0;
  BigInt index;
  std::uint64_t children = 0;
};
TreeSpec per_vertex_spec(std::uint64_t default_degree, std::vector<DegreeOverride> overrides);

}  // namespace treeshift
