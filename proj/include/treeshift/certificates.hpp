#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "treeshift/numeric.hpp"

namespace treeshift {

enum class ShiftKind { forward, backward };

/// Closed-form knowledge about the sup of a norm ratio sequence.
struct OperatorBound {
  bool bounded = true;
  /// Sup of the ratio sequence before the 1/p root (bounded case only).
  Quantity p_power;
  /// A level attaining the sup, when one exists.
  std::optional<std::size_t> attained_at;
  /// Closed-form ratio at level n, when known. For unbounded bounds this is
  /// the divergence certificate.
  std::function<Quantity(std::size_t n)> ratio;
  std::string rule;
};

/// Facts about an infinite tree that a finite prefix cannot establish.
/// Families registered in the gallery provide them; every value here is
/// re-checked against materialized data by the gallery self-test.
class Certificates {
 public:
  virtual ~Certificates() = default;

  virtual std::string family() const = 0;

  virtual std::optional<BigInt> gamma(std::size_t /*n*/) const { return std::nullopt; }
  virtual std::optional<BigInt> max_subtree(std::size_t /*m*/, std::size_t /*r*/) const {
    return std::nullopt;
  }
  virtual std::optional<OperatorBound> norm_bound(ShiftKind /*op*/, unsigned /*m*/,
                                                  const Exponent& /*p*/) const {
    return std::nullopt;
  }
  virtual std::optional<double> spectral_radius(ShiftKind /*op*/, const Exponent& /*p*/) const {
    return std::nullopt;
  }
  virtual std::optional<bool> leafless() const { return std::nullopt; }
  virtual std::optional<bool> gamma_diverges() const { return std::nullopt; }
  /// t = liminf (s_1 ... s_n)^(1/n) for level-regular trees.
  virtual std::optional<double> root_growth_liminf() const { return std::nullopt; }
  /// Level degrees s_{n+1} for level-regular families.
  virtual std::optional<std::uint64_t> level_degree(std::size_t /*n*/) const {
    return std::nullopt;
  }
  /// Statements recorded for the family but not machine-checked.
  virtual std::vector<std::string> claims() const { return {}; }
};

}  // namespace treeshift
