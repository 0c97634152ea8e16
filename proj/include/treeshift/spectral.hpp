#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "treeshift/hardy.hpp"
#include "treeshift/level_tree.hpp"
#include "treeshift/norm_report.hpp"
#include "treeshift/shift.hpp"
#include "treeshift/tree_function.hpp"

namespace treeshift {

/// Absolute residual tolerance for complex-valued witnesses.
inline constexpr double kWitnessTolerance = 1e-10;

/// A constructed function plus the deviation from the identity it certifies.
struct WitnessReport {
  std::string kind;
  std::string identity;
  /// "verified", "residual_too_large" or "no_solution".
  std::string status;
  double p = 1.0;

  bool exact = false;
  /// The witness in exact mode (rational lambda).
  RationalFunction exact_witness;
  /// The witness in complex mode; also filled in exact mode.
  ComplexFunction witness;

  /// max |lhs - rhs| over the checked levels [region_begin, region_end).
  double residual = 0.0;
  std::optional<Rational> exact_residual;
  std::size_t region_begin = 0;
  std::size_t region_end = 0;
  /// Vertices where the identity fails beyond tolerance (first one only).
  std::optional<VertexId> failure;

  /// M_p^p(n, witness) by level, and the closed-form value it must match.
  std::vector<Quantity> profile;
  std::vector<Quantity> expected_profile;
  bool profile_ok = true;
  std::vector<std::string> notes;
};

/// f(root) = 1, f(v) = lambda^|v| / product of gamma(1, u) over the proper
/// ancestors u of v; checks B f = lambda f on levels below the depth.
WitnessReport eigenfunction_B(const LevelTree& tree, const Complex& lambda, const Exponent& p);
WitnessReport eigenfunction_B(const LevelTree& tree, const Rational& lambda, const Exponent& p);

enum class HardyMode { Hp, Hp0 };
HardyMode parse_hardy_mode(const std::string& text);
std::string to_string(HardyMode mode);

struct MembershipReport {
  /// "member_witnessed", "boundary" or "not_witnessed".
  std::string verdict;
  std::string reason;
  double modulus = 0.0;
  /// liminf of (s_1...s_n)^(1/n) for level-regular trees, with its source.
  std::optional<double> t;
  std::string t_source;
  std::size_t window_begin = 0;
  std::size_t window_end = 0;
  std::optional<double> norm_B;
  double eigen_residual = 0.0;
};

MembershipReport point_spectrum_membership_B(const LevelTree& tree, const Complex& lambda,
                                             const Exponent& p, HardyMode mode);

/// Running minimum of (s_1...s_n)^(1/n) over the last half of the levels.
struct RootGrowth {
  double estimate = 0.0;
  std::size_t window_begin = 0;
  std::size_t window_end = 0;
};
RootGrowth root_growth_estimate(const LevelTree& tree);

struct SpectralReport {
  ShiftKind op = ShiftKind::forward;
  double p = 1.0;
  std::size_t depth = 0;
  std::vector<NormReport> power_norms;
  std::vector<double> radius_sequence;
  double radius_estimate = 0.0;
  bool converged = false;
  double last_relative_change = 0.0;
  bool any_truncated = false;
  std::optional<double> closed_form;
};

/// ||T^m||^(1/m) for m = 1..max_power. The estimate is the minimum of the
/// sequence; convergence means a relative change below 1e-3 across the
/// last three values.
SpectralReport spectral_radius(const LevelTree& tree, ShiftKind op, const Exponent& p,
                               unsigned max_power);

/// f_w = -lambda^-(|v|-|w|+1) on the sector of w; checks (S - lambda) f_w = chi_w.
WitnessReport resolvent_witness_S(const LevelTree& tree, const VertexId& w, const Complex& lambda,
                                  const Exponent& p);
WitnessReport resolvent_witness_S(const LevelTree& tree, const VertexId& w,
                                  const Rational& lambda, const Exponent& p);

/// f = -lambda^-(|v|+1) solves (S - lambda) f = chi_root but blows up.
WitnessReport nonsurjectivity_blowup_S(const LevelTree& tree, const Complex& lambda,
                                       const Exponent& p);
WitnessReport nonsurjectivity_blowup_S(const LevelTree& tree, const Rational& lambda,
                                       const Exponent& p);

struct PointSpectrumS {
  /// "zero_only" or "empty".
  std::string verdict;
  std::optional<VertexId> leaf;
  bool leaf_kernel_verified = false;
  std::string caveat;
  /// Level-by-level solution of S f = lambda f from the root: all zero.
  bool forced_zero = false;
  std::size_t forced_levels = 0;
};

PointSpectrumS point_spectrum_S(const LevelTree& tree, const Complex& lambda = Complex(1.0, 0.0));

}  // namespace treeshift
