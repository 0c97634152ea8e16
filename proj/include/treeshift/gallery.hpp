#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "treeshift/certificates.hpp"
#include "treeshift/tree_spec.hpp"

namespace treeshift {

struct GalleryEntry {
  std::string name;
  Json params;
  TreeSpec spec;
  std::shared_ptr<const Certificates> certificates;
};

/// Known families:
///   homogeneous       q >= 1
///   level_sequence    s = [s_1, s_2, ...] (all >= 1), extend = cycle | repeat_last
///   k_tree            k >= 2
///   quadratic_growth
///   factorial
///   ceil_three_halves
///   periodic          q = [q_1, ..., q_L] (all >= 1)
///   two_three_blocks
/// Missing params take the defaults listed by gallery_list().
GalleryEntry build_gallery(const std::string& name, const Json& params = Json::object());

struct GalleryInfo {
  std::string name;
  std::string description;
  Json default_params;
};
std::vector<GalleryInfo> gallery_list();

struct CertificateCheck {
  std::string name;
  /// "pass", "fail" or "skipped".
  std::string status;
  std::string detail;
};

struct SelfTestReport {
  std::string name;
  Json params;
  std::size_t depth = 0;
  std::vector<double> p_list;
  unsigned max_power = 0;
  std::vector<CertificateCheck> checks;
  std::vector<std::string> claims;
  bool passed = true;
};

/// Re-derives every certificate of the entry from a materialized prefix using
/// the generic modules and reports each comparison.
SelfTestReport self_test(const GalleryEntry& entry, std::size_t depth,
                         const std::vector<double>& p_list, unsigned max_power);

/// s_n of the two-three block sequence (n >= 1).
std::uint64_t two_three_block_degree(std::size_t n);

}  // namespace treeshift
