#pragma once

#include <optional>
#include <string>
#include <variant>

#include "treeshift/gallery.hpp"
#include "treeshift/hardy.hpp"
#include "treeshift/hypercyclicity.hpp"
#include "treeshift/level_tree.hpp"
#include "treeshift/oracle.hpp"
#include "treeshift/shift.hpp"
#include "treeshift/spectral.hpp"
#include "treeshift/tree_spec.hpp"

namespace treeshift {

// Tree arguments -----------------------------------------------------------

/// Tree spec document: {"kind": ..., "params": {...}, "leafless": bool}.
/// kind is homogeneous, level_sequence, per_vertex, or any gallery name;
/// {"kind": "gallery", "params": {"name": ..., ...}} is also accepted.
TreeSpec tree_spec_from_json(const Json& doc);

/// "gallery:<name>?k=v&k=v1,v2", an inline JSON document, or a file path.
TreeSpec parse_tree_argument(const std::string& arg);

// Functions ----------------------------------------------------------------

/// A function file is a JSON list of entries {level, index, num, den} or
/// {level, index, re, im}; an optional "count" repeats the value over
/// consecutive indices. Indices may be strings for big values.
using AnyFunction = std::variant<RationalFunction, ComplexFunction>;
AnyFunction function_from_json(const Json& doc);
Json function_to_json(const RationalFunction& f);
Json function_to_json(const ComplexFunction& f);
Json function_to_json(const AnyFunction& f);

// Scalars ------------------------------------------------------------------

/// "1/2", "-0.75", "2i", "0.3-0.7i", "1+2i". Real inputs written as
/// integers, fractions or decimals are also kept exactly.
struct Lambda {
  Complex value;
  std::optional<Rational> exact;
};
Lambda parse_lambda(const std::string& text);

/// "level:index".
VertexId parse_vertex(const std::string& text);

Rational parse_rational(const std::string& text);

// Serialization --------------------------------------------------------------

Json to_json(const BigInt& x);
Json to_json(const Quantity& q);
Json to_json(const VertexId& v);
Json to_json(const NormReport& r);
Json to_json(const MeanProfile& r);
Json to_json(const IsometryReport& r);
Json to_json(const std::vector<ObstructionStep>& steps);
Json to_json(const WitnessReport& r);
Json to_json(const MembershipReport& r);
Json to_json(const SpectralReport& r);
Json to_json(const PointSpectrumS& r);
Json to_json(const HypercyclicityVerdict& r);
Json to_json(const KgsReport& r);
Json to_json(const OracleReport& r);
Json to_json(const AttainmentReport& r);
Json to_json(const GridReport& r);
Json to_json(const SelfTestReport& r);

/// level sizes, leaf status and a degree histogram per level.
Json describe_tree(const LevelTree& tree);

}  // namespace treeshift
