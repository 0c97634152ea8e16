#include <cmath>
#include <map>

#include "treeshift/io.hpp"

namespace treeshift {

namespace {

// JSON has no infinity; unbounded values are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <class T>
Json optional_json(const std::optional<T>& x) {
  return x ? to_json(*x) : Json(nullptr);
}

Json quantities(const std::vector<Quantity>& qs) {
  Json out = Json::array();
  for (const auto& q : qs) out.push_back(to_json(q));
  return out;
}

}  // namespace

Json to_json(const BigInt& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json to_json(const Quantity& q) {
  Json out{{"value", number(q.value())}};
  if (q.is_exact()) out["exact"] = to_string(q.exact());
  return out;
}

Json to_json(const VertexId& v) { return Json{{"level", v.level}, {"index", to_json(v.index)}}; }

Json to_json(const NormReport& r) {
  Json out;
  out["subject"] = r.subject;
  out["power"] = r.power;
  out["p"] = r.p;
  out["depth"] = r.depth;
  out["verdict"] = to_string(r.verdict);
  out["value"] = number(r.value);
  out["value_p_power"] = optional_json(r.value_p_power);
  out["truncated"] = r.truncated;
  out["prefix_sup"] = to_json(r.prefix_sup);
  out["attained_level"] = r.attained_level;
  out["certificate"] = r.certificate ? Json(*r.certificate) : Json(nullptr);
  out["certificate_attained"] = r.certificate_attained;
  out["certificate_mismatches"] = r.certificate_mismatches;
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(Json{{"n", t.n}, {"term", to_json(t.value)}});
  out["terms"] = std::move(terms);
  return out;
}

Json to_json(const MeanProfile& r) {
  return Json{{"p", r.p},
              {"verdict", to_string(r.verdict)},
              {"tail_begin", r.tail_begin},
              {"M_p_power", quantities(r.values)}};
}

Json to_json(const IsometryReport& r) {
  Json out{{"isometric", r.isometric}};
  if (r.isometric) {
    out["sequence"] = r.sequence;
    return out;
  }
  out["first"] = optional_json(r.first);
  out["first_degree"] = r.first_degree;
  out["second"] = optional_json(r.second);
  out["second_degree"] = r.second_degree;
  out["witness"] = optional_json(r.witness);
  out["witness_norm_p_power"] = to_json(r.norm_p);
  out["shifted_norm_p_power"] = to_json(r.shifted_norm_p);
  return out;
}

Json to_json(const std::vector<ObstructionStep>& steps) {
  Json out = Json::array();
  for (const auto& s : steps) {
    out.push_back(Json{{"N", s.N},
                       {"distance_p_power", to_json(s.distance_p)},
                       {"bound_p_power", to_json(s.bound_p)},
                       {"holds", s.holds}});
  }
  return out;
}

Json to_json(const WitnessReport& r) {
  Json out;
  out["kind"] = r.kind;
  out["identity"] = r.identity;
  out["status"] = r.status;
  out["p"] = r.p;
  out["exact"] = r.exact;
  out["residual"] = r.residual;
  out["exact_residual"] = r.exact_residual ? Json(to_string(*r.exact_residual)) : Json(nullptr);
  out["region"] = Json{{"begin", r.region_begin}, {"end", r.region_end}};
  out["failure"] = optional_json(r.failure);
  out["profile_ok"] = r.profile_ok;
  out["profile"] = quantities(r.profile);
  out["expected_profile"] = quantities(r.expected_profile);
  out["notes"] = r.notes;
  out["witness"] = r.exact ? function_to_json(r.exact_witness) : function_to_json(r.witness);
  return out;
}

Json to_json(const MembershipReport& r) {
  Json out;
  out["verdict"] = r.verdict;
  out["reason"] = r.reason;
  out["modulus"] = r.modulus;
  out["t"] = r.t ? number(*r.t) : Json(nullptr);
  out["t_source"] = r.t_source;
  if (r.t_source == "window") out["window"] = Json{{"begin", r.window_begin}, {"end", r.window_end}};
  out["norm_B"] = r.norm_B ? number(*r.norm_B) : Json(nullptr);
  out["eigen_residual"] = r.eigen_residual;
  return out;
}

Json to_json(const SpectralReport& r) {
  Json out;
  out["op"] = to_string(r.op);
  out["p"] = r.p;
  out["depth"] = r.depth;
  out["radius_estimate"] = number(r.radius_estimate);
  out["converged"] = r.converged;
  out["last_relative_change"] = number(r.last_relative_change);
  out["any_truncated"] = r.any_truncated;
  out["closed_form"] = r.closed_form ? number(*r.closed_form) : Json(nullptr);
  Json seq = Json::array();
  for (double x : r.radius_sequence) seq.push_back(number(x));
  out["radius_sequence"] = std::move(seq);
  Json norms = Json::array();
  for (const auto& n : r.power_norms) {
    norms.push_back(Json{{"power", n.power},
                         {"verdict", to_string(n.verdict)},
                         {"value", number(n.value)},
                         {"value_p_power", optional_json(n.value_p_power)},
                         {"truncated", n.truncated},
                         {"attained_level", n.attained_level}});
  }
  out["power_norms"] = std::move(norms);
  return out;
}

Json to_json(const PointSpectrumS& r) {
  Json out;
  out["verdict"] = r.verdict;
  out["leaf"] = optional_json(r.leaf);
  out["leaf_kernel_verified"] = r.leaf_kernel_verified;
  out["caveat"] = r.caveat;
  out["forced_zero"] = r.forced_zero;
  out["forced_levels"] = r.forced_levels;
  return out;
}

Json to_json(const HypercyclicityVerdict& r) {
  Json out;
  out["operator"] = to_string(r.op);
  out["verdict"] = r.verdict;
  out["reason"] = r.reason;
  out["evidence"] = r.evidence;
  out["leaf"] = optional_json(r.leaf);
  out["depth"] = r.depth;
  out["gamma_nondecreasing"] = r.gamma_nondecreasing;
  Json tail = Json::array();
  for (const auto& g : r.gamma_tail) tail.push_back(to_json(g));
  out["gamma_tail"] = std::move(tail);
  return out;
}

Json to_json(const KgsReport& r) {
  Json out;
  out["p"] = r.p;
  out["depth"] = r.depth;
  out["n_max"] = r.n_max;
  out["seed"] = r.seed;
  out["samples"] = r.samples;
  out["identity_passes"] = r.identity_passes;
  out["orbit_null_passes"] = r.orbit_null_passes;
  out["bound_passes"] = r.bound_passes;
  out["decreasing_passes"] = r.decreasing_passes;
  out["worst_final_ratio"] = r.worst_final_ratio;
  out["root_profile"] = quantities(r.root_profile);
  Json details = Json::array();
  for (const auto& s : r.details) {
    Json steps = Json::array();
    for (const auto& st : s.steps) {
      steps.push_back(Json{{"n", st.n},
                           {"identity", st.identity},
                           {"norm_p_power", to_json(st.norm_p)},
                           {"bound_p_power", to_json(st.bound_p)},
                           {"bound_holds", st.bound_holds}});
    }
    details.push_back(Json{{"sample", s.seed},
                           {"max_support_level", s.max_support_level},
                           {"g_norm_p_power", to_json(s.g_norm_p)},
                           {"orbit_null", s.orbit_null},
                           {"decreasing", s.decreasing},
                           {"steps", std::move(steps)}});
  }
  out["details"] = std::move(details);
  return out;
}

Json to_json(const OracleReport& r) {
  Json out;
  out["op"] = to_string(r.op);
  out["power"] = r.power;
  out["p"] = r.p;
  out["depth"] = r.depth;
  out["seed"] = r.seed;
  out["trials"] = r.trials;
  out["best_ratio"] = number(r.best);
  out["best_ratio_p_power"] = to_json(r.best_p_power);
  out["best_source"] = r.best_source;
  out["formula_prefix_sup"] = to_json(r.formula.prefix_sup);
  out["formula_value"] = number(r.formula.value);
  out["formula_verdict"] = to_string(r.formula.verdict);
  out["violations"] = r.violations;
  out["meets_formula"] = r.meets_formula;
  return out;
}

Json to_json(const AttainmentReport& r) {
  Json out;
  out["op"] = to_string(r.op);
  out["power"] = r.power;
  out["p"] = r.p;
  out["depth"] = r.depth;
  out["all_equal"] = r.all_equal;
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    levels.push_back(Json{{"n", l.n},
                          {"measured", to_json(l.measured)},
                          {"formula", to_json(l.formula)},
                          {"equal", l.equal}});
  }
  out["levels"] = std::move(levels);
  return out;
}

Json to_json(const GridReport& r) {
  Json out;
  out["op"] = to_string(r.op);
  out["p"] = r.p;
  out["grid"] = r.grid;
  out["free_vertices"] = r.free_vertices;
  out["evaluated"] = r.evaluated;
  out["best_ratio"] = number(r.best);
  out["best_ratio_p_power"] = to_json(r.best_p_power);
  out["best_values"] = r.best_values;
  out["formula_p_power"] = to_json(r.formula_p_power);
  out["exceeded"] = r.exceeded;
  out["attained"] = r.attained;
  return out;
}

Json to_json(const SelfTestReport& r) {
  Json out;
  out["name"] = r.name;
  out["params"] = r.params;
  out["depth"] = r.depth;
  out["p"] = r.p_list;
  out["max_power"] = r.max_power;
  out["passed"] = r.passed;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
  }
  out["checks"] = std::move(checks);
  out["claims"] = r.claims;
  return out;
}

Json describe_tree(const LevelTree& tree) {
  Json out;
  out["tree"] = tree.spec().to_json();
  out["depth"] = tree.depth();
  Json sizes = Json::array();
  for (const auto& g : tree.level_sizes()) sizes.push_back(to_json(g));
  out["level_sizes"] = std::move(sizes);
  out["total_vertices"] = to_json(tree.total_vertices());
  out["leafless_up_to_depth"] = tree.is_leafless_up_to();
  out["first_leaf"] = optional_json(tree.first_leaf());
  const auto& claim = tree.spec().leafless_claim();
  out["leafless_claim"] = claim ? Json(*claim) : Json(nullptr);
  Json hist = Json::array();
  for (std::size_t n = 0; n < tree.depth(); ++n) {
    std::map<std::uint64_t, BigInt> counts;
    for (const auto& s : tree.segments(n)) counts[s.degree] += s.count;
    Json degrees = Json::object();
    for (const auto& [d, c] : counts) degrees[std::to_string(d)] = to_json(c);
    hist.push_back(Json{{"level", n}, {"degrees", std::move(degrees)}});
  }
  out["degree_histogram"] = std::move(hist);
  if (const auto& certs = tree.spec().certificates()) {
    out["family"] = certs->family();
    out["claims"] = certs->claims();
  }
  return out;
}

}  // namespace treeshift
