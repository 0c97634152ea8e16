// Command-line front end. Every subcommand prints one JSON document (or a CSV
// table with --format csv) on stdout. Exit codes: 0 success, 2 usage error,
// 1 computation error with a JSON error document on stderr.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "treeshift/errors.hpp"
#include "treeshift/io.hpp"

using namespace treeshift;

namespace {

using Table = std::vector<std::vector<std::string>>;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string tree;
  std::size_t depth = 32;
  std::string format = "json";
  double p = 1.0;
  std::optional<std::uint64_t> vertex_cap;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object() && j.contains("exact")) return j["exact"].get<std::string>();
  if (j.is_object() && j.contains("value")) return j["value"].dump();
  return j.dump();
}

void emit(const Common& c, const Json& doc, const Table& table) {
  if (c.format == "csv") {
    for (const auto& row : table) {
      for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << csv_field(row[i]);
      std::cout << "\n";
    }
    return;
  }
  std::cout << doc.dump(2) << "\n";
}

LevelTree load_tree(const Common& c) {
  if (c.tree.empty()) throw UsageError("--tree is required");
  MaterializeOptions opts;
  if (c.vertex_cap) opts.vertex_cap = from_u64(*c.vertex_cap);
  return materialize(parse_tree_argument(c.tree), c.depth, opts);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Json lambda_json(const Lambda& l) {
  Json out{{"re", l.value.real()}, {"im", l.value.imag()}};
  out["exact"] = l.exact ? Json(to_string(*l.exact)) : Json(nullptr);
  return out;
}

Table terms_table(const NormReport& r) {
  Table t{{"n", "term", "approx"}};
  for (const auto& x : r.terms) {
    t.push_back({std::to_string(x.n), x.value.to_string(), Json(x.value.value()).dump()});
  }
  return t;
}

Table function_table(const Json& f) {
  Table t{{"level", "index", "count", "value"}};
  for (const auto& e : f) {
    std::string value = e.contains("num")
                            ? cell(e["num"]) + (e["den"] == 1 ? "" : "/" + cell(e["den"]))
                            : cell(e["re"]) + (e["im"].get<double>() < 0 ? "" : "+") +
                                  cell(e["im"]) + "i";
    t.push_back({cell(e["level"]), cell(e["index"]), e.contains("count") ? cell(e["count"]) : "1",
                 value});
  }
  return t;
}

void add_common(CLI::App* sub, Common& c, bool with_p, bool with_tree = true) {
  if (with_tree) sub->add_option("--tree", c.tree, "gallery:<name>?k=v, inline JSON or a file")->required();
  sub->add_option("--depth", c.depth, "levels to materialize")->capture_default_str();
  sub->add_option("--format", c.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--vertex-cap", c.vertex_cap, "storage cap (overrides TREESHIFT_VERTEX_CAP)");
  if (with_p) sub->add_option("--p", c.p, "Hardy exponent p >= 1")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shift operators on Hardy spaces of rooted trees"};
  app.require_subcommand(1);
  Common c;

  auto* describe = app.add_subcommand("describe", "level sizes, leaves and degree histogram");
  add_common(describe, c, false);

  std::string op = "S";
  unsigned power = 1;
  std::string in_path, out_path;
  auto* norm = app.add_subcommand("norm", "operator norm ||T^m||, or ||f|| with --in");
  add_common(norm, c, true);
  norm->add_option("--op", op, "S or B")->check(CLI::IsMember({"S", "B"}));
  norm->add_option("--power", power, "operator power m")->capture_default_str();
  norm->add_option("--in", in_path, "function file: report ||f|| instead");

  auto* apply = app.add_subcommand("apply", "apply S^m or B^m to a function file");
  add_common(apply, c, false);
  apply->add_option("--op", op, "S or B")->required()->check(CLI::IsMember({"S", "B"}));
  apply->add_option("--power", power, "operator power m")->capture_default_str();
  apply->add_option("--in", in_path, "function file")->required();
  apply->add_option("--out", out_path, "output function file (default: stdout)");

  unsigned max_power = 10;
  auto* radius = app.add_subcommand("radius", "spectral radius estimate from ||T^m||^(1/m)");
  add_common(radius, c, true);
  radius->add_option("--op", op, "S or B")->required()->check(CLI::IsMember({"S", "B"}));
  radius->add_option("--max-power", max_power, "largest m")->capture_default_str();

  std::string kind, lambda_text, vertex_text = "0:0", mode = "Hp";
  auto* witness = app.add_subcommand("witness", "eigenfunctions and resolvent witnesses");
  add_common(witness, c, true);
  witness->add_option("--kind", kind, "eigenB, resolventS, blowupS, membershipB or pointS")
      ->required()
      ->check(CLI::IsMember({"eigenB", "resolventS", "blowupS", "membershipB", "pointS"}));
  witness->add_option("--lambda", lambda_text, "a+bi, a fraction or a decimal");
  witness->add_option("--vertex", vertex_text, "level:index of w for resolventS")
      ->capture_default_str();
  witness->add_option("--mode", mode, "Hp or Hp0 for membershipB")
      ->check(CLI::IsMember({"Hp", "Hp0"}))
      ->capture_default_str();

  std::size_t samples = 100;
  unsigned n_max = 10;
  std::uint64_t seed = 1;
  bool force = false;
  auto* hyper = app.add_subcommand("hypercyclic", "hypercyclicity verdict and KGS checks");
  add_common(hyper, c, true);
  hyper->add_option("--op", op, "S or B")->required()->check(CLI::IsMember({"S", "B"}));
  hyper->add_option("--samples", samples, "random g per suite")->capture_default_str();
  hyper->add_option("--n-max", n_max, "largest n for T_n")->capture_default_str();
  hyper->add_option("--seed", seed, "sampling seed")->capture_default_str();
  hyper->add_flag("--force", force, "run the suite even without a yes verdict");

  auto* gallery = app.add_subcommand("gallery", "registered tree families");
  gallery->require_subcommand(1);
  auto* glist = gallery->add_subcommand("list", "names, descriptions and default parameters");
  glist->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  std::string gname, gparams = "{}";
  std::vector<double> p_list{1.0, 2.0};
  auto* gself = gallery->add_subcommand("self-test", "check every certificate of a family");
  gself->add_option("--name", gname, "family name")->required();
  gself->add_option("--params", gparams, "family parameters as JSON")->capture_default_str();
  gself->add_option("--depth", c.depth, "levels to materialize")->capture_default_str();
  gself->add_option("--p", p_list, "exponents (repeatable)")->capture_default_str();
  gself->add_option("--max-power", max_power, "largest m")->capture_default_str();
  gself->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::size_t trials = 500;
  std::vector<long> grid;
  std::uint64_t budget = 1u << 22;
  auto* verify = app.add_subcommand("verify", "independent norm checks by sampling");
  add_common(verify, c, true);
  verify->add_option("--op", op, "S or B")->required()->check(CLI::IsMember({"S", "B"}));
  verify->add_option("--power", power, "operator power m")->capture_default_str();
  verify->add_option("--trials", trials, "random functions")->capture_default_str();
  verify->add_option("--seed", seed, "sampling seed")->capture_default_str();
  verify->add_option("--grid", grid, "also enumerate these values on every vertex (m = 1)")
      ->delimiter(',');
  verify->add_option("--budget", budget, "grid evaluation budget")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*describe) {
      const auto tree = load_tree(c);
      Json doc = describe_tree(tree);
      Table t{{"level", "gamma", "degrees"}};
      for (std::size_t n = 0; n <= tree.depth(); ++n) {
        std::string degrees;
        if (n < tree.depth()) {
          for (const auto& [d, cnt] : doc["degree_histogram"][n]["degrees"].items()) {
            degrees += (degrees.empty() ? "" : " ") + d + ":" + cell(cnt);
          }
        }
        t.push_back({std::to_string(n), to_string(tree.gamma(n)), degrees});
      }
      emit(c, doc, t);
    } else if (*norm) {
      const auto tree = load_tree(c);
      const Exponent p(c.p);
      if (!in_path.empty()) {
        const auto f = function_from_json(read_json_file(in_path));
        const auto r = std::visit([&](const auto& g) { return hardy_norm(tree, g, p); }, f);
        const auto prof =
            std::visit([&](const auto& g) { return little_space_profile(tree, g, p); }, f);
        Json doc = to_json(r);
        doc["little_space"] = to_json(prof);
        Table t{{"n", "M_p_power"}};
        for (std::size_t n = 0; n < prof.values.size(); ++n) {
          t.push_back({std::to_string(n), prof.values[n].to_string()});
        }
        emit(c, doc, t);
      } else {
        const auto r = operator_norm(tree, parse_shift_kind(op), p, power);
        Json doc = to_json(r);
        doc["tree"] = tree.spec().to_json();
        emit(c, doc, terms_table(r));
      }
    } else if (*apply) {
      const auto tree = load_tree(c);
      const auto kind_op = parse_shift_kind(op);
      const auto f = function_from_json(read_json_file(in_path));
      const AnyFunction g = std::visit(
          [&](const auto& h) -> AnyFunction {
            return kind_op == ShiftKind::forward ? apply_forward(tree, h, power)
                                                 : apply_backward(tree, h, power);
          },
          f);
      const Json gj = function_to_json(g);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw UsageError("cannot write '" + out_path + "'");
        out << gj.dump(2) << "\n";
        emit(c, Json{{"op", op}, {"power", power}, {"out", out_path}, {"entries", gj.size()}},
             function_table(gj));
      } else {
        emit(c, gj, function_table(gj));
      }
    } else if (*radius) {
      const auto tree = load_tree(c);
      const auto r = spectral_radius(tree, parse_shift_kind(op), Exponent(c.p), max_power);
      Json doc = to_json(r);
      doc["tree"] = tree.spec().to_json();
      Table t{{"m", "norm", "radius"}};
      for (std::size_t i = 0; i < r.radius_sequence.size(); ++i) {
        t.push_back({std::to_string(i + 1), Json(r.power_norms[i].value).dump(),
                     Json(r.radius_sequence[i]).dump()});
      }
      emit(c, doc, t);
    } else if (*witness) {
      const auto tree = load_tree(c);
      const Exponent p(c.p);
      Json doc{{"kind", kind}, {"tree", tree.spec().to_json()}, {"depth", tree.depth()}};
      Table t{{"n", "profile", "expected"}};
      if (kind == "pointS") {
        doc["report"] = to_json(point_spectrum_S(tree));
      } else {
        if (lambda_text.empty()) throw UsageError("--lambda is required for --kind " + kind);
        const Lambda l = parse_lambda(lambda_text);
        doc["lambda"] = lambda_json(l);
        if (kind == "membershipB") {
          doc["mode"] = mode;
          doc["report"] = to_json(point_spectrum_membership_B(tree, l.value, p, parse_hardy_mode(mode)));
        } else {
          WitnessReport r;
          if (kind == "eigenB") {
            r = l.exact ? eigenfunction_B(tree, *l.exact, p) : eigenfunction_B(tree, l.value, p);
          } else if (kind == "resolventS") {
            const VertexId w = parse_vertex(vertex_text);
            doc["vertex"] = to_json(w);
            r = l.exact ? resolvent_witness_S(tree, w, *l.exact, p)
                        : resolvent_witness_S(tree, w, l.value, p);
          } else {
            r = l.exact ? nonsurjectivity_blowup_S(tree, *l.exact, p)
                        : nonsurjectivity_blowup_S(tree, l.value, p);
          }
          doc["report"] = to_json(r);
          for (std::size_t n = 0; n < r.profile.size(); ++n) {
            t.push_back({std::to_string(n), r.profile[n].to_string(),
                         n < r.expected_profile.size() ? r.expected_profile[n].to_string() : ""});
          }
        }
      }
      emit(c, doc, t);
    } else if (*hyper) {
      const auto tree = load_tree(c);
      const auto v = hypercyclicity_verdict(tree, parse_shift_kind(op));
      Json doc{{"tree", tree.spec().to_json()}, {"verdict", to_json(v)}};
      Table t{{"n", "root_profile"}};
      if (v.op == ShiftKind::backward && (v.verdict == "yes" || force)) {
        const auto suite = kgs_suite(tree, samples, n_max, Exponent(c.p), seed);
        doc["suite"] = to_json(suite);
        for (std::size_t n = 0; n < suite.root_profile.size(); ++n) {
          t.push_back({std::to_string(n + 1), suite.root_profile[n].to_string()});
        }
      } else {
        doc["suite"] = nullptr;
      }
      emit(c, doc, t);
    } else if (*glist) {
      Json doc = Json::array();
      Table t{{"name", "description", "defaults"}};
      for (const auto& info : gallery_list()) {
        doc.push_back(Json{{"name", info.name},
                           {"description", info.description},
                           {"defaults", info.default_params}});
        t.push_back({info.name, info.description, info.default_params.dump()});
      }
      emit(c, doc, t);
    } else if (*gself) {
      Json params;
      try {
        params = Json::parse(gparams);
      } catch (const Json::parse_error& e) {
        throw UsageError(std::string("--params is not valid JSON: ") + e.what());
      }
      const auto r = self_test(build_gallery(gname, params), c.depth, p_list, max_power);
      Table t{{"check", "status", "detail"}};
      for (const auto& chk : r.checks) t.push_back({chk.name, chk.status, chk.detail});
      emit(c, to_json(r), t);
      if (!r.passed) return 1;
    } else if (*verify) {
      const auto tree = load_tree(c);
      const auto kind_op = parse_shift_kind(op);
      const Exponent p(c.p);
      const auto lower = randomized_norm_lower_bound(tree, kind_op, power, p, trials, seed);
      const auto attain = extremal_attainment(tree, kind_op, power, p);
      Json doc{{"tree", tree.spec().to_json()},
               {"lower_bound", to_json(lower)},
               {"attainment", to_json(attain)}};
      if (!grid.empty()) {
        doc["grid"] = to_json(truncated_finite_support_check(tree, kind_op, p, grid, budget));
      }
      Table t{{"n", "measured", "formula", "equal"}};
      for (const auto& l : attain.levels) {
        t.push_back({std::to_string(l.n), l.measured.to_string(), l.formula.to_string(),
                     l.equal ? "true" : "false"});
      }
      emit(c, doc, t);
    }
  } catch (const UsageError& e) {
    std::cerr << Json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << Json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << Json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
