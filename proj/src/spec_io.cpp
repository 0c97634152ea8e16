#include <cctype>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "treeshift/io.hpp"

namespace treeshift {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

BigInt big_from_json(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return from_u64(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    BigInt x;
    if (x.set_str(j.get<std::string>(), 10) != 0) {
      throw InvalidArgument(std::string(what) + " is not an integer: " + j.get<std::string>());
    }
    return x;
  }
  throw InvalidArgument(std::string(what) + " must be an integer or a decimal string");
}

std::size_t size_from_json(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw InvalidArgument(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

Json inline_value(const std::string& text) {
  if (text.find(',') != std::string::npos) {
    Json list = Json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) list.push_back(inline_value(trim(item)));
    return list;
  }
  if (!text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      })) {
    return std::stoull(text);
  }
  return text;
}

TreeSpec from_gallery(const std::string& name, Json params) {
  // Sequence parameters given as a single number are one-element lists.
  for (const char* key : {"s", "q"}) {
    if ((name == "level_sequence" || name == "periodic") && params.contains(key) &&
        params[key].is_number()) {
      params[key] = Json::array({params[key]});
    }
  }
  return build_gallery(name, params).spec;
}

bool is_gallery_name(const std::string& name) {
  for (const auto& info : gallery_list()) {
    if (info.name == name) return true;
  }
  return false;
}

}  // namespace

TreeSpec tree_spec_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw InvalidArgument("tree spec needs a string field \"kind\"");
  }
  const std::string kind = doc["kind"];
  Json params = doc.value("params", Json::object());
  if (!params.is_object()) throw InvalidArgument("tree spec \"params\" must be an object");

  std::optional<TreeSpec> spec;
  if (kind == "gallery") {
    if (!params.contains("name") || !params["name"].is_string()) {
      throw InvalidArgument("gallery tree spec needs params.name");
    }
    const std::string name = params["name"];
    params.erase("name");
    spec = from_gallery(name, params);
  } else if (kind == "per_vertex") {
    for (const auto& [key, value] : params.items()) {
      if (key != "default" && key != "overrides") {
        throw InvalidArgument("unknown per_vertex parameter '" + key + "'");
      }
    }
    const std::uint64_t def = params.contains("default")
                                  ? size_from_json(params["default"], "default")
                                  : 1;
    std::vector<DegreeOverride> overrides;
    for (const auto& o : params.value("overrides", Json::array())) {
      if (!o.is_object()) throw InvalidArgument("override entries must be objects");
      overrides.push_back({size_from_json(o.at("level"), "override level"),
                           big_from_json(o.at("index"), "override index"),
                           size_from_json(o.at("children"), "override children")});
    }
    spec = per_vertex_spec(def, std::move(overrides));
  } else if (is_gallery_name(kind)) {
    spec = from_gallery(kind, params);
  } else {
    throw InvalidArgument("unknown tree kind '" + kind + "'");
  }

  if (doc.contains("leafless")) {
    if (!doc["leafless"].is_boolean()) throw InvalidArgument("\"leafless\" must be a boolean");
    const bool claim = doc["leafless"];
    if (spec->leafless_claim() && *spec->leafless_claim() != claim) {
      throw ContradictionError("leafless claim contradicts the " + kind + " family");
    }
    spec->set_leafless_claim(claim);
  }
  return *spec;
}

TreeSpec parse_tree_argument(const std::string& arg) {
  const std::string text = trim(arg);
  if (text.rfind("gallery:", 0) == 0) {
    const std::string rest = text.substr(8);
    const auto q = rest.find('?');
    const std::string name = rest.substr(0, q);
    Json params = Json::object();
    if (q != std::string::npos) {
      std::stringstream ss(rest.substr(q + 1));
      std::string pair;
      while (std::getline(ss, pair, '&')) {
        if (pair.empty()) continue;
        const auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw InvalidArgument("gallery parameter '" + pair + "' must look like key=value");
        }
        params[pair.substr(0, eq)] = inline_value(pair.substr(eq + 1));
      }
    }
    return from_gallery(name, params);
  }
  if (!text.empty() && text.front() == '{') {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InvalidArgument(std::string("tree spec is not valid JSON: ") + e.what());
    }
    return tree_spec_from_json(doc);
  }
  std::ifstream in(text);
  if (!in) throw InvalidArgument("cannot open tree spec file '" + text + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("tree spec file '" + text + "' is not valid JSON: " + e.what());
  }
  return tree_spec_from_json(doc);
}

Rational parse_rational(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw InvalidArgument("empty number");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    BigInt num, den;
    if (num.set_str(trim(text.substr(0, slash)), 10) != 0 ||
        den.set_str(trim(text.substr(slash + 1)), 10) != 0) {
      throw InvalidArgument("not a fraction: '" + text + "'");
    }
    return make_rational(num, den);
  }
  // Decimal with optional exponent, kept exact.
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool any = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any) throw InvalidArgument("not a number: '" + text + "'");
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw InvalidArgument("not a number: '" + text + "'");
    try {
      std::size_t used = 0;
      scale += std::stol(text.substr(i + 1), &used);
      if (i + 1 + used != text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InvalidArgument("bad exponent in '" + text + "'");
    }
  }
  Rational out{BigInt(digits, 10)};
  if (scale > 0) out *= Rational(pow(BigInt(10), static_cast<unsigned long>(scale)));
  if (scale < 0) out /= Rational(pow(BigInt(10), static_cast<unsigned long>(-scale)));
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

Lambda parse_lambda(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  }
  if (text.empty()) throw InvalidArgument("empty lambda");
  Lambda out;
  if (text.back() != 'i' && text.back() != 'j') {
    out.exact = parse_rational(text);
    out.value = Complex(to_double(*out.exact), 0.0);
    return out;
  }
  text.pop_back();
  // Split at the last sign that is not the leading one or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "0" : text.substr(0, split);
  std::string im = split == std::string::npos ? text : text.substr(split);
  if (im.empty() || im == "+" || im == "-") im += "1";
  const Rational r = parse_rational(re);
  const Rational m = parse_rational(im);
  out.value = Complex(to_double(r), to_double(m));
  if (sgn(m) == 0) out.exact = r;
  return out;
}

VertexId parse_vertex(const std::string& raw) {
  const std::string text = trim(raw);
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("vertex must look like level:index");
  VertexId v;
  try {
    std::size_t used = 0;
    v.level = std::stoul(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("level");
  } catch (const std::exception&) {
    throw InvalidArgument("bad vertex level in '" + text + "'");
  }
  if (v.index.set_str(text.substr(colon + 1), 10) != 0 || v.index < 0) {
    throw InvalidArgument("bad vertex index in '" + text + "'");
  }
  return v;
}

AnyFunction function_from_json(const Json& doc) {
  const Json& list = doc.is_object() && doc.contains("values") ? doc["values"] : doc;
  if (!list.is_array()) throw InvalidArgument("function file must be a JSON list of entries");
  bool complex = false;
  for (const auto& e : list) {
    if (!e.is_object()) throw InvalidArgument("function entries must be objects");
    complex = complex || e.contains("re") || e.contains("im");
  }
  auto number = [](const Json& j, const char* what) -> Rational {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(big_from_json(j, what));
    if (j.is_number_float()) return Rational(j.get<double>());
    throw InvalidArgument(std::string(what) + " must be a number");
  };
  RationalFunction rf;
  ComplexFunction cf;
  for (const auto& e : list) {
    const std::size_t level = size_from_json(e.at("level"), "level");
    const BigInt index = big_from_json(e.at("index"), "index");
    const BigInt count = e.contains("count") ? big_from_json(e["count"], "count") : BigInt(1);
    if (index < 0 || count < 1) throw InvalidArgument("index must be >= 0 and count >= 1");
    if (complex) {
      const double re = to_double(e.contains("re") ? number(e["re"], "re") : Rational(0));
      const double im = to_double(e.contains("im") ? number(e["im"], "im") : Rational(0));
      std::vector<Run<Complex>> runs{{index, count, Complex(re, im)}};
      if (const auto* cur = cf.level(level)) runs.insert(runs.end(), cur->begin(), cur->end());
      cf.set_level(level, std::move(runs));
    } else {
      const Rational num = e.contains("num") ? number(e["num"], "num") : Rational(0);
      const Rational den = e.contains("den") ? number(e["den"], "den") : Rational(1);
      if (sgn(den) == 0) throw InvalidArgument("zero denominator in function entry");
      Rational value = num / den;
      std::vector<Run<Rational>> runs{{index, count, value}};
      if (const auto* cur = rf.level(level)) runs.insert(runs.end(), cur->begin(), cur->end());
      rf.set_level(level, std::move(runs));
    }
  }
  if (complex) return cf;
  return rf;
}

Json function_to_json(const RationalFunction& f) {
  Json out = Json::array();
  for (const auto& [n, runs] : f.levels()) {
    for (const auto& r : runs) {
      Json e{{"level", n}, {"index", to_json(r.first)}};
      if (r.count != 1) e["count"] = to_json(r.count);
      e["num"] = to_json(BigInt(r.value.get_num()));
      e["den"] = to_json(BigInt(r.value.get_den()));
      out.push_back(std::move(e));
    }
  }
  return out;
}

Json function_to_json(const ComplexFunction& f) {
  Json out = Json::array();
  for (const auto& [n, runs] : f.levels()) {
    for (const auto& r : runs) {
      Json e{{"level", n}, {"index", to_json(r.first)}};
      if (r.count != 1) e["count"] = to_json(r.count);
      e["re"] = r.value.real();
      e["im"] = r.value.imag();
      out.push_back(std::move(e));
    }
  }
  return out;
}

Json function_to_json(const AnyFunction& f) {
  return std::visit([](const auto& g) { return function_to_json(g); }, f);
}

}  // namespace treeshift
