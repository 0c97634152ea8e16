#include "treeshift/gallery.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>

#include "treeshift/errors.hpp"
#include "treeshift/level_tree.hpp"
#include "treeshift/shift.hpp"
#include "treeshift/spectral.hpp"

namespace treeshift {

namespace {

/// Certificates assembled from per-family closures.
class FamilyCertificates final : public Certificates {
 public:
  std::string name;
  std::function<std::optional<BigInt>(std::size_t)> gamma_fn;
  std::function<std::optional<BigInt>(std::size_t, std::size_t)> max_subtree_fn;
  std::function<std::optional<OperatorBound>(ShiftKind, unsigned, const Exponent&)> bound_fn;
  std::function<std::optional<double>(ShiftKind, const Exponent&)> radius_fn;
  std::function<std::optional<std::uint64_t>(std::size_t)> degree_fn;
  std::optional<bool> leafless_value;
  std::optional<bool> diverges_value;
  std::optional<double> liminf_value;
  std::vector<std::string> claim_list;

  std::string family() const override { return name; }
  std::optional<BigInt> gamma(std::size_t n) const override {
    return gamma_fn ? gamma_fn(n) : std::nullopt;
  }
  std::optional<BigInt> max_subtree(std::size_t m, std::size_t r) const override {
    return max_subtree_fn ? max_subtree_fn(m, r) : std::nullopt;
  }
  std::optional<OperatorBound> norm_bound(ShiftKind op, unsigned m,
                                          const Exponent& p) const override {
    return bound_fn ? bound_fn(op, m, p) : std::nullopt;
  }
  std::optional<double> spectral_radius(ShiftKind op, const Exponent& p) const override {
    return radius_fn ? radius_fn(op, p) : std::nullopt;
  }
  std::optional<bool> leafless() const override { return leafless_value; }
  std::optional<bool> gamma_diverges() const override { return diverges_value; }
  std::optional<double> root_growth_liminf() const override { return liminf_value; }
  std::optional<std::uint64_t> level_degree(std::size_t n) const override {
    return degree_fn ? degree_fn(n) : std::nullopt;
  }
  std::vector<std::string> claims() const override { return claim_list; }
};

/// x^p, exact for integer p.
Quantity power_p(const Rational& x, const Exponent& p) {
  if (p.is_integer()) return Quantity(pow(x, p.as_integer()));
  if (sgn(x) == 0) return Quantity(Rational(0));
  return Quantity::approximate(std::exp(p.value() * log_abs(x)));
}

/// K^(p-1) * ratio, exact for integer p.
Quantity weighted(const BigInt& k, const Rational& ratio, const Exponent& p) {
  if (p.is_integer()) return Quantity(Rational(pow(Rational(k), p.as_integer() - 1) * ratio));
  if (sgn(ratio) == 0) return Quantity(Rational(0));
  return Quantity::approximate(std::exp((p.value() - 1.0) * log_abs(k) + log_abs(ratio)));
}


using DegreeSeq = std::function<std::uint64_t(std::size_t)>;

BigInt window_product(const DegreeSeq& s, std::size_t n, unsigned m) {
  BigInt prod = 1;
  for (std::size_t j = n + 1; j <= n + m; ++j) prod *= static_cast<unsigned long>(s(j));
  return prod;
}

BigInt prefix_product(const DegreeSeq& s, std::size_t n) { return window_product(s, 0, n); }

OperatorBound isometry_bound(unsigned m) {
  OperatorBound b;
  b.bounded = true;
  b.p_power = Quantity(Rational(1));
  b.attained_at = m;
  b.ratio = [](std::size_t) { return Quantity(Rational(1)); };
  b.rule = "level-regular tree: every term K(m,n-m) gamma(n-m)/gamma(n) equals 1";
  return b;
}

/// Common certificates of trees where every level-n vertex has s(n+1)
/// children. `window_sup(m)` is the sup of s_{n+1}...s_{n+m} with its first
/// attaining n, or nullopt when the sup is infinite.
std::shared_ptr<FamilyCertificates> level_regular_certificates(
    std::string family, DegreeSeq s,
    std::function<std::optional<std::pair<BigInt, std::size_t>>(unsigned)> window_sup) {
  auto c = std::make_shared<FamilyCertificates>();
  c->name = std::move(family);
  c->gamma_fn = [s](std::size_t n) { return std::optional<BigInt>(prefix_product(s, n)); };
  c->max_subtree_fn = [s](std::size_t m, std::size_t r) {
    return std::optional<BigInt>(window_product(s, r, static_cast<unsigned>(m)));
  };
  c->degree_fn = [s](std::size_t n) { return std::optional<std::uint64_t>(s(n + 1)); };
  c->bound_fn = [s, window_sup](ShiftKind op, unsigned m,
                                const Exponent& p) -> std::optional<OperatorBound> {
    if (op == ShiftKind::forward) return isometry_bound(m);
    OperatorBound b;
    b.ratio = [s, m, p](std::size_t n) { return power_p(Rational(window_product(s, n, m)), p); };
    const auto sup = window_sup(m);
    if (sup) {
      b.bounded = true;
      b.p_power = power_p(Rational(sup->first), p);
      b.attained_at = sup->second;
      b.rule = "level-regular tree: term at n is (s_{n+1}...s_{n+m})^p, sup " +
               sup->first.get_str() + "^p first reached at n = " + std::to_string(sup->second);
    } else {
      b.bounded = false;
      b.rule = "level-regular tree: term at n is (s_{n+1}...s_{n+m})^p, which is unbounded";
    }
    return b;
  };
  c->radius_fn = [](ShiftKind op, const Exponent&) -> std::optional<double> {
    if (op == ShiftKind::forward) return 1.0;
    return std::nullopt;
  };
  c->leafless_value = true;
  return c;
}

std::vector<std::uint64_t> positive_list(const Json& params, const char* key,
                                         std::vector<std::uint64_t> fallback) {
  if (!params.contains(key)) return fallback;
  const Json& v = params.at(key);
  std::vector<std::uint64_t> out;
  if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number_integer() || x.get<long long>() < 1) {
        throw InvalidArgument(std::string("parameter '") + key +
                              "' must list integers >= 1");
      }
      out.push_back(x.get<std::uint64_t>());
    }
  } else if (v.is_number_integer() && v.get<long long>() >= 1) {
    out.push_back(v.get<std::uint64_t>());
  } else {
    throw InvalidArgument(std::string("parameter '") + key + "' must list integers >= 1");
  }
  if (out.empty()) throw InvalidArgument(std::string("parameter '") + key + "' is empty");
  return out;
}

std::uint64_t integer_param(const Json& params, const char* key, std::uint64_t fallback,
                            std::uint64_t minimum) {
  if (!params.contains(key)) return fallback;
  const Json& v = params.at(key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(minimum)) {
    throw InvalidArgument(std::string("parameter '") + key + "' must be an integer >= " +
                          std::to_string(minimum));
  }
  return v.get<std::uint64_t>();
}

void reject_unknown(const Json& params, std::initializer_list<const char*> known) {
  if (!params.is_object()) throw InvalidArgument("gallery params must be an object");
  for (const auto& [key, value] : params.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw InvalidArgument("unknown gallery parameter '" + key + "'");
  }
}

GalleryEntry finish(std::string name, Json params, TreeSpec spec,
                    std::shared_ptr<FamilyCertificates> certs) {
  spec.set_params(params);
  spec.set_leafless_claim(certs->leafless_value);
  spec.set_certificates(certs);
  return GalleryEntry{std::move(name), std::move(params), std::move(spec), std::move(certs)};
}

TreeSpec gallery_run_spec(const std::string& name, TreeSpec::RunRule rule) {
  return TreeSpec::from_run_rule(TreeSpec::Kind::gallery, name, std::move(rule));
}

/// Sequence families: cycle or repeat the last value beyond the list.
GalleryEntry build_sequence(const std::string& name, const std::vector<std::uint64_t>& list,
                            bool cycle, Json params, std::vector<std::string> claims = {}) {
  DegreeSeq s = [list, cycle](std::size_t n) -> std::uint64_t {
    if (n == 0) throw InvalidArgument("sequence is indexed from 1");
    if (n <= list.size()) return list[n - 1];
    return cycle ? list[(n - 1) % list.size()] : list.back();
  };
  const std::size_t scan = cycle ? list.size() : list.size() + 1;
  auto sup = [s, scan](unsigned m) -> std::optional<std::pair<BigInt, std::size_t>> {
    std::pair<BigInt, std::size_t> best{0, 0};
    for (std::size_t n = 0; n < scan; ++n) {
      const BigInt w = window_product(s, n, m);
      if (w > best.first) best = {w, n};
    }
    return best;
  };
  auto certs = level_regular_certificates(name, s, sup);
  double log_t = 0.0;
  if (cycle) {
    for (auto q : list) log_t += std::log(static_cast<double>(q));
    log_t /= static_cast<double>(list.size());
  } else {
    log_t = std::log(static_cast<double>(list.back()));
  }
  const double t = std::exp(log_t);
  certs->liminf_value = t;
  certs->radius_fn = [t](ShiftKind op, const Exponent&) -> std::optional<double> {
    return op == ShiftKind::forward ? 1.0 : t;
  };
  bool diverges = false;
  if (cycle) {
    for (auto q : list) diverges = diverges || q >= 2;
  } else {
    diverges = list.back() >= 2;
  }
  certs->diverges_value = diverges;
  certs->claim_list.push_back("S is an isometry on every level-regular tree");
  if (cycle) {
    std::ostringstream os;
    os << "sigma(B) is the closed disk of radius (product of one period)^(1/" << list.size()
       << ") = " << t;
    certs->claim_list.push_back(os.str());
  }
  if (!claims.empty()) certs->claim_list = std::move(claims);
  auto spec = gallery_run_spec(name, [s](std::size_t level, const BigInt& size) {
    return std::vector<DegreeRun>{{size, s(level + 1)}};
  });
  return finish(name, std::move(params), std::move(spec), certs);
}

GalleryEntry build_homogeneous(const Json& params) {
  reject_unknown(params, {"q"});
  const std::uint64_t q = integer_param(params, "q", 2, 1);
  return build_sequence("homogeneous", {q}, true, Json{{"q", q}},
                        {"||B|| = " + std::to_string(q) + " and ||S|| = 1",
                         "sigma(B) is the closed disk of radius " + std::to_string(q)});
}

GalleryEntry build_level_sequence(const Json& params) {
  reject_unknown(params, {"s", "extend"});
  const auto s = positive_list(params, "s", {1, 2, 1, 3});
  std::string extend = "cycle";
  if (params.contains("extend")) {
    if (!params.at("extend").is_string()) throw InvalidArgument("extend must be a string");
    extend = params.at("extend").get<std::string>();
  }
  if (extend != "cycle" && extend != "repeat_last") {
    throw InvalidArgument("extend must be cycle or repeat_last");
  }
  return build_sequence("level_sequence", s, extend == "cycle",
                        Json{{"s", s}, {"extend", extend}});
}

GalleryEntry build_periodic(const Json& params) {
  reject_unknown(params, {"q"});
  const auto q = positive_list(params, "q", {2, 3});
  return build_sequence("periodic", q, true, Json{{"q", q}});
}

GalleryEntry build_k_tree(const Json& params) {
  reject_unknown(params, {"k"});
  const std::uint64_t k = integer_param(params, "k", 3, 2);
  const BigInt km1 = from_u64(k - 1);
  auto c = std::make_shared<FamilyCertificates>();
  c->name = "k_tree";
  c->gamma_fn = [km1](std::size_t n) {
    return std::optional<BigInt>(BigInt(static_cast<unsigned long>(n)) * km1 + 1);
  };
  c->max_subtree_fn = [km1](std::size_t m, std::size_t) {
    return std::optional<BigInt>(BigInt(static_cast<unsigned long>(m)) * km1 + 1);
  };
  c->bound_fn = [km1](ShiftKind op, unsigned m, const Exponent& p) -> std::optional<OperatorBound> {
    const BigInt km = BigInt(m) * km1 + 1;  // K(m, r) = mk - m + 1 on every level
    auto g = [km1](std::size_t n) -> BigInt {
      return BigInt(static_cast<unsigned long>(n)) * km1 + 1;
    };
    OperatorBound b;
    b.bounded = true;
    if (op == ShiftKind::forward) {
      b.p_power = Quantity(Rational(km));
      b.ratio = [km, g, m](std::size_t n) {
        return Quantity(make_rational(km * g(n - m), g(n)));
      };
      b.rule = "k-tree: term (mk-m+1)((n-m)(k-1)+1)/(n(k-1)+1) increases to mk-m+1 = " +
               km.get_str() + " without reaching it";
    } else {
      b.p_power = power_p(Rational(km), p);
      b.attained_at = 0;
      b.ratio = [km, g, m, p](std::size_t n) { return weighted(km, make_rational(g(n + m), g(n)), p); };
      b.rule = "k-tree: term (mk-m+1)^(p-1)((n+m)(k-1)+1)/(n(k-1)+1) is largest at n = 0";
    }
    return b;
  };
  c->radius_fn = [](ShiftKind, const Exponent&) -> std::optional<double> { return 1.0; };
  c->leafless_value = true;
  c->diverges_value = true;
  c->claim_list = {"||S|| = k^(1/p) with k = " + std::to_string(k),
                   "sigma(S) is the closed unit disk"};
  auto spec = gallery_run_spec("k_tree", [k](std::size_t, const BigInt& size) {
    std::vector<DegreeRun> runs{{BigInt(1), k}};
    if (size > 1) runs.push_back({size - 1, 1});
    return runs;
  });
  return finish("k_tree", Json{{"k", k}}, std::move(spec), c);
}

GalleryEntry build_quadratic(const Json& params) {
  reject_unknown(params, {});
  auto g = [](std::size_t n) -> BigInt {
    const BigInt b(static_cast<unsigned long>(n));
    return b * (b + 1) / 2 + 1;
  };
  auto km = [](std::size_t m, std::size_t r) -> BigInt {
    const BigInt bm(static_cast<unsigned long>(m));
    return BigInt(1 + bm * static_cast<unsigned long>(r) + bm * (bm + 1) / 2);
  };
  auto c = std::make_shared<FamilyCertificates>();
  c->name = "quadratic_growth";
  c->gamma_fn = [g](std::size_t n) { return std::optional<BigInt>(g(n)); };
  c->max_subtree_fn = [km](std::size_t m, std::size_t r) { return std::optional<BigInt>(km(m, r)); };
  c->bound_fn = [g, km](ShiftKind op, unsigned m, const Exponent& p) -> std::optional<OperatorBound> {
    OperatorBound b;
    if (op == ShiftKind::forward) {
      b.bounded = false;
      b.ratio = [g, km, m](std::size_t n) {
        return Quantity(make_rational(km(m, n - m) * g(n - m), g(n)));
      };
      b.rule = "quadratic growth: K(m,n-m) gamma(n-m)/gamma(n) grows like m n";
      return b;
    }
    b.ratio = [g, km, m, p](std::size_t n) { return weighted(km(m, n), make_rational(g(n + m), g(n)), p); };
    if (p.value() == 1.0) {
      b.bounded = true;
      b.p_power = Quantity(Rational(g(m)));
      b.attained_at = 0;
      b.rule = "quadratic growth, p = 1: gamma(n+m)/gamma(n) is nonincreasing, sup gamma(m)";
    } else {
      b.bounded = false;
      b.rule = "quadratic growth, p > 1: K(m,n)^(p-1) gamma(n+m)/gamma(n) grows without bound";
    }
    return b;
  };
  c->radius_fn = [](ShiftKind op, const Exponent& p) -> std::optional<double> {
    if (op == ShiftKind::backward && p.value() == 1.0) return 1.0;
    return std::nullopt;
  };
  c->leafless_value = true;
  c->diverges_value = true;
  c->claim_list = {"S is unbounded"};
  auto spec = gallery_run_spec("quadratic_growth", [](std::size_t level, const BigInt& size) {
    std::vector<DegreeRun> runs{{BigInt(1), static_cast<std::uint64_t>(level + 2)}};
    if (size > 1) runs.push_back({size - 1, 1});
    return runs;
  });
  return finish("quadratic_growth", Json::object(), std::move(spec), c);
}

GalleryEntry build_factorial(const Json& params) {
  reject_unknown(params, {});
  DegreeSeq s = [](std::size_t n) { return static_cast<std::uint64_t>(n + 1); };
  auto c = level_regular_certificates(
      "factorial", s, [](unsigned) -> std::optional<std::pair<BigInt, std::size_t>> {
        return std::nullopt;
      });
  c->diverges_value = true;
  c->claim_list = {"B is unbounded: for m = 1 the term is (n+2)^p", "gamma(n) = (n+1)!"};
  auto spec = gallery_run_spec("factorial", [s](std::size_t level, const BigInt& size) {
    return std::vector<DegreeRun>{{size, s(level + 1)}};
  });
  return finish("factorial", Json::object(), std::move(spec), c);
}

/// a_0 = 1, a_{n+1} = ceil(3 a_n / 2), cached.
class CeilSequence {
 public:
  BigInt at(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    while (values_.size() <= n) values_.push_back(ceil_div(3 * values_.back(), BigInt(2)));
    return values_[n];
  }

 private:
  std::mutex mutex_;
  std::vector<BigInt> values_{BigInt(1)};
};

/// First n with K(m, n-m) = 2^m and a_{n-m}, ..., a_{n-1} all even, i.e. the
/// term 2^m a_{n-m}/a_n equals (4/3)^m. Searched up to `limit`.
std::optional<std::size_t> ceil_attaining_level(CeilSequence& a, unsigned m, std::size_t limit) {
  std::size_t run = 0;
  for (std::size_t j = 0; j < limit; ++j) {
    run = mpz_even_p(a.at(j).get_mpz_t()) ? run + 1 : 0;
    const std::size_t n = j + 1;
    if (run >= m && n >= 2 * static_cast<std::size_t>(m) - 1) return n;
  }
  return std::nullopt;
}

GalleryEntry build_ceil_three_halves(const Json& params) {
  reject_unknown(params, {});
  auto a = std::make_shared<CeilSequence>();
  auto c = std::make_shared<FamilyCertificates>();
  c->name = "ceil_three_halves";
  c->gamma_fn = [a](std::size_t n) { return std::optional<BigInt>(a->at(n)); };
  c->max_subtree_fn = [](std::size_t m, std::size_t r) -> std::optional<BigInt> {
    if (m >= 1 && m <= r + 1) return pow(BigInt(2), static_cast<unsigned long>(m));
    return std::nullopt;
  };
  c->bound_fn = [a](ShiftKind op, unsigned m, const Exponent&) -> std::optional<OperatorBound> {
    if (op != ShiftKind::forward) return std::nullopt;
    OperatorBound b;
    b.bounded = true;
    b.p_power = Quantity(pow(Rational(4, 3), static_cast<unsigned long>(m)));
    b.attained_at = ceil_attaining_level(*a, m, 4096);
    b.rule = "ceil(3a/2) tree: K(m,n-m) <= 2^m and a_{n-m}/a_n <= (2/3)^m, with both limits "
             "approached, so the sup is (4/3)^m";
    return b;
  };
  c->radius_fn = [](ShiftKind op, const Exponent& p) -> std::optional<double> {
    if (op == ShiftKind::forward) return std::pow(4.0 / 3.0, 1.0 / p.value());
    return std::nullopt;
  };
  c->leafless_value = true;
  c->diverges_value = true;
  c->claim_list = {"||S^m|| = (4/3)^m at p = 1 and r(S) = 4/3",
                   "the leftmost vertex of level m roots a binary tree of depth m+1"};
  auto spec = gallery_run_spec("ceil_three_halves", [](std::size_t, const BigInt& size) {
    const BigInt twos = ceil_div(size, BigInt(2));
    std::vector<DegreeRun> runs{{twos, 2}};
    if (size > twos) runs.push_back({size - twos, 1});
    return runs;
  });
  return finish("ceil_three_halves", Json::object(), std::move(spec), c);
}

GalleryEntry build_two_three(const Json& params) {
  reject_unknown(params, {});
  DegreeSeq s = [](std::size_t n) { return two_three_block_degree(n); };
  auto c = level_regular_certificates(
      "two_three_blocks", s, [](unsigned m) -> std::optional<std::pair<BigInt, std::size_t>> {
        // Every s_n <= 3 and block m is the first run of m threes.
        return std::make_pair(pow(BigInt(3), static_cast<unsigned long>(m)),
                              static_cast<std::size_t>(m) * m);
      });
  c->radius_fn = [](ShiftKind op, const Exponent&) -> std::optional<double> {
    return op == ShiftKind::forward ? 1.0 : 3.0;
  };
  c->diverges_value = true;
  c->claim_list = {"||B^m|| = 3^m, so r(B) = 3",
                   "(s_1...s_n)^(1/n) = sqrt(6) at n = k(k+1), so its liminf is at most sqrt(6)"};
  auto spec = gallery_run_spec("two_three_blocks", [s](std::size_t level, const BigInt& size) {
    return std::vector<DegreeRun>{{size, s(level + 1)}};
  });
  return finish("two_three_blocks", Json::object(), std::move(spec), c);
}

// ---- self-test ----

void add(SelfTestReport& r, std::string name, bool ok, std::string detail) {
  r.checks.push_back({std::move(name), ok ? "pass" : "fail", std::move(detail)});
  r.passed = r.passed && ok;
}

void skip(SelfTestReport& r, std::string name, std::string detail) {
  r.checks.push_back({std::move(name), "skipped", std::move(detail)});
}

std::string p_label(const Exponent& p) {
  std::ostringstream os;
  os << p.value();
  return os.str();
}

void ceil_extras(const LevelTree& t, unsigned max_power, SelfTestReport& r) {
  const std::size_t d = t.depth();
  bool ok = true;
  std::string detail = "all pairs";
  for (unsigned m = 1; m <= max_power && ok; ++m) {
    const Rational bound = pow(Rational(2, 3), static_cast<unsigned long>(m));
    for (std::size_t n = m; n <= d; ++n) {
      if (make_rational(t.gamma(n - m), t.gamma(n)) > bound) {
        ok = false;
        detail = "a_{n-m}/a_n exceeds (2/3)^m at n = " + std::to_string(n) + ", m = " +
                 std::to_string(m);
        break;
      }
    }
  }
  add(r, "ratio a_{n-m}/a_n <= (2/3)^m", ok, detail);

  ok = true;
  detail = "levels m with 2m+1 <= depth";
  for (std::size_t m = 0; 2 * m + 1 <= d && ok; ++m) {
    for (std::size_t k = 1; k <= m + 1; ++k) {
      if (t.gamma_sub(k, {m, 0}) != pow(BigInt(2), static_cast<unsigned long>(k))) {
        ok = false;
        detail = "leftmost vertex of level " + std::to_string(m) + " is not binary to depth " +
                 std::to_string(k);
        break;
      }
    }
    if (ok && m >= 1 && 2 * m + 2 <= d &&
        2 * pow(BigInt(2), static_cast<unsigned long>(m + 1)) > t.gamma(2 * m + 2)) {
      ok = false;
      detail = "2^(m+1) > a_(2m+2)/2 at m = " + std::to_string(m);
    }
  }
  add(r, "binary subtree under the leftmost vertex", ok, detail);
}

void two_three_extras(const LevelTree& t, SelfTestReport& r) {
  const std::vector<std::uint64_t> head = {2, 3, 2, 2, 3, 3};
  bool ok = true;
  for (std::size_t n = 1; n <= head.size(); ++n) ok = ok && two_three_block_degree(n) == head[n - 1];
  add(r, "s_1..s_6 = (2,3,2,2,3,3)", ok, "");
  ok = true;
  std::string detail;
  for (std::size_t k = 1; k * (k + 1) <= t.depth(); ++k) {
    const std::size_t nk = k * (k + 1);
    // (s_1...s_{n_k}) = 6^(n_k / 2) exactly.
    ok = ok && t.gamma(nk) == pow(BigInt(6), static_cast<unsigned long>(nk / 2));
    detail = "checked through k = " + std::to_string(k);
  }
  add(r, "(s_1...s_{k(k+1)})^(1/(k(k+1))) = sqrt 6", ok, detail);
}

}  // namespace

std::uint64_t two_three_block_degree(std::size_t n) {
  if (n == 0) throw InvalidArgument("sequence is indexed from 1");
  // Block k covers k^2+1 .. k^2+k; only the block with k = floor(sqrt(n-1)) can hold n.
  std::size_t k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n - 1)));
  while (k * k > n - 1) --k;
  while ((k + 1) * (k + 1) <= n - 1) ++k;
  return (k >= 1 && n >= k * k + 1 && n <= k * k + k) ? 3 : 2;
}

GalleryEntry build_gallery(const std::string& name, const Json& params) {
  const Json p = params.is_null() ? Json::object() : params;
  if (name == "homogeneous") return build_homogeneous(p);
  if (name == "level_sequence") return build_level_sequence(p);
  if (name == "k_tree") return build_k_tree(p);
  if (name == "quadratic_growth") return build_quadratic(p);
  if (name == "factorial") return build_factorial(p);
  if (name == "ceil_three_halves") return build_ceil_three_halves(p);
  if (name == "periodic") return build_periodic(p);
  if (name == "two_three_blocks") return build_two_three(p);
  throw InvalidArgument("unknown gallery tree '" + name + "'");
}

std::vector<GalleryInfo> gallery_list() {
  return {
      {"homogeneous", "every vertex has q children", Json{{"q", 2}}},
      {"level_sequence", "every level-n vertex has s_{n+1} children; the list cycles or repeats "
                         "its last entry",
       Json{{"s", {1, 2, 1, 3}}, {"extend", "cycle"}}},
      {"k_tree", "one vertex per level (index 0) has k children, the rest have one", Json{{"k", 3}}},
      {"quadratic_growth", "vertex 0 of level n has n+2 children, the rest have one",
       Json::object()},
      {"factorial", "every level-n vertex has n+2 children", Json::object()},
      {"ceil_three_halves",
       "the leftmost ceil(a_n/2) vertices of level n have two children, the rest one",
       Json::object()},
      {"periodic", "level degrees repeat the period q_1..q_L", Json{{"q", {2, 3}}}},
      {"two_three_blocks", "s_n = 3 for k^2+1 <= n <= k^2+k, otherwise 2", Json::object()},
  };
}

SelfTestReport self_test(const GalleryEntry& entry, std::size_t depth,
                         const std::vector<double>& p_list, unsigned max_power) {
  SelfTestReport r;
  r.name = entry.name;
  r.params = entry.params;
  r.depth = depth;
  r.p_list = p_list;
  r.max_power = max_power;
  const auto& c = *entry.certificates;
  r.claims = c.claims();
  const auto tree = materialize(entry.spec, depth);

  if (auto leafless = c.leafless()) {
    add(r, "leafless", tree.is_leafless_up_to() == *leafless,
        tree.is_leafless_up_to() ? "no leaf within depth" : "leaf found");
  }

  {
    bool ok = true;
    bool any = false;
    std::string detail;
    for (std::size_t n = 0; n <= depth && ok; ++n) {
      if (auto g = c.gamma(n)) {
        any = true;
        if (*g != tree.gamma(n)) {
          ok = false;
          detail = "level " + std::to_string(n) + ": closed form " + g->get_str() +
                   ", materialized " + tree.gamma(n).get_str();
        }
      }
    }
    if (any) add(r, "gamma(n) closed form", ok, ok ? "levels 0.." + std::to_string(depth) : detail);
  }

  {
    bool ok = true;
    bool any = false;
    std::string detail;
    for (unsigned m = 1; m <= max_power && ok; ++m) {
      for (std::size_t rr = 0; rr + m <= depth && ok; ++rr) {
        if (auto k = c.max_subtree(m, rr)) {
          any = true;
          if (*k != tree.K(m, rr)) {
            ok = false;
            detail = "K(" + std::to_string(m) + "," + std::to_string(rr) + "): closed form " +
                     k->get_str() + ", computed " + tree.K(m, rr).get_str();
          }
        }
      }
    }
    if (any) add(r, "K(m,r) closed form", ok, detail);
  }

  {
    bool ok = true;
    bool any = false;
    for (std::size_t n = 0; n < depth && ok; ++n) {
      if (auto s = c.level_degree(n)) {
        any = true;
        const auto segs = tree.segments(n);
        ok = segs.size() == 1 && segs.front().degree == *s;
      }
    }
    if (any) add(r, "level degrees", ok, "");
  }

  for (double pv : p_list) {
    const Exponent p(pv);
    for (ShiftKind op : {ShiftKind::forward, ShiftKind::backward}) {
      for (unsigned m = 1; m <= max_power; ++m) {
        const std::string name =
            "norm " + to_string(op) + "^" + std::to_string(m) + " p=" + p_label(p);
        const auto cert = c.norm_bound(op, m, p);
        if (!cert) continue;
        const std::size_t needed = op == ShiftKind::forward ? m + 1 : m;
        if (depth < needed + 2) {
          skip(r, name, "depth too small");
          continue;
        }
        const auto report = operator_norm(tree, op, p, m);
        const Verdict want = cert->bounded ? Verdict::bounded : Verdict::unbounded;
        std::string detail = cert->bounded ? "certified p-th power " + cert->p_power.to_string() +
                                                 ", prefix sup " + report.prefix_sup.to_string()
                                           : "unbounded, last term " +
                                                 report.terms.back().value.to_string();
        for (const auto& mm : report.certificate_mismatches) detail += "; " + mm;
        add(r, name, report.verdict == want && report.certificate_mismatches.empty(), detail);
      }
      if (auto radius = c.spectral_radius(op, p)) {
        const std::string name = "radius " + to_string(op) + " p=" + p_label(p);
        const unsigned powers = std::min<unsigned>(max_power, static_cast<unsigned>(depth - 1));
        if (powers == 0 || !c.norm_bound(op, 1, p)) {
          skip(r, name, "no norm certificates to compare with");
          continue;
        }
        const auto sr = treeshift::spectral_radius(tree, op, p, powers);
        bool ok = true;
        for (double x : sr.radius_sequence) ok = ok && x >= *radius * (1.0 - 1e-9);
        std::ostringstream os;
        os << "closed form " << *radius << ", min of ||T^m||^(1/m) over m <= " << powers << " is "
           << sr.radius_estimate;
        add(r, name, ok, os.str());
      }
    }
  }

  if (auto diverges = c.gamma_diverges()) {
    bool nondecreasing = true;
    for (std::size_t n = 1; n <= depth; ++n) {
      nondecreasing = nondecreasing && tree.gamma(n) >= tree.gamma(n - 1);
    }
    const bool grew = tree.gamma(depth) > tree.gamma(0);
    add(r, "gamma growth", nondecreasing && grew == *diverges,
        "gamma(" + std::to_string(depth) + ") = " + tree.gamma(depth).get_str());
  }

  if (entry.name == "ceil_three_halves") ceil_extras(tree, max_power, r);
  if (entry.name == "two_three_blocks") two_three_extras(tree, r);
  if (entry.name == "periodic" || entry.name == "homogeneous") {
    const auto t = c.root_growth_liminf();
    const std::size_t period =
        entry.name == "periodic" ? entry.params.at("q").size() : std::size_t{1};
    bool ok = true;
    for (std::size_t n = period; n <= depth; n += period) {
      ok = ok && std::abs(std::exp(log_abs(tree.gamma(n)) / static_cast<double>(n)) - *t) <=
                     1e-12 * *t;
    }
    add(r, "geometric mean of the degrees", ok, "");
  }
  return r;
}

}  // namespace treeshift
