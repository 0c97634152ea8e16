#include "treeshift/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "treeshift/errors.hpp"

namespace treeshift {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (sgn(den) == 0) throw InvalidArgument("zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::string to_string(const BigInt& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

double to_double(const BigInt& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::ldexp(mant, static_cast<int>(exp));
}

double to_double(const Rational& x) {
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

double log_abs(const BigInt& x) {
  if (sgn(x) == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::abs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double log_abs(const Rational& x) {
  return log_abs(BigInt(x.get_num())) - log_abs(BigInt(x.get_den()));
}

std::uint64_t to_u64(const BigInt& x) {
  if (sgn(x) < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 64) {
    throw InvalidArgument("integer " + x.get_str() + " does not fit in 64 bits");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
  return out;
}

std::size_t to_size(const BigInt& x) { return static_cast<std::size_t>(to_u64(x)); }

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Rational out(pow(BigInt(base.get_num()), exponent),
               pow(BigInt(base.get_den()), exponent));
  out.canonicalize();
  return out;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent >= 0) return pow(base, static_cast<unsigned long>(exponent));
  if (sgn(base) == 0) throw InvalidArgument("zero raised to a negative power");
  return Rational(1) / pow(base, static_cast<unsigned long>(-exponent));
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt random_below(const BigInt& bound, std::mt19937_64& rng) {
  if (sgn(bound) <= 0) throw InvalidArgument("random_below needs a positive bound");
  if (mpz_sizeinbase(bound.get_mpz_t(), 2) <= 63) {
    std::uniform_int_distribution<std::uint64_t> dist(0, to_u64(bound) - 1);
    return BigInt(static_cast<unsigned long>(dist(rng)));
  }
  // Rejection sampling over whole 64-bit limbs.
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  while (true) {
    BigInt candidate = 0;
    for (std::size_t i = 0; i < words; ++i) {
      candidate <<= 64;
      candidate += BigInt(static_cast<unsigned long>(rng()));
    }
    mpz_fdiv_r_2exp(candidate.get_mpz_t(), candidate.get_mpz_t(), bits);
    if (candidate < bound) return candidate;
  }
}

Exponent::Exponent(double p) : p_(p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw InvalidArgument("exponent p must be a finite real >= 1");
  }
  if (std::floor(p) == p && p <= 1e6) integer_ = static_cast<unsigned long>(p);
}

unsigned long Exponent::as_integer() const {
  if (!integer_) throw InvalidArgument("exact mode requires an integer exponent p");
  return *integer_;
}

Quantity Quantity::approximate(double v) {
  Quantity q;
  q.exact_.reset();
  q.approx_ = v;
  return q;
}

const Rational& Quantity::exact() const {
  if (!exact_) throw InvalidArgument("quantity is only known approximately");
  return *exact_;
}

std::string Quantity::to_string() const {
  if (exact_) return exact_->get_str();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", approx_);
  return buf;
}

Quantity operator*(const Quantity& a, const Quantity& b) {
  if (a.is_exact() && b.is_exact()) return Quantity(a.exact() * b.exact());
  return Quantity::approximate(a.value() * b.value());
}

Quantity operator/(const Quantity& a, const Quantity& b) {
  if (a.is_exact() && b.is_exact()) return Quantity(a.exact() / b.exact());
  return Quantity::approximate(a.value() / b.value());
}

int compare(const Quantity& a, const Quantity& b, double rel_tol) {
  if (a.is_exact() && b.is_exact()) {
    const int c = cmp(a.exact(), b.exact());
    return (c > 0) - (c < 0);
  }
  const double x = a.value();
  const double y = b.value();
  if (x == y) return 0;
  if (std::isinf(x) || std::isinf(y)) return x < y ? -1 : 1;
  const double magnitude = std::max(std::abs(x), std::abs(y));
  if (std::abs(x - y) <= rel_tol * magnitude) return 0;
  return x < y ? -1 : 1;
}

Quantity abs_pow(const Rational& x, const Exponent& p) {
  if (p.is_integer()) return Quantity(pow(Rational(abs(x)), p.as_integer()));
  return Quantity::approximate(std::pow(std::abs(to_double(x)), p.value()));
}

Quantity abs_pow(const Complex& x, const Exponent& p) {
  return Quantity::approximate(std::pow(std::abs(x), p.value()));
}

double root(const Quantity& x, const Exponent& p) {
  if (p.value() == 1.0) return x.value();
  if (x.is_exact() && sgn(x.exact()) > 0) {
    return std::exp(log_abs(x.exact()) / p.value());
  }
  return std::pow(x.value(), 1.0 / p.value());
}

}  // namespace treeshift
