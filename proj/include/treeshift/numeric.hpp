#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace treeshift {

using BigInt = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

/// num/den in lowest terms (mpq_class does not canonicalize on construction).
Rational make_rational(const BigInt& num, const BigInt& den);

std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);

/// Conversions that stay finite for huge operands (level sizes overflow a
/// double long before they overflow memory).
double to_double(const BigInt& x);
double to_double(const Rational& x);
double log_abs(const BigInt& x);
double log_abs(const Rational& x);

std::uint64_t to_u64(const BigInt& x);
std::size_t to_size(const BigInt& x);

inline BigInt from_u64(std::uint64_t x) { return BigInt(static_cast<unsigned long>(x)); }

BigInt pow(const BigInt& base, unsigned long exponent);
Rational pow(const Rational& base, unsigned long exponent);
/// Integer powers with negative exponents, base must be nonzero when e < 0.
Rational pow(const Rational& base, long exponent);

BigInt ceil_div(const BigInt& a, const BigInt& b);
BigInt floor_div(const BigInt& a, const BigInt& b);

/// Uniform in [0, bound); bound must be positive.
BigInt random_below(const BigInt& bound, std::mt19937_64& rng);

/// Exponent p >= 1 of the Hardy norm. Integer exponents keep p-th powers of
/// rationals rational, which is what the exact code paths rely on.
class Exponent {
 public:
  explicit Exponent(double p);
  double value() const { return p_; }
  bool is_integer() const { return integer_.has_value(); }
  unsigned long as_integer() const;

 private:
  double p_;
  std::optional<unsigned long> integer_;
};

/// A nonnegative real carried exactly as a rational when the computation
/// allowed it, otherwise as a double.
class Quantity {
 public:
  Quantity() : exact_(Rational(0)), approx_(0.0) {}
  Quantity(const Rational& exact)  // NOLINT: implicit by intent
      : exact_(exact), approx_(to_double(exact)) {}
  Quantity(const BigInt& exact) : Quantity(Rational(exact)) {}  // NOLINT
  static Quantity approximate(double v);

  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact() const;
  double value() const { return approx_; }

  std::string to_string() const;

  friend Quantity operator*(const Quantity& a, const Quantity& b);
  friend Quantity operator/(const Quantity& a, const Quantity& b);

 private:
  std::optional<Rational> exact_;
  double approx_;
};

inline constexpr double kRelativeTolerance = 1e-12;

/// Three-way comparison. Exact when both sides are exact, otherwise with
/// relative tolerance `rel_tol` (values within tolerance compare equal).
int compare(const Quantity& a, const Quantity& b,
            double rel_tol = kRelativeTolerance);

/// |x|^p for the value types carried by tree functions.
Quantity abs_pow(const Rational& x, const Exponent& p);
Quantity abs_pow(const Complex& x, const Exponent& p);

/// x^(1/p) as a double.
double root(const Quantity& x, const Exponent& p);

inline bool is_zero(const BigInt& x) { return sgn(x) == 0; }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }

inline BigInt scale(const BigInt& v, const BigInt& n) { return v * n; }
inline Rational scale(const Rational& v, const BigInt& n) { return v * Rational(n); }
inline Complex scale(const Complex& v, const BigInt& n) { return v * to_double(n); }

inline double abs_value(const Rational& x) { return std::abs(to_double(x)); }
inline double abs_value(const Complex& x) { return std::abs(x); }

}  // namespace treeshift
