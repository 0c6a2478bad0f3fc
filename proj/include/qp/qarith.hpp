#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace qp {

using Rational = mpq_class;

// Laurent polynomial in v = q^{1/2} over Q, dense between lo and lo+size-1.
class LPoly {
 public:
  LPoly() = default;
  explicit LPoly(const Rational& c, int exp = 0);
  static LPoly monomial(const Rational& c, int exp) { return LPoly(c, exp); }

  bool is_zero() const { return c_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const Rational& coeff_at(int e) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lead() const { return c_.back(); }
  bool is_constant() const { return c_.size() == 1 && lo_ == 0; }

  LPoly operator-() const;
  LPoly& operator+=(const LPoly& o);
  LPoly& operator-=(const LPoly& o);
  LPoly operator+(const LPoly& o) const { LPoly r(*this); r += o; return r; }
  LPoly operator-(const LPoly& o) const { LPoly r(*this); r -= o; return r; }
  LPoly operator*(const LPoly& o) const;
  LPoly scaled(const Rational& k) const;
  LPoly shifted(int k) const;  // multiply by v^k

  bool operator==(const LPoly& o) const { return lo_ == o.lo_ && c_ == o.c_; }
  bool operator!=(const LPoly& o) const { return !(*this == o); }

  // Polynomial division on the ordinary polynomial parts (lo must be 0 for both).
  static void divmod(const LPoly& a, const LPoly& b, LPoly& q, LPoly& r);
  // Monic gcd of the polynomial parts after stripping powers of v.
  static LPoly gcd(const LPoly& a, const LPoly& b);
  // Exact quotient a/b; throws if the division leaves a remainder.
  static LPoly exact_div(const LPoly& a, const LPoly& b);

  Rational eval(const Rational& v0) const;

 private:
  friend class Scalar;
  int lo_ = 0;
  std::vector<Rational> c_;
  void trim();
};

// Element of Q(v), kept as num/den with gcd 1, den having lo 0 and leading coefficient 1.
class Scalar {
 public:
  Scalar() : num_(), den_(Rational(1)) {}
  Scalar(long k) : num_(Rational(k)), den_(Rational(1)) {}  // NOLINT
  Scalar(const Rational& k) : num_(k), den_(Rational(1)) {}  // NOLINT
  explicit Scalar(const LPoly& p) : num_(p), den_(Rational(1)) {}
  Scalar(const LPoly& num, const LPoly& den);

  static Scalar v_pow(int k);  // v^k
  static Scalar q_pow(int k) { return v_pow(2 * k); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_laurent() const { return den_.is_constant(); }
  const LPoly& num() const { return num_; }
  const LPoly& den() const { return den_; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar inv() const;
  Scalar pow(int k) const;

  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Rough size used for pivot selection.
  std::size_t weight() const { return num_.size() + den_.size(); }

  std::string str() const;
  static Scalar parse(const std::string& s);

 private:
  LPoly num_, den_;
  void canonicalize();
};

Rational eval_at(const Scalar& s, const Rational& v0);

Scalar q_int(int m);
Scalar q_factorial(int k);
Scalar q_binomial(int m, int k);

}  // namespace qp
