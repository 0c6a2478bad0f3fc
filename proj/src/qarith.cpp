#include "qp/qarith.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace qp {

namespace {
const Rational kZero(0);
}

// ---------------------------------------------------------------- LPoly

LPoly::LPoly(const Rational& c, int exp) {
  if (c != 0) {
    lo_ = exp;
    c_.push_back(c);
  }
}

void LPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t k = 0;
  while (k < c_.size() && c_[k] == 0) ++k;
  if (k == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  if (k > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
    lo_ += static_cast<int>(k);
  }
}

const Rational& LPoly::coeff_at(int e) const {
  if (c_.empty() || e < lo_ || e > hi()) return kZero;
  return c_[static_cast<std::size_t>(e - lo_)];
}

LPoly LPoly::operator-() const {
  LPoly r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

LPoly& LPoly::operator+=(const LPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int nlo = std::min(lo_, o.lo_);
  int nhi = std::max(hi(), o.hi());
  if (nlo < lo_) c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - nlo), Rational(0));
  lo_ = nlo;
  c_.resize(static_cast<std::size_t>(nhi - nlo + 1));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[static_cast<std::size_t>(o.lo_ - lo_) + k] += o.c_[k];
  trim();
  return *this;
}

LPoly& LPoly::operator-=(const LPoly& o) { return *this += -o; }

LPoly LPoly::operator*(const LPoly& o) const {
  LPoly r;
  if (is_zero() || o.is_zero()) return r;
  r.lo_ = lo_ + o.lo_;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t a = 0; a < c_.size(); ++a) {
    if (c_[a] == 0) continue;
    for (std::size_t b = 0; b < o.c_.size(); ++b) r.c_[a + b] += c_[a] * o.c_[b];
  }
  r.trim();
  return r;
}

LPoly LPoly::scaled(const Rational& k) const {
  if (k == 0) return LPoly();
  LPoly r(*this);
  for (auto& x : r.c_) x *= k;
  return r;
}

LPoly LPoly::shifted(int k) const {
  LPoly r(*this);
  if (!r.is_zero()) r.lo_ += k;
  return r;
}

void LPoly::divmod(const LPoly& a, const LPoly& b, LPoly& q, LPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  // Work on ordinary polynomials: coefficient index = exponent.
  int da = a.is_zero() ? -1 : a.hi();
  int db = b.hi();
  std::vector<Rational> rem;
  if (!a.is_zero()) {
    rem.assign(static_cast<std::size_t>(da + 1), Rational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) rem[static_cast<std::size_t>(a.lo_) + k] = a.c_[k];
  }
  std::vector<Rational> bc(static_cast<std::size_t>(db + 1), Rational(0));
  for (std::size_t k = 0; k < b.c_.size(); ++k) bc[static_cast<std::size_t>(b.lo_) + k] = b.c_[k];
  q = LPoly();
  if (da < db) {
    r = a;
    return;
  }
  std::vector<Rational> qc(static_cast<std::size_t>(da - db + 1), Rational(0));
  const Rational& lb = bc.back();
  for (int d = da; d >= db; --d) {
    Rational t = rem[static_cast<std::size_t>(d)];
    if (t == 0) continue;
    t /= lb;
    qc[static_cast<std::size_t>(d - db)] = t;
    for (int k = 0; k <= db; ++k) {
      if (bc[static_cast<std::size_t>(k)] != 0) rem[static_cast<std::size_t>(d - db + k)] -= t * bc[static_cast<std::size_t>(k)];
    }
  }
  q.lo_ = 0;
  q.c_ = std::move(qc);
  q.trim();
  r.lo_ = 0;
  rem.resize(static_cast<std::size_t>(db));
  r.c_ = std::move(rem);
  r.trim();
}

LPoly LPoly::gcd(const LPoly& a0, const LPoly& b0) {
  if (a0.is_zero() && b0.is_zero()) return LPoly(Rational(1));
  LPoly a = a0.shifted(-a0.lo_), b = b0.shifted(-b0.lo_);
  if (a.is_zero()) return b.scaled(1 / b.lead());
  if (b.is_zero()) return a.scaled(1 / a.lead());
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.size() == 1) return LPoly(Rational(1));
    LPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = r.is_zero() ? LPoly() : r.scaled(1 / r.lead());
  }
  return a.scaled(1 / a.lead());
}

LPoly LPoly::exact_div(const LPoly& a, const LPoly& b) {
  if (a.is_zero()) return LPoly();
  LPoly an = a.shifted(-a.lo_), bn = b.shifted(-b.lo_);
  LPoly q, r;
  divmod(an, bn, q, r);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q.shifted(a.lo_ - b.lo_);
}

Rational LPoly::eval(const Rational& v0) const {
  if (is_zero()) return Rational(0);
  if (v0 == 0 && lo_ < 0) throw std::domain_error("pole at v0");
  Rational acc(0);
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * v0 + c_[k];
  if (lo_ != 0) {
    Rational p(1), base = lo_ > 0 ? v0 : Rational(1 / v0);
    for (int k = 0; k < std::abs(lo_); ++k) p *= base;
    acc *= p;
  }
  return acc;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const LPoly& num, const LPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  canonicalize();
}

Scalar Scalar::v_pow(int k) {
  Scalar s;
  s.num_ = LPoly(Rational(1), k);
  return s;
}

bool Scalar::is_one() const { return den_.is_constant() && num_.is_constant() && num_.lead() == 1; }

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = LPoly(Rational(1));
    return;
  }
  // Move powers of v from the denominator into the numerator.
  int s = den_.lo_;
  if (s != 0) {
    den_.lo_ = 0;
    num_.lo_ -= s;
  }
  if (!den_.is_constant()) {
    LPoly g = LPoly::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = LPoly::exact_div(num_, g);
      den_ = LPoly::exact_div(den_, g);
      int t = den_.lo_;
      den_.lo_ = 0;
      num_.lo_ -= t;
    }
  }
  Rational l = den_.lead();
  if (l != 1) {
    Rational il = 1 / l;
    num_ = num_.scaled(il);
    den_ = den_.scaled(il);
  }
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  Scalar r;
  if (den_ == o.den_) {
    r.num_ = num_ + o.num_;
    r.den_ = den_;
    if (!r.den_.is_constant()) r.canonicalize();
    else if (r.num_.is_zero()) r.den_ = LPoly(Rational(1));
    return r;
  }
  if (den_.is_constant()) {
    r.num_ = num_ * o.den_ + o.num_;
    r.den_ = o.den_;
    r.canonicalize();
    return r;
  }
  if (o.den_.is_constant()) {
    r.num_ = num_ + o.num_ * den_;
    r.den_ = den_;
    r.canonicalize();
    return r;
  }
  LPoly g = LPoly::gcd(den_, o.den_);
  LPoly d1 = LPoly::exact_div(den_, g), d2 = LPoly::exact_div(o.den_, g);
  r.num_ = num_ * d2 + o.num_ * d1;
  r.den_ = den_ * d2;
  r.canonicalize();
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  Scalar r;
  if (den_.is_constant() && o.den_.is_constant()) {
    r.num_ = num_ * o.num_;
    return r;
  }
  LPoly a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_constant()) {
    LPoly g = LPoly::gcd(a, d);
    if (!g.is_constant()) {
      a = LPoly::exact_div(a, g);
      d = LPoly::exact_div(d, g);
    }
  }
  if (!b.is_constant()) {
    LPoly g = LPoly::gcd(c, b);
    if (!g.is_constant()) {
      c = LPoly::exact_div(c, g);
      b = LPoly::exact_div(b, g);
    }
  }
  r.num_ = a * c;
  r.den_ = b * d;
  int s = r.den_.lo_;
  r.den_.lo_ = 0;
  r.num_.lo_ -= s;
  Rational l = r.den_.lead();
  if (l != 1) {
    Rational il = 1 / l;
    r.num_ = r.num_.scaled(il);
    r.den_ = r.den_.scaled(il);
  }
  return r;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Scalar(den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::pow(int k) const {
  if (k < 0) return inv().pow(-k);
  Scalar r(1), b(*this);
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------- text form

namespace {

std::string rat_str(const Rational& r) {
  std::string s = r.get_num().get_str();
  if (r.get_den() != 1) s += "/" + r.get_den().get_str();
  return s;
}

std::string q_power_str(int vexp) {
  if (vexp == 0) return "";
  if (vexp == 2) return "q";
  if (vexp % 2 == 0) return "q^" + std::to_string(vexp / 2);
  return "q^(" + std::to_string(vexp) + "/2)";
}

std::string poly_str(const LPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int e = p.hi(); e >= p.lo(); --e) {
    const Rational& c = p.coeff_at(e);
    if (c == 0) continue;
    Rational a = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mon = q_power_str(e);
    if (mon.empty()) {
      out += rat_str(a);
    } else if (a == 1) {
      out += mon;
    } else {
      out += rat_str(a) + "*" + mon;
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}
  Scalar parse() {
    Scalar r = expr();
    skip();
    if (p_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  const std::string& s_;
  std::size_t p_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("scalar parse error at " + std::to_string(p_) + ": " + why);
  }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char ch) {
    skip();
    if (p_ < s_.size() && s_[p_] == ch) {
      ++p_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    skip();
    Scalar acc;
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Scalar t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else break;
    }
    return acc;
  }
  Scalar term() {
    Scalar acc = factor();
    for (;;) {
      if (eat('*')) acc *= factor();
      else if (eat('/')) acc /= factor();
      else break;
    }
    return acc;
  }
  // Exponent in units of 1/2 (v-exponent for a q power).
  int half_exponent() {
    skip();
    if (eat('(')) {
      int sign = eat('-') ? -1 : 1;
      long a = integer();
      long b = 1;
      if (eat('/')) b = integer();
      if (!eat(')')) fail("expected )");
      if (b != 1 && b != 2) fail("q exponent denominator must be 1 or 2");
      return static_cast<int>(sign * (b == 1 ? 2 * a : a));
    }
    int sign = eat('-') ? -1 : 1;
    return static_cast<int>(sign * 2 * integer());
  }
  long integer() {
    skip();
    std::size_t st = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (st == p_) fail("expected integer");
    return std::stol(s_.substr(st, p_ - st));
  }
  Scalar factor() {
    skip();
    Scalar base;
    if (eat('(')) {
      base = expr();
      if (!eat(')')) fail("expected )");
      if (eat('^')) {
        int sign = eat('-') ? -1 : 1;
        base = base.pow(static_cast<int>(sign * integer()));
      }
      return base;
    }
    if (p_ < s_.size() && (s_[p_] == 'q' || s_[p_] == 'v')) {
      bool isq = s_[p_] == 'q';
      ++p_;
      int vexp = isq ? 2 : 1;
      if (eat('^')) {
        int h = half_exponent();
        vexp = isq ? h : h / 2;
        if (!isq && h % 2 != 0) fail("v exponent must be an integer");
      }
      return Scalar::v_pow(vexp);
    }
    if (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) {
      std::size_t st = p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      return Scalar(Rational(s_.substr(st, p_ - st)));
    }
    fail("unexpected character");
  }
};

}  // namespace

std::string Scalar::str() const {
  if (den_.is_constant()) return poly_str(num_);
  std::string n = poly_str(num_), d = poly_str(den_);
  bool nsimple = num_.size() == 1;
  return (nsimple ? n : "(" + n + ")") + "/(" + d + ")";
}

Scalar Scalar::parse(const std::string& s) { return Parser(s).parse(); }

// ---------------------------------------------------------------- q-combinatorics

Rational eval_at(const Scalar& s, const Rational& v0) {
  Rational d = s.den().eval(v0);
  if (d == 0) throw std::domain_error("pole at v0");
  return s.num().eval(v0) / d;
}

Scalar q_int(int m) {
  if (m == 0) return Scalar();
  if (m < 0) return -q_int(-m);
  LPoly p;
  for (int k = 0; k < m; ++k) p += LPoly(Rational(1), 2 * (m - 1 - 2 * k));
  return Scalar(p);
}

Scalar q_factorial(int k) {
  if (k < 0) throw std::invalid_argument("q_factorial: negative argument");
  Scalar r(1);
  for (int j = 2; j <= k; ++j) r *= q_int(j);
  return r;
}

Scalar q_binomial(int m, int k) {
  if (m < 0 || k < 0 || k > m) throw std::invalid_argument("q_binomial: out of range");
  Scalar r = q_factorial(m) / (q_factorial(k) * q_factorial(m - k));
  if (!r.is_laurent()) throw std::logic_error("q_binomial: inexact division");
  return r;
}

}  // namespace qp
