#include "qp/lattice.hpp"

#include <json.hpp>
#include <stdexcept>

namespace qp {

namespace {
Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}
}  // namespace

LatticeElt LatticeElt::operator+(const LatticeElt& o) const {
  LatticeElt r(*this);
  for (std::size_t k = 0; k < exps.size(); ++k) r.exps[k] += o.exps[k];
  return r;
}

LatticeElt LatticeElt::operator-(const LatticeElt& o) const {
  LatticeElt r(*this);
  for (std::size_t k = 0; k < exps.size(); ++k) r.exps[k] -= o.exps[k];
  return r;
}

LatticeElt LatticeElt::operator*(int k) const {
  LatticeElt r(*this);
  for (auto& e : r.exps) e *= k;
  return r;
}

RootData::RootData(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
}

int RootData::cartan(int i, int j) const {
  if (i == j) return 2;
  return std::abs(i - j) == 1 ? -1 : 0;
}

LatticeElt RootData::alpha(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("alpha index");
  LatticeElt e = zero();
  if (i == 1) {
    for (int k = 2; k <= n_; ++k) e.exps[static_cast<std::size_t>(k - 2)] = -k;
    e.exps.back() = n_ + 1;
  } else {
    e.exps[static_cast<std::size_t>(i - 2)] = 1;
  }
  return e;
}

// Weight-consistent word e^{-a_{i+1}} e^{-2a_{i+2}} ... e^{-(n-i)a_n} e^{(n-i+1) l_n}; e^{l_0} = 1.
LatticeElt RootData::lambda(int i) const {
  if (i < 0 || i > n_) throw std::out_of_range("lambda index");
  LatticeElt e = zero();
  if (i == 0) return e;
  for (int k = std::max(i + 1, 2); k <= n_; ++k) e.exps[static_cast<std::size_t>(k - 2)] = -(k - i);
  e.exps.back() = n_ - i + 1;
  return e;
}

SignedLatticeElt RootData::embed_generator(GenKind kind, int i) const {
  return SignedLatticeElt{1, kind == GenKind::Alpha ? alpha(i) : lambda(i)};
}

Rational RootData::pairing(const LatticeElt& a, const LatticeElt& b) const {
  Rational s(0);
  int m = n_ - 1;  // number of alpha generators
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) s += a.exps[static_cast<std::size_t>(k)] * b.exps[static_cast<std::size_t>(l)] * cartan(k + 2, l + 2);
  }
  if (n_ >= 2) {
    // (a_n, l_n) = 1
    s += a.exps[static_cast<std::size_t>(m - 1)] * b.exps[static_cast<std::size_t>(m)];
    s += a.exps[static_cast<std::size_t>(m)] * b.exps[static_cast<std::size_t>(m - 1)];
  }
  s += Rational(a.exps[static_cast<std::size_t>(m)] * b.exps[static_cast<std::size_t>(m)]) * frac(n_, n_ + 1);
  return s;
}

int RootData::pair_alpha(int i, const LatticeElt& w) const {
  int s = 0;
  for (int k = 2; k <= n_; ++k) s += cartan(i, k) * w.exps[static_cast<std::size_t>(k - 2)];
  if (i == n_) s += w.exps.back();
  return s;
}

int RootData::pairing_int(const LatticeElt& a, const LatticeElt& b) const {
  Rational p = pairing(a, b);
  if (p.get_den() != 1) throw std::logic_error("pairing is not integral");
  return static_cast<int>(p.get_num().get_si());
}

int RootData::gen_parity(int g, int h) const {
  int m = n_ - 1;
  if (g == h) return 0;
  if (g < m && h < m) return std::abs(g - h) == 1 ? 1 : 0;
  int a = g < m ? g : h;  // the alpha generator index
  return (a + 2 == n_) ? 1 : 0;
}

int RootData::product_sign(const LatticeElt& a, const LatticeElt& b) const {
  // Each generator h of b moves left past every later generator g > h of a.
  long t = 0;
  for (int g = 0; g < n_; ++g) {
    for (int h = 0; h < g; ++h) {
      if (gen_parity(g, h)) t += static_cast<long>(a.exps[static_cast<std::size_t>(g)]) * b.exps[static_cast<std::size_t>(h)];
    }
  }
  return (t % 2 == 0) ? 1 : -1;
}

int RootData::commutation_sign(const LatticeElt& a, const LatticeElt& b) const {
  return product_sign(a, b) * product_sign(b, a);
}

SignedLatticeElt RootData::mul(const SignedLatticeElt& a, const SignedLatticeElt& b) const {
  return SignedLatticeElt{a.sign * b.sign * product_sign(a.elt, b.elt), a.elt + b.elt};
}

std::vector<Rational> RootData::to_simple_roots(const LatticeElt& w) const {
  std::vector<Rational> c(static_cast<std::size_t>(n_), Rational(0));
  for (int k = 2; k <= n_; ++k) c[static_cast<std::size_t>(k - 1)] += w.exps[static_cast<std::size_t>(k - 2)];
  for (int k = 1; k <= n_; ++k) c[static_cast<std::size_t>(k - 1)] += frac(w.exps.back() * k, n_ + 1);
  return c;
}

LatticeElt RootData::from_root_counts(const std::vector<int>& counts) const {
  LatticeElt e = zero();
  for (int i = 1; i <= n_; ++i) e = e + alpha(i) * counts[static_cast<std::size_t>(i - 1)];
  return e;
}

std::vector<int> RootData::root_counts(const LatticeElt& w, int sector) const {
  auto c = to_simple_roots(w - lambda(sector));
  std::vector<int> out;
  for (auto& x : c) {
    if (x.get_den() != 1) throw std::logic_error("weight is not in the sector coset");
    out.push_back(static_cast<int>(x.get_num().get_si()));
  }
  return out;
}

int RootData::z_exponent(const LatticeElt& alpha_elt, const LatticeElt& beta, int sector) const {
  return pairing_int(alpha_elt, beta + lambda(sector));
}

std::string RootData::to_json(const SignedLatticeElt& e) const {
  nlohmann::json j;
  j["sign"] = e.sign;
  j["exps"] = e.elt.exps;
  return j.dump();
}

SignedLatticeElt RootData::from_json(const std::string& s) const {
  auto j = nlohmann::json::parse(s);
  SignedLatticeElt e;
  e.sign = j.at("sign").get<int>();
  e.elt.exps = j.at("exps").get<std::vector<int>>();
  if ((e.sign != 1 && e.sign != -1) || static_cast<int>(e.elt.exps.size()) != n_) throw std::invalid_argument("bad lattice json");
  return e;
}

}  // namespace qp
