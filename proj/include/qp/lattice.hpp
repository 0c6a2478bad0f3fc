#pragma once

#include <string>
#include <vector>

#include "qp/qarith.hpp"

namespace qp {

// Exponents (m_2, ..., m_n, m_{n+1}) of the normal-form word
// e^{m_2 a_2} ... e^{m_n a_n} e^{m_{n+1} l_n}. Doubles as a weight of P in these coordinates.
struct LatticeElt {
  std::vector<int> exps;
  bool operator==(const LatticeElt& o) const { return exps == o.exps; }
  bool operator!=(const LatticeElt& o) const { return exps != o.exps; }
  bool operator<(const LatticeElt& o) const { return exps < o.exps; }
  LatticeElt operator+(const LatticeElt& o) const;
  LatticeElt operator-(const LatticeElt& o) const;
  LatticeElt operator*(int k) const;
};

struct SignedLatticeElt {
  int sign = 1;
  LatticeElt elt;
  bool operator==(const SignedLatticeElt& o) const { return sign == o.sign && elt == o.elt; }
};

enum class GenKind { Alpha, Lambda };

// Type A_n root data and the twisted group algebra C{P}.
class RootData {
 public:
  explicit RootData(int n);

  int n() const { return n_; }
  int cartan(int i, int j) const;  // colors 1..n

  LatticeElt zero() const { return LatticeElt{std::vector<int>(static_cast<std::size_t>(n_), 0)}; }
  LatticeElt alpha(int i) const;   // i = 1..n
  LatticeElt lambda(int i) const;  // i = 0..n
  SignedLatticeElt embed_generator(GenKind kind, int i) const;

  // Symmetric form on P in generator coordinates; may be fractional.
  Rational pairing(const LatticeElt& a, const LatticeElt& b) const;
  // (alpha_i, w), always an integer for w in P.
  int pair_alpha(int i, const LatticeElt& w) const;
  // Integer pairing when it is known to be integral; throws otherwise.
  int pairing_int(const LatticeElt& a, const LatticeElt& b) const;

  SignedLatticeElt mul(const SignedLatticeElt& a, const SignedLatticeElt& b) const;
  // Sign s with e^a e^b = s e^b e^a.
  int commutation_sign(const LatticeElt& a, const LatticeElt& b) const;
  // Sign picked up when writing the product of two normal-form words in normal form.
  int product_sign(const LatticeElt& a, const LatticeElt& b) const;

  // Simple-root coordinates of a weight (rational in general).
  std::vector<Rational> to_simple_roots(const LatticeElt& w) const;
  // Weight with integer simple-root coordinates counts[0..n-1].
  LatticeElt from_root_counts(const std::vector<int>& counts) const;
  // Root counts of w - lambda(sector); throws if not in Q.
  std::vector<int> root_counts(const LatticeElt& w, int sector) const;

  int z_exponent(const LatticeElt& alpha_elt, const LatticeElt& beta, int sector) const;

  std::string to_json(const SignedLatticeElt& e) const;
  SignedLatticeElt from_json(const std::string& s) const;

 private:
  int n_;
  // Parity of the generator commutation exponent s(g, h), generator index 0..n-1.
  int gen_parity(int g, int h) const;
};

}  // namespace qp
