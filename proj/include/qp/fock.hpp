#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qp/qarith.hpp"

namespace qp {

// Multiset of creation factors a_i(-r), stored sorted as codes r*32 + color.
class FockMonomial {
 public:
  FockMonomial() = default;
  static int code(int color, int r) { return r * 32 + color; }
  static int color_of(int code) { return code % 32; }
  static int r_of(int code) { return code / 32; }

  const std::vector<int>& parts() const { return parts_; }
  int depth() const;
  bool is_vacuum() const { return parts_.empty(); }
  int multiplicity(int color, int r) const;

  FockMonomial with(int color, int r) const;      // add one factor
  FockMonomial without(int color, int r) const;   // remove one factor (must be present)
  FockMonomial times(const FockMonomial& o) const;

  bool operator==(const FockMonomial& o) const { return parts_ == o.parts_; }
  bool operator<(const FockMonomial& o) const { return parts_ < o.parts_; }
  std::size_t hash() const;
  std::string str() const;

 private:
  std::vector<int> parts_;
};

using FockVector = std::map<FockMonomial, Scalar>;

void add_to(FockVector& v, const FockMonomial& m, const Scalar& s);

// [a_ij r][c r] / r, the Heisenberg pairing of a_i(r) with a_j(-r) at level c.
Scalar heisenberg_pairing(int aij, int r, int c);

// Coefficient table for exp(sum_r sum_i coef(i, r) a_i(-/+r) z^{+/-r}), computed eagerly for r <= rmax.
class ExpTable {
 public:
  ExpTable() = default;
  ExpTable(int ncolors, int rmax, const std::function<Scalar(int color, int r)>& gen);
  int rmax() const { return d_ ? d_->rmax : 0; }
  int ncolors() const { return d_ ? d_->ncolors : 0; }
  const Scalar& at(int color, int r) const;
  bool zero_color(int color) const { return d_->zero[static_cast<std::size_t>(color - 1)]; }
  bool empty() const;
  // Pointwise sum of two tables over the same colors.
  ExpTable plus(const ExpTable& o) const;
  // Copies share storage; the identity keys the creation-term cache.
  const void* id() const { return d_.get(); }

 private:
  struct Data {
    int ncolors = 0, rmax = 0;
    std::vector<std::vector<Scalar>> c;  // c[color-1][r]
    std::vector<bool> zero;
  };
  std::shared_ptr<const Data> d_;
};

// Terms of the z^d coefficient of a creation exponential: (monomial to multiply by, scalar).
std::vector<std::pair<FockMonomial, Scalar>> creation_terms(const ExpTable& t, int d);
// Memoized creation_terms, safe for concurrent callers; the table is kept alive by the cache.
const std::vector<std::pair<FockMonomial, Scalar>>& creation_terms_cached(const ExpTable& t, int d);

// Annihilation exponential on one monomial, as (z exponent <= 0, monomial, scalar) triples.
struct AnnTerm {
  int zexp;
  FockMonomial mono;
  Scalar coeff;
};
std::vector<AnnTerm> annihilation_terms(const ExpTable& t, const FockMonomial& m, int level,
                                        const std::function<int(int, int)>& cartan);

// Mode-level operations on K(c).
FockVector create(int color, int r, const FockVector& v);
FockVector annihilate(int color, int r, int level, const FockVector& v, const std::function<int(int, int)>& cartan);

enum class ExpKind { EMinusPlus, EMinusMinus, EPlusPlus, EPlusMinus, KPlus };

// One named exponential: E_-^{+/-}(sign*a_i, beta z), E_+^{+/-}(sign*a_i, beta z) or k_i^+(beta z),
// with beta = v^{beta_vexp}.
struct ExpSpec {
  ExpKind kind;
  int color;
  int sign = 1;
  int beta_vexp = 0;
  int level = 1;
  int ncolors = 1;
};

ExpTable make_table(const ExpSpec& s, int rmax);

// z-coefficients of the exponential applied to v, for exponents in [lo, hi].
std::map<int, FockVector> apply_exp_series(const ExpSpec& s, int lo, int hi, const FockVector& v,
                                           const std::function<int(int, int)>& cartan);

std::string fock_json(const FockVector& v);

}  // namespace qp
