#pragma once

#include <string>
#include <vector>

#include "qp/modules.hpp"

namespace qp {

enum class Flavor { Type1, Type2 };

std::string flavor_name(Flavor f);

struct QPFactor {
  int color = 1;
  int charge = 1;
  int degree = 0;
  bool operator==(const QPFactor& o) const = default;
};

// A monomial of quasi-particles. factors[0] is the rightmost operator, i.e. the first one applied;
// this is also the index order used by the orders < and prec.
struct QPMonomial {
  Flavor flavor = Flavor::Type1;
  std::vector<QPFactor> factors;

  bool operator==(const QPMonomial& o) const = default;

  int degree() const;
  // Colors nondecreasing along application order, then charges nonincreasing, then degrees nonincreasing.
  bool canonical() const;

  std::vector<int> color_type(int n) const;                             // m_i per color, index i-1
  std::vector<int> charge_type(int color) const;                        // m_{1,i}, m_{2,i}, ...
  std::vector<int> dual_charge_type(int color) const;                   // r^{(1)}, r^{(2)}, ...
  std::vector<int> color_charge_type() const;                           // charges in application order
  std::vector<std::vector<int>> color_dual_charge_type(int n) const;    // per color
  std::vector<int> color_degree_type(int n) const;                      // degree sums per color, index i-1
  std::vector<int> degree_sequence() const;                             // degrees in application order
  WeightKey key(int n) const;

  std::string str() const;   // written left to right as operators
  std::string json() const;  // {"flavor":..,"factors":[[color,charge,degree],...]} in application order
};

// Tuples (l_1..l_m) in [1..c]^m with their compiled words; zero contraction scalars are kept for inspection.
VertexWord compile_qp_tuple(const ModuleHandle& h, Flavor f, int color, const std::vector<int>& tuple);
// All surviving words of the charge-m current on the handle (cached).
const std::vector<VertexWord>& compile_qp(const ModuleHandle& h, Flavor f, int color, int m);
inline const std::vector<VertexWord>& compile_qp1(const ModuleHandle& h, int color, int m) {
  return compile_qp(h, Flavor::Type1, color, m);
}
inline const std::vector<VertexWord>& compile_qp2(const ModuleHandle& h, int color, int m) {
  return compile_qp(h, Flavor::Type2, color, m);
}

// Mode r of the charge-m current, the z^{-r-m} coefficient.
ModuleVector apply_qp_mode(const ModuleHandle& h, Flavor f, const QPFactor& x, const ModuleVector& v);
// Factors applied in application order.
ModuleVector apply_monomial(const ModuleHandle& h, const QPMonomial& b, const ModuleVector& v);
// Modes above this index annihilate v.
int qp_vanishing_bound(const ModuleHandle& h, Flavor f, int color, int m, const ModuleVector& v);

// Prefactor value of the limit substitution z_p = z q^{2(p-1)}.
Scalar qp_prefactor(Flavor f, int m);

// Independent path for current products: the z^N coefficient of
//   P(z_1..z_m) X_1(z_1) ... X_m(z_m) v  at  z_p = z v^{vexps[p]},
// computed from nested single-current coefficients. P is a list of (coefficient, exponent shift) monomials.
// Each variable is summed from lower[p]; terms in the two steps below it must vanish (tail_clean),
// which certifies the window.
struct NestedResult {
  ModuleVector value;
  bool tail_clean = true;
  bool truncated = false;
};
using PrefactorTerm = std::pair<Scalar, std::vector<int>>;
NestedResult nested_product_coeff(const ModuleHandle& h, const std::vector<const std::vector<VertexWord>*>& currents,
                                  const std::vector<int>& vexps, const std::vector<PrefactorTerm>& prefactor,
                                  const std::vector<int>& lower, int N, const ModuleVector& v);

// The orders < and prec on monomials of one color-type; throws on different color-types.
bool compare_lt(const QPMonomial& a, const QPMonomial& b, int n);
bool compare_prec(const QPMonomial& a, const QPMonomial& b, int n);
// The partial order on integer sequences through partial sums.
bool sequence_prec(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace qp
