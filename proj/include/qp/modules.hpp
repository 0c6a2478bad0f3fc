#pragma once

#include <map>
#include <string>
#include <vector>

#include "qp/fock.hpp"
#include "qp/lattice.hpp"

namespace qp {

// Tensor product of c level-one modules L_{j_1} x ... x L_{j_c}, truncated at degree -depth.
// With full_lattice set, the single slot is W = K(1) x C{P} and no degree floor applies.
struct ModuleHandle {
  RootData rd{1};
  int c = 1;
  std::vector<int> sectors;  // j_s per slot
  int depth = 0;             // floor is -depth
  bool full_lattice = false;

  int n() const { return rd.n(); }
  int floor() const { return -depth; }
  int rmax() const { return depth + 2; }

  // Lambda = c0 Lambda_0 + cj Lambda_j; slots get c0 zeros then cj copies of j.
  static ModuleHandle make(int n, int c0, int cj, int j, int depth);
  static ModuleHandle w_space(int n, int depth);
  std::string label() const;
};

struct SlotState {
  FockMonomial fock;
  LatticeElt w;  // normal-form exponent of e^{beta} e^{lambda_sector}, i.e. beta + lambda
  bool operator<(const SlotState& o) const { return fock < o.fock || (fock == o.fock && w < o.w); }
  bool operator==(const SlotState& o) const { return fock == o.fock && w == o.w; }
};

using TensorBasis = std::vector<SlotState>;

struct ModuleVector {
  std::map<TensorBasis, Scalar> terms;
  bool truncated = false;  // set when terms below the degree floor were dropped

  bool empty() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
  void add(const TensorBasis& b, const Scalar& s);
  void add(const ModuleVector& o, const Scalar& s = Scalar(1));
  ModuleVector scaled(const Scalar& s) const;
  bool operator==(const ModuleVector& o) const { return terms == o.terms; }
  bool operator!=(const ModuleVector& o) const { return terms != o.terms; }
};

ModuleVector operator-(const ModuleVector& a, const ModuleVector& b);

struct WeightKey {
  std::vector<int> counts;  // simple-root counts m_1..m_n of the colorweight
  int degree = 0;
  bool operator<(const WeightKey& o) const { return counts < o.counts || (counts == o.counts && degree < o.degree); }
  bool operator==(const WeightKey& o) const { return counts == o.counts && degree == o.degree; }
  std::string str() const;
};

int slot_degree(const ModuleHandle& h, int slot, const SlotState& s);
int degree_of(const ModuleHandle& h, const TensorBasis& b);
std::vector<int> slot_colorweight(const ModuleHandle& h, int slot, const SlotState& s);
std::vector<int> colorweight(const ModuleHandle& h, const TensorBasis& b);
WeightKey key_of(const ModuleHandle& h, const TensorBasis& b);
// Key of a homogeneous vector; throws if terms disagree.
WeightKey key_of(const ModuleHandle& h, const ModuleVector& v);

ModuleVector highest_weight_vector(const ModuleHandle& h);
std::string vector_json(const ModuleHandle& h, const ModuleVector& v);

// One slot of a normal-ordered word, applied right to left:
// power shifts, then e^{shift alpha}, then annihilations, then K^{kpow}, then creations.
struct SlotOp {
  ExpTable create;
  int kpow = 0;
  ExpTable annih;
  int shift = 0;
  std::vector<std::pair<int, int>> powers;  // (sign, vexp): (z v^vexp)^{sign (alpha, w)}
  bool identity() const { return create.empty() && annih.empty() && kpow == 0 && shift == 0 && powers.empty(); }
};

struct VertexWord {
  Scalar scalar{1};
  int zstatic = 0;
  int color = 1;
  std::vector<SlotOp> slots;
  std::string tag;  // e.g. the coproduct tuple
};

// z^{zexp} coefficient of a word list applied to v.
ModuleVector apply_words(const ModuleHandle& h, const std::vector<VertexWord>& words, int zexp, const ModuleVector& v);
// Same computation without threads; the reference for the parallel kernel.
ModuleVector apply_words_serial(const ModuleHandle& h, const std::vector<VertexWord>& words, int zexp, const ModuleVector& v);
// z1^{za} z2^{zb} coefficient of the normal-ordered product :A(z1) B(z2): on v. Per slot: creations of A and B,
// then K powers, annihilations, the lattice parts in product order (e^{A} e^{B}), and the z-powers on the input.
ModuleVector apply_normal_pair(const ModuleHandle& h, const VertexWord& a, const VertexWord& b, int za, int zb,
                               const ModuleVector& v);
// Lowest z exponent a word can produce on v (so coefficients below it vanish).
int min_zexp(const ModuleHandle& h, const std::vector<VertexWord>& words, const ModuleVector& v);

// Plain currents as word lists on the handle.
std::vector<VertexWord> xplus_words(const ModuleHandle& h, int j);
std::vector<VertexWord> xbar_words(const ModuleHandle& h, int j);
VertexWord phi_word(const ModuleHandle& h, int i);
VertexWord psi_word(const ModuleHandle& h, int i);
VertexWord xminus_word(const ModuleHandle& h, int j);
// k_i^+(z) = sum_{r >= 0} k_i(r) z^{-r} on the tensor product.
VertexWord kplus_word(const ModuleHandle& h, int i);

ModuleVector act_xplus_mode(const ModuleHandle& h, int j, int k, const ModuleVector& v);
ModuleVector act_xminus_mode(const ModuleHandle& h, int j, int k, const ModuleVector& v);
ModuleVector act_xbar_mode(const ModuleHandle& h, int j, int k, const ModuleVector& v);
ModuleVector act_kplus_coeff(const ModuleHandle& h, int i, int zexp, const ModuleVector& v);  // z^{zexp}, zexp <= 0
ModuleVector act_phi_mode(const ModuleHandle& h, int i, int r, const ModuleVector& v);  // r <= 0
ModuleVector act_psi_mode(const ModuleHandle& h, int i, int r, const ModuleVector& v);  // r >= 0
// a_i(r) on the tensor product, r != 0; positive r uses the iterated coproduct scaling.
ModuleVector act_a(const ModuleHandle& h, int i, int r, const ModuleVector& v);

// max over terms and coproduct summands of depth - 1 - (alpha_j, w); modes above it vanish.
int xplus_vanishing_bound(const ModuleHandle& h, int j, const ModuleVector& v);

// Keep terms whose slot s has colorweight sum_i charges[s][i-1] alpha_i.
ModuleVector project_pi(const ModuleHandle& h, const std::vector<std::vector<int>>& charges, const ModuleVector& v);

// Coefficient in a_i^*(l) of a_j(l).
Scalar astar_coeff(int n, int i, int j, int l);
// Sign (-1)^{...} of the Y operator on e^w, chosen so that Y(e^{lambda_i}) commutes with the x^+ currents.
int y_sign(const RootData& rd, int i, const LatticeElt& w);
// Coefficient of z^{(lambda_i, ref) + hexp} in Y(e^{lambda_i}, z) v on the full-lattice space.
ModuleVector act_Y_mode(const ModuleHandle& h, int i, int hexp, const ModuleVector& v, const LatticeElt& ref);

}  // namespace qp
