#pragma once

#include <string>
#include <vector>

#include "qp/verifier.hpp"

namespace qp {

struct RelationCheck {
  std::string id;     // R1 .. R11
  std::string label;  // which identity and case
  bool pass = false;
  bool truncated = false;  // a sub-floor truncation fired; the check is unsound
  long compared = 0;       // coefficient comparisons made
  long nonzero = 0;        // comparisons where some side was nonzero
  long skipped = 0;        // comparisons outside the degree window
  std::string witness;     // first failing coefficient
  std::string detail;      // computed constants, e.g. epsilon_ij

  std::string json() const;
};

constexpr int kDefaultWindow = 8;

// R1 Drinfeld x-x reordering, R2 Serre, R3 Heisenberg, R4 contraction formulas (six), R5 Ding-Feigin
// commutativity, R6 integrability, R7 same-color relations and the Vandermonde determinant, R8 Y relations,
// R9 lattice intertwining (four), R10 the two phi-x reordering lemmas, R11 pole clearing and lowest powers.
const std::vector<std::string>& relation_ids();

// All cases of one relation; window is the per-variable width of the coefficient grid.
std::vector<RelationCheck> check_relation(const std::string& id, int window = kDefaultWindow);

// The two phi-x reordering lemmas with the constants and factor count as usually stated; these fail and serve as
// a negative control for the corrected forms checked under R10.
std::vector<RelationCheck> check_uncorrected_phi_lemmas(int window = kDefaultWindow);

// Vandermonde determinant (-1)^m prod_{r<s in J} (q^{2s} - q^{2r}), J = {1..m, -k..-k+m-1}.
Scalar same_color_vandermonde(int m, int k);

}  // namespace qp
