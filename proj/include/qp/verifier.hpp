#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qp/basis_enum.hpp"
#include "qp/rank.hpp"

namespace qp {

struct RankReport {
  WeightKey key;
  Flavor flavor = Flavor::Type1;
  long oracle_rank = 0;
  long predicted_count = 0;
  long basis_rank = 0;
  long oracle_eval_rank = 0;
  long basis_eval_rank = 0;
  bool truncated = false;

  bool pass() const { return !truncated && oracle_rank == predicted_count && basis_rank == predicted_count; }
  std::string json() const;
};

struct MainOptions {
  bool corrupt_gap = false;  // negative control, see BasisSpec
  bool parallel = true;
  bool all_orders = false;  // oracle: every mode order within a color instead of sorted words
  std::uint64_t seed = 1;
  int margin = -1;  // extra depth below -N for intermediate vectors; -1 picks headroom_for(...) + 2
};

// Depth below -N reached by partial products of basis monomials in the window.
int headroom_for(const ModuleHandle& h, int N);

// Color-ordered words of plain x^+ modes with the key's color counts and degree applied to v_Lambda.
// Within a color, modes are applied in nonincreasing order unless all_orders is set; each mode lies between
// the handle floor (measured on the resulting degree) and the vanishing bound of the current vector.
std::vector<ModuleVector> oracle_span(const ModuleHandle& h, const WeightKey& key, bool all_orders = false);

// Keys with degree in [-N, 0] inside the candidate color-type region.
std::vector<WeightKey> candidate_keys(const ModuleHandle& h, int N);

// One report per flavor for every key where the oracle or the prediction is nonzero.
// Runs on a copy of h with depth N + margin; the depth of h itself is ignored.
std::vector<RankReport> check_main_theorem(const ModuleHandle& h, int N, const MainOptions& opt = {});

// v_Lambda plus all basis vectors of degree >= -depth (type 1), in canonical order.
std::vector<ModuleVector> test_battery(const ModuleHandle& h, int depth = 3);

}  // namespace qp
