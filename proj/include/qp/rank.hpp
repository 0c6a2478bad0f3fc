#pragma once

#include <cstdint>
#include <vector>

#include "qp/modules.hpp"

namespace qp {

struct RankResult {
  long rank = 0;       // over Q(v), by elimination
  long eval_rank = 0;  // over Q at the evaluation point; a lower bound for rank
  Rational v0;
};

// Rank at v = v0 of the vectors after clearing row denominators.
long eval_rank(const std::vector<ModuleVector>& vectors, const Rational& v0);
// Bareiss elimination over Q[v, 1/v]; exact.
long bareiss_rank(const std::vector<ModuleVector>& vectors);
// Evaluation precheck at a seeded random point, then exact elimination.
RankResult exact_rank_report(const std::vector<ModuleVector>& vectors, std::uint64_t seed = 1);
inline long exact_rank(const std::vector<ModuleVector>& vectors) { return exact_rank_report(vectors).rank; }

}  // namespace qp
