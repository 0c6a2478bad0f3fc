#pragma once

#include <map>
#include <string>
#include <vector>

#include "qp/quasiparticle.hpp"

namespace qp {

struct BasisSpec {
  ModuleHandle h;
  int N = 0;  // keep monomials of degree >= -N
  Flavor flavor = Flavor::Type1;
  // Negative-control hook: shrinks the equal-charge gap 2m to 2m-1, admitting monomials outside the basis.
  bool corrupt_gap = false;
};

using GradedCount = std::map<WeightKey, long>;

// Upper bound on the degree of row r of color i, given the charges of colors i and i-1.
int degree_bound(const ModuleHandle& h, int i, int charge, const std::vector<int>& charges_i,
                 const std::vector<int>& charges_prev);

// Color-types (m_1..m_n) that can carry monomials of degree >= -N: (beta, beta) <= 2cN.
std::vector<std::vector<int>> candidate_color_types(const ModuleHandle& h, int N);

// Monomials satisfying the difference conditions, all charges <= c, degree >= -N; canonical order.
std::vector<QPMonomial> enumerate_basis(const BasisSpec& spec);
std::vector<QPMonomial> enumerate_basis_for(const BasisSpec& spec, const std::vector<int>& color_type);

GradedCount graded_count(const BasisSpec& spec);
std::string graded_count_csv(const GradedCount& g);
std::string color_type_str(const std::vector<int>& counts);

}  // namespace qp
