#include "qp/rank.hpp"

#include <map>
#include <random>

namespace qp {

namespace {

using PolyRow = std::vector<LPoly>;

// Rows with a common column index; each row scaled by the lcm of its denominators.
std::vector<PolyRow> cleared_rows(const std::vector<ModuleVector>& vectors) {
  std::map<TensorBasis, std::size_t> col;
  for (const auto& v : vectors)
    for (const auto& [b, s] : v.terms) col.emplace(b, 0);
  std::size_t k = 0;
  for (auto& [b, idx] : col) idx = k++;
  std::vector<PolyRow> rows;
  for (const auto& v : vectors) {
    if (v.empty()) continue;
    LPoly l(Rational(1));
    for (const auto& [b, s] : v.terms) {
      LPoly g = LPoly::gcd(l, s.den());
      l = LPoly::exact_div(l * s.den(), g);
    }
    PolyRow row(col.size());
    for (const auto& [b, s] : v.terms) row[col.at(b)] = s.num() * LPoly::exact_div(l, s.den());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

long eval_rank(const std::vector<ModuleVector>& vectors, const Rational& v0) {
  auto rows = cleared_rows(vectors);
  if (rows.empty()) return 0;
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) {
    std::vector<Rational> e;
    for (const auto& p : r) e.push_back(p.eval(v0));
    m.push_back(std::move(e));
  }
  const std::size_t ncol = m[0].size();
  long rank = 0;
  std::size_t top = 0;
  for (std::size_t c = 0; c < ncol && top < m.size(); ++c) {
    std::size_t p = top;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[top]);
    for (std::size_t r = top + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[top][c];
      for (std::size_t j = c; j < ncol; ++j) m[r][j] -= f * m[top][j];
    }
    ++top;
    ++rank;
  }
  return rank;
}

long bareiss_rank(const std::vector<ModuleVector>& vectors) {
  auto m = cleared_rows(vectors);
  if (m.empty()) return 0;
  const std::size_t ncol = m[0].size();
  LPoly prev(Rational(1));
  std::size_t top = 0;
  for (std::size_t c = 0; c < ncol && top < m.size(); ++c) {
    // smallest nonzero pivot keeps intermediate degrees down
    std::size_t p = m.size();
    for (std::size_t r = top; r < m.size(); ++r)
      if (!m[r][c].is_zero() && (p == m.size() || m[r][c].size() < m[p][c].size())) p = r;
    if (p == m.size()) continue;
    std::swap(m[p], m[top]);
    const LPoly piv = m[top][c];
    for (std::size_t r = top + 1; r < m.size(); ++r) {
      const LPoly lead = m[r][c];
      for (std::size_t j = c + 1; j < ncol; ++j) {
        LPoly t = piv * m[r][j];
        if (!lead.is_zero() && !m[top][j].is_zero()) t -= lead * m[top][j];
        m[r][j] = t.is_zero() ? t : LPoly::exact_div(t, prev);
      }
      m[r][c] = LPoly();
    }
    prev = piv;
    ++top;
  }
  return static_cast<long>(top);
}

RankResult exact_rank_report(const std::vector<ModuleVector>& vectors, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(2, 997), den(1, 991);
  RankResult r;
  r.v0 = Rational(num(rng), den(rng));
  r.v0.canonicalize();
  r.eval_rank = eval_rank(vectors, r.v0);
  r.rank = bareiss_rank(vectors);
  return r;
}

}  // namespace qp
