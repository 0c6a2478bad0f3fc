#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "qp/basis_enum.hpp"

using namespace qp;

namespace {

// Partitions of d into parts >= smallest with consecutive differences >= 2.
long gap_two_partitions(int d, int smallest) {
  std::function<long(int, int)> rec = [&](int rest, int minpart) -> long {
    if (rest == 0) return 1;
    long s = 0;
    for (int p = minpart; p <= rest; ++p) s += rec(rest - p, p + 2);
    return s;
  };
  return rec(d, smallest);
}

// Validator written straight from the difference conditions, independent of the enumerator's row layout.
bool satisfies_conditions(const ModuleHandle& h, const QPMonomial& b) {
  const int n = h.n();
  if (!b.canonical()) return false;
  int c0 = static_cast<int>(std::count(h.sectors.begin(), h.sectors.end(), 0));
  int j = h.sectors.back();
  for (int i = 1; i <= n; ++i) {
    std::vector<QPFactor> row, prev;
    for (const auto& f : b.factors) {
      if (f.color == i) row.push_back(f);
      if (f.color == i - 1) prev.push_back(f);
    }
    for (std::size_t r = 0; r < row.size(); ++r) {
      int m = row[r].charge;
      if (m < 1 || m > h.c) return false;
      int bound = -m;
      for (const auto& s : prev) bound += std::min(m, s.charge);
      for (int s = 1; s <= m; ++s) {
        int js = s <= c0 ? 0 : j;
        if (js == i) bound -= 1;
      }
      for (const auto& t : row)
        if (t.charge > m) bound -= 2 * m;
      if (row[r].degree > bound) return false;
      if (r + 1 < row.size() && row[r + 1].charge == m && row[r + 1].degree > row[r].degree - 2 * m) return false;
    }
  }
  return true;
}

// Power series in q truncated at degree N.
using Series = std::vector<long>;

Series inv_qpoch(int k, int N) {
  Series s(static_cast<std::size_t>(N + 1), 0);
  s[0] = 1;
  for (int a = 1; a <= k; ++a)
    for (int d = a; d <= N; ++d) s[static_cast<std::size_t>(d)] += s[static_cast<std::size_t>(d - a)];
  return s;
}

Series mul(const Series& a, const Series& b) {
  Series r(a.size(), 0);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; x + y < a.size(); ++y) r[x + y] += a[x] * b[y];
  return r;
}

// Fermionic sum over n_{p,i} (p = charge, i = color): q^{quadratic + linear} / prod (q)_{n_{p,i}},
// N_{p,i} = sum_{p' >= p} n_{p',i}; the linear term counts N_{p,j} over the slots carrying sector j.
std::map<WeightKey, long> fermionic_counts(const ModuleHandle& h, int N) {
  const int n = h.n(), c = h.c;
  int c0 = static_cast<int>(std::count(h.sectors.begin(), h.sectors.end(), 0));
  int j = h.sectors.back();
  std::map<WeightKey, long> out;
  std::vector<int> nn(static_cast<std::size_t>(n * c), 0);
  const int cap = N + 2;
  std::function<void(int)> rec = [&](int k) {
    if (k < n * c) {
      for (int x = 0; x <= cap; ++x) {
        nn[static_cast<std::size_t>(k)] = x;
        rec(k + 1);
      }
      return;
    }
    auto at = [&](int p, int i) { return nn[static_cast<std::size_t>((i - 1) * c + (p - 1))]; };
    auto NN = [&](int p, int i) {
      int s = 0;
      for (int q = p; q <= c; ++q) s += at(q, i);
      return s;
    };
    long e = 0;
    for (int i = 1; i <= n; ++i)
      for (int p = 1; p <= c; ++p) {
        e += static_cast<long>(NN(p, i)) * NN(p, i);
        if (i + 1 <= n) e -= static_cast<long>(NN(p, i)) * NN(p, i + 1);
        if (p > c0 && i == j) e += NN(p, i);
      }
    if (e > N) return;
    Series s(static_cast<std::size_t>(N + 1), 0);
    s[0] = 1;
    for (int i = 1; i <= n; ++i)
      for (int p = 1; p <= c; ++p) s = mul(s, inv_qpoch(at(p, i), N));
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i)
      for (int p = 1; p <= c; ++p) counts[static_cast<std::size_t>(i - 1)] += p * at(p, i);
    for (int d = 0; d + e <= N; ++d)
      if (s[static_cast<std::size_t>(d)]) out[{counts, -static_cast<int>(d + e)}] += s[static_cast<std::size_t>(d)];
  };
  rec(0);
  return out;
}

std::vector<ModuleHandle> small_handles() {
  return {ModuleHandle::make(1, 1, 0, 1, 0), ModuleHandle::make(1, 0, 1, 1, 0), ModuleHandle::make(1, 2, 0, 1, 0),
          ModuleHandle::make(1, 1, 1, 1, 0), ModuleHandle::make(1, 3, 0, 1, 0), ModuleHandle::make(2, 1, 0, 1, 0),
          ModuleHandle::make(2, 0, 1, 1, 0), ModuleHandle::make(2, 0, 1, 2, 0), ModuleHandle::make(2, 2, 0, 1, 0),
          ModuleHandle::make(2, 1, 1, 2, 0), ModuleHandle::make(3, 1, 0, 1, 0), ModuleHandle::make(3, 1, 1, 2, 0)};
}

}  // namespace

TEST_CASE("level one sl2 counts are gap-two partitions") {
  for (int j : {0, 1}) {
    auto h = j == 0 ? ModuleHandle::make(1, 1, 0, 1, 0) : ModuleHandle::make(1, 0, 1, 1, 0);
    const int N = 12;
    std::map<int, long> by_degree;
    for (const auto& b : enumerate_basis({h, N, Flavor::Type1, false})) ++by_degree[-b.degree()];
    for (int d = 0; d <= N; ++d) CHECK(by_degree[d] == gap_two_partitions(d, 1 + j));
  }
  std::vector<long> first_vac, first_one;
  for (int d = 0; d <= 4; ++d) {
    first_vac.push_back(gap_two_partitions(d, 1));
    first_one.push_back(gap_two_partitions(d, 2));
  }
  CHECK(first_vac == std::vector<long>{1, 1, 1, 1, 2});
  CHECK(first_one == std::vector<long>{1, 0, 1, 1, 1});
}

TEST_CASE("every enumerated monomial passes the validator, in canonical order without repeats") {
  for (const auto& h : small_handles()) {
    const int N = h.n() == 3 ? 4 : 6;
    auto basis = enumerate_basis({h, N, Flavor::Type1, false});
    CHECK(!basis.empty());
    std::set<std::string> seen;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const auto& b = basis[k];
      CHECK(satisfies_conditions(h, b));
      CHECK(b.degree() >= -N);
      CHECK(seen.insert(b.json()).second);
      if (k > 0 && basis[k - 1].color_type(h.n()) == b.color_type(h.n())) CHECK(compare_lt(basis[k - 1], b, h.n()));
    }
  }
}

TEST_CASE("graded counts match the fermionic sum") {
  for (const auto& h : small_handles()) {
    const int N = h.n() == 3 ? 4 : (h.c == 3 ? 5 : 7);
    auto got = graded_count({h, N, Flavor::Type1, false});
    auto want = fermionic_counts(h, N);
    CHECK_MESSAGE(got == want, h.label());
  }
}

TEST_CASE("the candidate color-type region never binds") {
  for (const auto& h : small_handles()) {
    const int N = 5;
    auto cand = candidate_color_types(h, N);
    std::set<std::vector<int>> inside(cand.begin(), cand.end());
    const int n = h.n(), box = 7;
    std::vector<int> m(static_cast<std::size_t>(n), 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        if (!inside.count(m)) CHECK(enumerate_basis_for({h, N, Flavor::Type1, false}, m).empty());
        return;
      }
      for (int k = 0; k <= box; ++k) {
        m[static_cast<std::size_t>(i)] = k;
        rec(i + 1);
      }
    };
    if (n <= 2) rec(0);
  }
}

TEST_CASE("enlarging the window only adds monomials") {
  for (const auto& h : small_handles()) {
    std::set<std::string> prev;
    for (int N = 0; N <= 5; ++N) {
      std::set<std::string> cur;
      for (const auto& b : enumerate_basis({h, N, Flavor::Type1, false})) cur.insert(b.json());
      CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      CHECK(cur.size() >= prev.size());
      prev = std::move(cur);
    }
  }
}

TEST_CASE("both flavors share the same table") {
  for (const auto& h : small_handles()) {
    auto a = graded_count({h, 5, Flavor::Type1, false});
    auto b = graded_count({h, 5, Flavor::Type2, false});
    CHECK(a == b);
    for (const auto& m : enumerate_basis({h, 3, Flavor::Type2, false})) CHECK(m.flavor == Flavor::Type2);
  }
}

TEST_CASE("the corrupted gap admits extra monomials") {
  auto h = ModuleHandle::make(1, 1, 0, 1, 0);
  auto good = enumerate_basis({h, 6, Flavor::Type1, false});
  auto bad = enumerate_basis({h, 6, Flavor::Type1, true});
  CHECK(bad.size() > good.size());
  int rejected = 0;
  for (const auto& b : bad) rejected += satisfies_conditions(h, b) ? 0 : 1;
  CHECK(rejected == static_cast<int>(bad.size() - good.size()));
}

TEST_CASE("csv table") {
  auto h = ModuleHandle::make(1, 1, 0, 1, 0);
  auto csv = graded_count_csv(graded_count({h, 2, Flavor::Type1, false}));
  CHECK(csv == "color_type,degree,count\n0,0,1\n1,-2,1\n1,-1,1\n");
  CHECK(color_type_str({2, 1}) == "2:1");
}
