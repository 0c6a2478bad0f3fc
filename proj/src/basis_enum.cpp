#include "qp/basis_enum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace qp {

int degree_bound(const ModuleHandle& h, int i, int charge, const std::vector<int>& charges_i,
                 const std::vector<int>& charges_prev) {
  int b = 0;
  for (int m : charges_prev) b += std::min(charge, m);
  // delta_{i j_s} for s = 1..charge: slots beyond the c_0 vacuum slots carry sector j
  int c0 = static_cast<int>(std::count(h.sectors.begin(), h.sectors.end(), 0));
  int j = h.sectors.back();
  if (j == i) b -= std::max(0, charge - c0);
  int larger = static_cast<int>(std::count_if(charges_i.begin(), charges_i.end(), [charge](int m) { return m > charge; }));
  b -= 2 * charge * larger;
  b -= charge;
  return b;
}

std::vector<std::vector<int>> candidate_color_types(const ModuleHandle& h, int N) {
  const int n = h.n();
  const long limit = 2L * h.c * N;
  int cap = static_cast<int>(std::sqrt(static_cast<double>(limit) * (n + 1))) + 1;
  std::vector<std::vector<int>> out;
  std::vector<int> m(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      long form = 0;
      for (int a = 0; a < n; ++a) {
        form += 2L * m[static_cast<std::size_t>(a)] * m[static_cast<std::size_t>(a)];
        if (a + 1 < n) form -= 2L * m[static_cast<std::size_t>(a)] * m[static_cast<std::size_t>(a + 1)];
      }
      if (form <= limit) out.push_back(m);
      return;
    }
    for (int k = 0; k <= cap; ++k) {
      m[static_cast<std::size_t>(i)] = k;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

namespace {

// Partitions of total into nonincreasing parts <= maxpart.
void partitions(int total, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(total, maxpart); p >= 1; --p) {
    cur.push_back(p);
    partitions(total - p, p, cur, out);
    cur.pop_back();
  }
}

struct Row {
  int color, charge, bound;
  bool chained;  // same color and charge as the previous row
};

}  // namespace

std::vector<QPMonomial> enumerate_basis_for(const BasisSpec& spec, const std::vector<int>& color_type) {
  const ModuleHandle& h = spec.h;
  const int n = h.n();
  std::vector<std::vector<std::vector<int>>> per_color(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<int> cur;
    partitions(color_type[static_cast<std::size_t>(i)], h.c, cur, per_color[static_cast<std::size_t>(i)]);
  }
  std::vector<QPMonomial> out;
  std::vector<std::vector<int>> choice(static_cast<std::size_t>(n));
  std::function<void(int)> pick = [&](int i) {
    if (i < n) {
      for (const auto& p : per_color[static_cast<std::size_t>(i)]) {
        choice[static_cast<std::size_t>(i)] = p;
        pick(i + 1);
      }
      return;
    }
    std::vector<Row> rows;
    for (int ci = 1; ci <= n; ++ci) {
      const auto& ch = choice[static_cast<std::size_t>(ci - 1)];
      static const std::vector<int> none;
      const auto& prev = ci >= 2 ? choice[static_cast<std::size_t>(ci - 2)] : none;
      for (std::size_t r = 0; r < ch.size(); ++r) {
        bool chained = r > 0 && ch[r] == ch[r - 1];
        rows.push_back({ci, ch[r], degree_bound(h, ci, ch[r], ch, prev), chained});
      }
    }
    const int gap_less = spec.corrupt_gap ? 1 : 0;
    auto cap_of = [&](std::size_t k, int prev_deg) {
      int b = rows[k].bound;
      if (rows[k].chained) b = std::min(b, prev_deg - 2 * rows[k].charge + gap_less);
      return b;
    };
    // Largest total over rows k.. given the degree chosen for row k-1.
    auto best_rest = [&](std::size_t k, int prev_deg) {
      long s = 0;
      for (; k < rows.size(); ++k) {
        prev_deg = cap_of(k, prev_deg);
        s += prev_deg;
      }
      return s;
    };
    std::vector<int> deg(rows.size());
    std::function<void(std::size_t, long)> place = [&](std::size_t k, long sum) {
      if (k == rows.size()) {
        QPMonomial b{spec.flavor, {}};
        for (std::size_t t = 0; t < rows.size(); ++t) b.factors.push_back({rows[t].color, rows[t].charge, deg[t]});
        out.push_back(std::move(b));
        return;
      }
      int prev = k > 0 ? deg[k - 1] : 0;
      int top = cap_of(k, prev);
      for (int d = top;; --d) {
        if (sum + d + best_rest(k + 1, d) < -spec.N) break;
        deg[k] = d;
        place(k + 1, sum + d);
      }
    };
    if (rows.empty() || best_rest(0, 0) >= -spec.N) place(0, 0);
  };
  pick(0);
  return out;
}

std::vector<QPMonomial> enumerate_basis(const BasisSpec& spec) {
  std::vector<QPMonomial> out;
  for (const auto& ct : candidate_color_types(spec.h, spec.N)) {
    auto part = enumerate_basis_for(spec, ct);
    out.insert(out.end(), part.begin(), part.end());
  }
  const int n = spec.h.n();
  std::sort(out.begin(), out.end(), [n](const QPMonomial& a, const QPMonomial& b) {
    auto ca = a.color_type(n), cb = b.color_type(n);
    if (ca != cb) return ca < cb;
    return compare_lt(a, b, n);
  });
  return out;
}

GradedCount graded_count(const BasisSpec& spec) {
  GradedCount g;
  for (const auto& b : enumerate_basis(spec)) ++g[b.key(spec.h.n())];
  return g;
}

std::string color_type_str(const std::vector<int>& counts) {
  std::ostringstream os;
  for (std::size_t k = 0; k < counts.size(); ++k) os << (k ? ":" : "") << counts[k];
  return os.str();
}

std::string graded_count_csv(const GradedCount& g) {
  std::ostringstream os;
  os << "color_type,degree,count\n";
  for (const auto& [k, c] : g) os << color_type_str(k.counts) << ',' << k.degree << ',' << c << '\n';
  return os.str();
}

}  // namespace qp
