#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qp/quasiparticle.hpp"

using namespace qp;

namespace {

std::vector<ModuleVector> small_battery(const ModuleHandle& h, int mindeg) {
  std::vector<ModuleVector> out{highest_weight_vector(h)};
  auto v = highest_weight_vector(h);
  for (int j = 1; j <= h.n(); ++j) {
    int top = xplus_vanishing_bound(h, j, v);
    if (top >= mindeg) out.push_back(act_xplus_mode(h, j, top, v));
    if (top - 1 >= mindeg) out.push_back(act_xplus_mode(h, j, top - 1, v));
  }
  std::erase_if(out, [](const ModuleVector& x) { return x.empty(); });
  return out;
}

QPMonomial mono(Flavor f, std::vector<QPFactor> fs) { return QPMonomial{f, std::move(fs)}; }

// Lowest z exponent of the single current on v, used as the uniform lower bound for commuting products.
int lowest(const ModuleHandle& h, const std::vector<VertexWord>& w, const ModuleVector& v) { return min_zexp(h, w, v); }

}  // namespace

TEST_CASE("charge one reduces to the plain currents") {
  for (auto h : {ModuleHandle::make(1, 1, 1, 1, 5), ModuleHandle::make(2, 1, 0, 1, 4), ModuleHandle::make(2, 0, 2, 2, 4)}) {
    for (const auto& v : small_battery(h, -2)) {
      for (int i = 1; i <= h.n(); ++i) {
        for (int r = -3; r <= 0; ++r) {
          CHECK(apply_qp_mode(h, Flavor::Type1, {i, 1, r}, v) == act_xplus_mode(h, i, r, v));
          CHECK(apply_qp_mode(h, Flavor::Type2, {i, 1, r}, v) == act_xbar_mode(h, i, r, v));
        }
      }
    }
  }
}

TEST_CASE("surviving coproduct tuples are strictly decreasing") {
  for (int c = 1; c <= 3; ++c) {
    auto h = ModuleHandle::make(1, c, 0, 1, 2);
    for (int m = 1; m <= c + 1; ++m) {
      for (auto f : {Flavor::Type1, Flavor::Type2}) {
        const auto& words = compile_qp(h, f, 1, m);
        // number of strictly decreasing tuples in [1..c]^m is binomial(c, m)
        long want = 1;
        for (int k = 0; k < m; ++k) want = want * (c - k) / (k + 1);
        if (m > c) want = 0;
        CHECK(static_cast<long>(words.size()) == want);
      }
    }
  }
  auto h = ModuleHandle::make(1, 2, 0, 1, 3);
  CHECK(compile_qp_tuple(h, Flavor::Type1, 1, {1, 1}).scalar.is_zero());
  CHECK(compile_qp_tuple(h, Flavor::Type1, 1, {1, 2}).scalar.is_zero());
  CHECK(compile_qp_tuple(h, Flavor::Type1, 1, {2, 2}).scalar.is_zero());
  auto w = compile_qp_tuple(h, Flavor::Type1, 1, {2, 1});
  CHECK(w.scalar == Scalar(1) - Scalar::q_pow(4));
  CHECK(compile_qp(h, Flavor::Type1, 1, 2).size() == 1);
  CHECK(qp_prefactor(Flavor::Type1, 3) == (Scalar(1) - Scalar::q_pow(4)) * (Scalar(1) - Scalar::q_pow(6)) * (Scalar(1) - Scalar::q_pow(4)));
}

TEST_CASE("level one: charge two annihilates") {
  for (auto h : {ModuleHandle::make(1, 1, 0, 1, 6), ModuleHandle::make(1, 0, 1, 1, 6), ModuleHandle::make(2, 1, 0, 1, 5)}) {
    for (const auto& v : small_battery(h, -2)) {
      for (int r = -6; r <= 0; ++r) {
        CHECK(apply_qp_mode(h, Flavor::Type1, {1, 2, r}, v).empty());
        CHECK(apply_qp_mode(h, Flavor::Type2, {1, 2, r}, v).empty());
      }
    }
  }
}

TEST_CASE("highest nonzero charge-two mode on v_Lambda at level two") {
  auto h = ModuleHandle::make(1, 2, 0, 1, 6);
  auto v = highest_weight_vector(h);
  // the difference conditions allow a single charge-2 particle up to degree -2
  CHECK(!apply_qp_mode(h, Flavor::Type1, {1, 2, -2}, v).empty());
  CHECK(apply_qp_mode(h, Flavor::Type1, {1, 2, -1}, v).empty());
  CHECK(apply_qp_mode(h, Flavor::Type1, {1, 2, 0}, v).empty());
  CHECK(qp_vanishing_bound(h, Flavor::Type1, 1, 2, v) == -2);
  auto h1 = ModuleHandle::make(1, 1, 1, 1, 6);
  CHECK(!apply_qp_mode(h1, Flavor::Type1, {1, 2, -3}, highest_weight_vector(h1)).empty());
  CHECK(apply_qp_mode(h1, Flavor::Type1, {1, 2, -2}, highest_weight_vector(h1)).empty());
}

TEST_CASE("grading of quasi-particle modes") {
  for (auto h : {ModuleHandle::make(1, 2, 0, 1, 5), ModuleHandle::make(1, 1, 1, 1, 5), ModuleHandle::make(2, 1, 1, 2, 4)}) {
    for (const auto& v : small_battery(h, -2)) {
      auto kv = key_of(h, v);
      for (auto f : {Flavor::Type1, Flavor::Type2}) {
        for (int i = 1; i <= h.n(); ++i) {
          for (int m = 1; m <= h.c; ++m) {
            int top = qp_vanishing_bound(h, f, i, m, v);
            for (int r = top + 1; r <= top + 2; ++r) CHECK(apply_qp_mode(h, f, {i, m, r}, v).empty());
            for (int r = std::max(top - 2, h.floor() - kv.degree); r <= top; ++r) {
              auto out = apply_qp_mode(h, f, {i, m, r}, v);
              CHECK(!out.truncated);
              if (out.empty()) continue;
              auto ko = key_of(h, out);
              CHECK(ko.degree == kv.degree + r);
              auto want = kv.counts;
              want[static_cast<std::size_t>(i - 1)] += m;
              CHECK(ko.counts == want);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("type one and type two agree on v_Lambda up to the prefactor ratio") {
  for (auto h : {ModuleHandle::make(1, 2, 0, 1, 5), ModuleHandle::make(1, 1, 2, 1, 4), ModuleHandle::make(2, 1, 1, 1, 4)}) {
    auto v = highest_weight_vector(h);
    for (int m = 1; m <= h.c; ++m) {
      Scalar ratio = qp_prefactor(Flavor::Type2, m) / qp_prefactor(Flavor::Type1, m);
      for (int i = 1; i <= h.n(); ++i)
        for (int r = -m - 3; r <= 0; ++r)
          CHECK(apply_qp_mode(h, Flavor::Type2, {i, m, r}, v) == apply_qp_mode(h, Flavor::Type1, {i, m, r}, v).scaled(ratio));
    }
  }
}

TEST_CASE("charge two against nested plain modes") {
  // x_{2a}(z) = lim (1 - q^2 z2/z1) x(z1) x(z2) at z1 = z, z2 = z q^2
  int nonzero = 0;
  for (auto h : {ModuleHandle::make(1, 2, 0, 1, 9), ModuleHandle::make(1, 1, 1, 1, 9), ModuleHandle::make(2, 1, 1, 1, 7)}) {
    auto v = highest_weight_vector(h);
    for (int i = 1; i <= h.n(); ++i) {
      auto xw = xplus_words(h, i);
      std::vector<const std::vector<VertexWord>*> cur{&xw, &xw};
      std::vector<PrefactorTerm> pre{{Scalar(1), {0, 0}}, {-Scalar::q_pow(2), {-1, 1}}};
      int lo = lowest(h, xw, v) - 1;
      for (int r = -4; r <= -1; ++r) {
        auto res = nested_product_coeff(h, cur, {0, 4}, pre, {lo, lo}, -r - 2, v);
        CHECK(res.tail_clean);
        CHECK(!res.truncated);
        CHECK(res.value == apply_qp_mode(h, Flavor::Type1, {i, 2, r}, v));
        nonzero += res.value.empty() ? 0 : 1;
      }
    }
  }
  CHECK(nonzero >= 6);
}

TEST_CASE("type two currents against nested Ding-Feigin modes") {
  int nonzero = 0;
  for (auto h : {ModuleHandle::make(1, 2, 0, 1, 9), ModuleHandle::make(1, 1, 1, 1, 9), ModuleHandle::make(1, 1, 0, 1, 9)}) {
    for (const auto& v : small_battery(h, -1)) {
      auto xw = xbar_words(h, 1);
      int lo = lowest(h, xw, v);
      for (int m = 2; m <= h.c + 1; ++m) {
        std::vector<const std::vector<VertexWord>*> cur(static_cast<std::size_t>(m), &xw);
        std::vector<int> vexps, lower(static_cast<std::size_t>(m), lo);
        for (int p = 0; p < m; ++p) vexps.push_back(4 * p);
        std::vector<PrefactorTerm> pre{{Scalar(1), std::vector<int>(static_cast<std::size_t>(m), 0)}};
        int top = m <= h.c ? qp_vanishing_bound(h, Flavor::Type2, 1, m, v) : -m - key_of(h, v).degree;
        for (int r = top - 1; r <= top + 1; ++r) {
          auto res = nested_product_coeff(h, cur, vexps, pre, lower, -r - m, v);
          CHECK(res.tail_clean);
          CHECK(!res.truncated);
          CHECK(res.value == apply_qp_mode(h, Flavor::Type2, {1, m, r}, v));
          if (m == h.c + 1) CHECK(res.value.empty());
          nonzero += res.value.empty() ? 0 : 1;
        }
      }
    }
  }
  CHECK(nonzero >= 4);
  MESSAGE("nonzero nested type-2 comparisons: " << nonzero);
}

TEST_CASE("type two commutativity") {
  auto h = ModuleHandle::make(1, 2, 0, 1, 6);
  auto v = highest_weight_vector(h);
  int nonzero = 0;
  for (int r1 = -4; r1 <= -2; ++r1)
    for (int r2 = -3; r2 <= -1; ++r2) {
      auto a = apply_qp_mode(h, Flavor::Type2, {1, 2, r1}, apply_qp_mode(h, Flavor::Type2, {1, 1, r2}, v));
      auto b = apply_qp_mode(h, Flavor::Type2, {1, 1, r2}, apply_qp_mode(h, Flavor::Type2, {1, 2, r1}, v));
      CHECK(a == b);
      nonzero += a.empty() ? 0 : 1;
    }
  CHECK(nonzero >= 3);
  auto h3 = ModuleHandle::make(3, 1, 1, 2, 4);
  auto v3 = highest_weight_vector(h3);
  for (int r1 = -3; r1 <= -1; ++r1)
    for (int r2 = -3; r2 <= -1; ++r2) {
      auto a = apply_qp_mode(h3, Flavor::Type2, {1, 2, r1 - 1}, apply_qp_mode(h3, Flavor::Type2, {3, 1, r2}, v3));
      auto b = apply_qp_mode(h3, Flavor::Type2, {3, 1, r2}, apply_qp_mode(h3, Flavor::Type2, {1, 2, r1 - 1}, v3));
      CHECK(a == b);
    }
}

TEST_CASE("monomial views") {
  auto b = mono(Flavor::Type1, {{1, 2, -3}, {1, 1, -2}, {1, 1, -4}, {2, 1, -1}});
  CHECK(b.canonical());
  CHECK(b.degree() == -10);
  CHECK(b.color_type(2) == std::vector<int>{4, 1});
  CHECK(b.charge_type(1) == std::vector<int>{2, 1, 1});
  CHECK(b.dual_charge_type(1) == std::vector<int>{3, 1});
  CHECK(b.color_degree_type(2) == std::vector<int>{-9, -1});
  CHECK(b.str() == "x_1a2(-1) x_1a1(-4) x_1a1(-2) x_2a1(-3)");
  CHECK(b.json() == R"({"factors":[[1,2,-3],[1,1,-2],[1,1,-4],[2,1,-1]],"flavor":"type1"})");
  CHECK(!mono(Flavor::Type1, {{2, 1, -1}, {1, 1, -1}}).canonical());
  CHECK(!mono(Flavor::Type1, {{1, 1, -1}, {1, 2, -1}}).canonical());
  CHECK(!mono(Flavor::Type1, {{1, 1, -3}, {1, 1, -1}}).canonical());
  CHECK(QPMonomial{}.canonical());
}

TEST_CASE("orders") {
  auto a = mono(Flavor::Type1, {{1, 2, -3}, {1, 1, -2}});
  CHECK(!compare_lt(a, a, 1));
  CHECK(!compare_prec(a, a, 1));
  auto b = mono(Flavor::Type1, {{1, 1, -1}, {1, 1, -3}, {1, 1, -5}});
  CHECK(compare_lt(b, a, 1));  // first charge 1 < 2
  CHECK(!compare_lt(a, b, 1));
  CHECK_THROWS(compare_lt(a, mono(Flavor::Type1, {{1, 1, -1}}), 1));
  CHECK(sequence_prec({1, 0}, {1, 1}));
  CHECK(!sequence_prec({2, -5}, {1, 1}));

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> deg(-6, 0), ch(1, 2);
  int prec_seen = 0;
  for (int t = 0; t < 400; ++t) {
    auto gen = [&] {
      // color type (3, 2) for n = 2
      QPMonomial m{Flavor::Type2, {}};
      int left = 3;
      while (left > 0) {
        int c = std::min(left, ch(rng));
        m.factors.push_back({1, c, deg(rng)});
        left -= c;
      }
      m.factors.push_back({2, 1, deg(rng)});
      m.factors.push_back({2, 1, deg(rng)});
      return m;
    };
    auto x = gen(), y = gen();
    if (compare_prec(x, y, 2)) {
      ++prec_seen;
      CHECK(compare_lt(x, y, 2));
    }
    CHECK(!(compare_lt(x, y, 2) && compare_lt(y, x, 2)));
    if (!(x == y)) CHECK((compare_lt(x, y, 2) || compare_lt(y, x, 2)));
  }
  CHECK(prec_seen > 0);
}
