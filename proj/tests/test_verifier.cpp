#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>

#include "qp/verifier.hpp"

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

std::map<int, long> per_degree(const std::vector<RankReport>& reps, long RankReport::*field) {
  std::map<int, long> out;
  for (const auto& r : reps)
    if (r.flavor == Flavor::Type1) out[r.key.degree] += r.*field;
  return out;
}

}  // namespace

TEST_CASE("exact rank sees what a bad evaluation point hides") {
  auto h = ModuleHandle::make(1, 1, 0, 1, 4);
  auto v = highest_weight_vector(h);
  auto w = act_xplus_mode(h, 1, -1, v);
  REQUIRE_FALSE(w.empty());
  ModuleVector a = v, b = v;
  a.add(w, Scalar(1));
  b.add(w, Scalar::v_pow(1));
  CHECK(bareiss_rank({a, b}) == 2);
  CHECK(eval_rank({a, b}, Rational(1)) == 1);
  CHECK(eval_rank({a, b}, Rational(3, 7)) == 2);
  CHECK(bareiss_rank({a, a.scaled(Scalar::q_pow(3) + Scalar(1))}) == 1);
  CHECK(bareiss_rank({}) == 0);
  auto r = exact_rank_report({a, b, a}, 5);
  CHECK(r.rank == 2);
  CHECK(r.eval_rank <= r.rank);
}

TEST_CASE("rank over rational functions with denominators") {
  auto h = ModuleHandle::make(1, 1, 0, 1, 4);
  auto v = highest_weight_vector(h);
  auto w = act_xplus_mode(h, 1, -2, v);
  auto u = act_xplus_mode(h, 1, -3, act_xplus_mode(h, 1, -1, v));
  Scalar f = Scalar(1) / (Scalar(1) - Scalar::q_pow(2));
  ModuleVector a = v.scaled(f), b = w.scaled(f), c = v;
  c.add(w, Scalar(1));
  c.add(u, f);
  ModuleVector d = v.scaled(f);
  d.add(w, f);
  CHECK(bareiss_rank({a, b, d}) == 2);
  CHECK(bareiss_rank({a, b, c}) == 3);
}

TEST_CASE("oracle ranks follow the gap-two partitions on the basic module") {
  auto h = ModuleHandle::make(1, 1, 0, 1, 0);
  auto reps = check_main_theorem(h, 6);
  auto orc = per_degree(reps, &RankReport::oracle_rank);
  const std::vector<long> expected{1, 1, 1, 1, 2, 2, 3};
  for (int d = 0; d <= 6; ++d) {
    CHECK(orc[-d] == expected[static_cast<std::size_t>(d)]);
    CHECK(orc[-d] == gap_two_partitions(d, 1));
  }
  for (const auto& r : reps) {
    CHECK(r.pass());
    CHECK(r.oracle_eval_rank == r.oracle_rank);
    CHECK(r.basis_eval_rank == r.basis_rank);
  }
}

TEST_CASE("main theorem holds on small handles for both flavors") {
  for (auto h : {ModuleHandle::make(1, 0, 1, 1, 0), ModuleHandle::make(1, 1, 1, 1, 0), ModuleHandle::make(2, 0, 1, 1, 0)}) {
    auto reps = check_main_theorem(h, h.n() == 1 ? 5 : 3);
    REQUIRE_FALSE(reps.empty());
    std::map<WeightKey, long> by_flavor[2];
    for (const auto& r : reps) {
      CHECK_MESSAGE(r.pass(), h.label() << " " << r.json());
      by_flavor[r.flavor == Flavor::Type1 ? 0 : 1][r.key] = r.basis_rank;
    }
    CHECK(by_flavor[0] == by_flavor[1]);
  }
}

TEST_CASE("serial and parallel runs give identical reports") {
  auto h = ModuleHandle::make(1, 2, 0, 1, 0);
  MainOptions par, ser;
  ser.parallel = false;
  auto a = check_main_theorem(h, 5, par), b = check_main_theorem(h, 5, ser);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].json() == b[k].json());
}

TEST_CASE("weakened equal-charge gap is caught") {
  auto h = ModuleHandle::make(1, 1, 0, 1, 0);
  MainOptions opt;
  opt.corrupt_gap = true;
  bool failed = false;
  for (const auto& r : check_main_theorem(h, 5, opt))
    if (!r.pass()) {
      failed = true;
      CHECK(r.predicted_count > r.oracle_rank);
    }
  CHECK(failed);
}

TEST_CASE("extra depth margin and unsorted oracle words change nothing") {
  auto h = ModuleHandle::make(2, 1, 0, 1, 0);
  MainOptions wide, all;
  wide.margin = headroom_for(h, 3) + 4;
  all.all_orders = true;
  auto base = check_main_theorem(h, 3), a = check_main_theorem(h, 3, wide), b = check_main_theorem(h, 3, all);
  REQUIRE(base.size() == a.size());
  REQUIRE(base.size() == b.size());
  for (std::size_t k = 0; k < base.size(); ++k) {
    CHECK(base[k].json() == a[k].json());
    CHECK(base[k].oracle_rank == b[k].oracle_rank);
  }
}

TEST_CASE("headroom below -N for partial products") {
  CHECK(headroom_for(ModuleHandle::make(1, 1, 0, 1, 0), 6) == 0);
  CHECK(headroom_for(ModuleHandle::make(2, 1, 0, 1, 0), 4) >= 1);
}

TEST_CASE("oracle words respect the requested key") {
  auto h = ModuleHandle::make(2, 1, 0, 1, 6);
  WeightKey key{{1, 1}, -3};
  auto span = oracle_span(h, key);
  REQUIRE_FALSE(span.empty());
  for (const auto& s : span) CHECK(key_of(h, s) == key);
  CHECK_THROWS(oracle_span(h, {{1}, -1}));
  CHECK_THROWS(oracle_span(h, {{1, 1}, -7}));
}

TEST_CASE("test battery") {
  auto h = ModuleHandle::make(1, 2, 0, 1, 6);
  auto bat = test_battery(h);
  REQUIRE_FALSE(bat.empty());
  CHECK(bat.front() == highest_weight_vector(h));
  for (const auto& v : bat) CHECK(key_of(h, v).degree >= -3);
}

TEST_CASE("report json") {
  RankReport r;
  r.key = {{1, 0}, -2};
  r.oracle_rank = r.predicted_count = r.basis_rank = 1;
  CHECK(r.pass());
  CHECK(r.json().find("\"degree\":-2") != std::string::npos);
  r.truncated = true;
  CHECK_FALSE(r.pass());
}
