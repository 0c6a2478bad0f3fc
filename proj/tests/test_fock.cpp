#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qp/fock.hpp"

using namespace qp;

namespace {

int cartan_a(int i, int j) { return i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0); }

FockVector vacuum() { return FockVector{{FockMonomial(), Scalar(1)}}; }

FockVector random_vector(std::mt19937& rng, int ncolors, int maxdepth) {
  std::uniform_int_distribution<int> col(1, ncolors), rr(1, 3), len(0, 3), cf(-2, 3);
  FockVector v;
  for (int t = 0; t < 3; ++t) {
    FockMonomial m;
    int l = len(rng);
    for (int k = 0; k < l && m.depth() < maxdepth; ++k) m = m.with(col(rng), rr(rng));
    add_to(v, m, Scalar(static_cast<long>(cf(rng))) * Scalar::v_pow(cf(rng)));
  }
  return v;
}

FockVector sum(const FockVector& a, const FockVector& b, const Scalar& s = Scalar(1)) {
  FockVector r = a;
  for (auto& [m, c] : b) add_to(r, m, c * s);
  return r;
}

using Graded = std::map<int, FockVector>;

void add_graded(Graded& a, int z, const FockVector& v, const Scalar& s) {
  for (auto& [m, c] : v) add_to(a[z], m, c * s);
}

void prune(Graded& g) {
  for (auto it = g.begin(); it != g.end();) it = it->second.empty() ? g.erase(it) : std::next(it);
}

// exp(sum_r h_r a_i(r) z^{-r}) as the power series sum_k X^k / k!, X built from single annihilations.
Graded oracle_annihilation_exp(int color, const std::vector<Scalar>& h, int level, const FockVector& v) {
  Graded term{{0, v}}, total{{0, v}};
  for (int k = 1; k <= 40; ++k) {
    Graded next;
    for (auto& [z, vec] : term) {
      for (std::size_t r = 1; r < h.size(); ++r) {
        auto a = annihilate(color, static_cast<int>(r), level, vec, cartan_a);
        add_graded(next, z - static_cast<int>(r), a, h[r] / Scalar(static_cast<long>(k)));
      }
    }
    prune(next);
    if (next.empty()) break;
    for (auto& [z, vec] : next) add_graded(total, z, vec, Scalar(1));
    term = next;
  }
  prune(total);
  return total;
}

}  // namespace

TEST_CASE("create") {
  auto v = create(1, 1, vacuum());
  CHECK(v.size() == 1);
  CHECK(v.begin()->first.str() == "a1(-1)");
  CHECK(create(2, 3, create(1, 1, vacuum())) == create(1, 1, create(2, 3, vacuum())));
  CHECK(v.begin()->first.depth() == 1);
  CHECK(create(1, 4, v).begin()->first.depth() == 5);
}

TEST_CASE("annihilate examples") {
  auto v = create(1, 1, vacuum());
  CHECK(annihilate(1, 1, 1, v, cartan_a) == FockVector{{FockMonomial(), q_int(2)}});
  auto w = create(2, 1, vacuum());
  CHECK(annihilate(1, 1, 1, w, cartan_a) == FockVector{{FockMonomial(), Scalar(-1)}});
  CHECK(annihilate(1, 1, 1, vacuum(), cartan_a).empty());
  CHECK(annihilate(1, 2, 1, v, cartan_a).empty());
  // a_1(1) on a_1(-1)^2 gives 2[2] a_1(-1)
  auto v2 = create(1, 1, v);
  CHECK(annihilate(1, 1, 1, v2, cartan_a) == FockVector{{FockMonomial().with(1, 1), Scalar(2) * q_int(2)}});
}

TEST_CASE("Heisenberg commutator on random vectors") {
  std::mt19937 rng(1);
  for (int level = 1; level <= 3; ++level) {
    for (int t = 0; t < 30; ++t) {
      auto v = random_vector(rng, 3, 6);
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
          for (int r = 1; r <= 2; ++r) {
            for (int s = 1; s <= 2; ++s) {
              auto lhs = sum(annihilate(i, r, level, create(j, s, v), cartan_a),
                             create(j, s, annihilate(i, r, level, v, cartan_a)), Scalar(-1));
              FockVector rhs;
              if (r == s) {
                for (auto& [m, c] : v) add_to(rhs, m, c * heisenberg_pairing(cartan_a(i, j), r, level));
              }
              CHECK(lhs == rhs);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("depth decreases under annihilation") {
  std::mt19937 rng(2);
  for (int t = 0; t < 40; ++t) {
    auto v = random_vector(rng, 2, 6);
    auto a = annihilate(1, 1, 1, v, cartan_a);
    int dmax = 0;
    for (auto& [m, c] : v) dmax = std::max(dmax, m.depth());
    for (auto& [m, c] : a) CHECK(m.depth() < dmax);
  }
}

TEST_CASE("creation exponential on vacuum") {
  for (int level = 1; level <= 2; ++level) {
    ExpSpec s{ExpKind::EMinusPlus, 1, -1, 0, level, 2};
    auto out = apply_exp_series(s, 0, 2, vacuum(), cartan_a);
    // exp(-sum q^{-cr/2}/[cr] (-a(-r)) z^r), expanded by hand to z^2
    auto g = [&](int r) { return Scalar::v_pow(-level * r) / q_int(level * r); };
    CHECK(out[0] == vacuum());
    CHECK(out[1] == FockVector{{FockMonomial().with(1, 1), g(1)}});
    FockVector z2;
    add_to(z2, FockMonomial().with(1, 2), g(2));
    add_to(z2, FockMonomial().with(1, 1).with(1, 1), g(1) * g(1) / Scalar(2));
    CHECK(out[2] == z2);
    CHECK(out.size() == 3);
  }
  CHECK_THROWS_AS(apply_exp_series(ExpSpec{ExpKind::EMinusPlus, 1}, 3, 2, vacuum(), cartan_a), std::invalid_argument);
}

TEST_CASE("annihilation exponentials fix the vacuum") {
  for (auto kind : {ExpKind::EPlusPlus, ExpKind::EPlusMinus, ExpKind::KPlus}) {
    ExpSpec s{kind, 1, -1, 3, 2, 2};
    auto out = apply_exp_series(s, -10, 0, vacuum(), cartan_a);
    CHECK(out.size() == 1);
    CHECK(out[0] == vacuum());
  }
}

TEST_CASE("annihilation exponential agrees with the power-series oracle") {
  std::mt19937 rng(4);
  for (auto kind : {ExpKind::EPlusPlus, ExpKind::EPlusMinus, ExpKind::KPlus}) {
    for (int level = 1; level <= 2; ++level) {
      for (int t = 0; t < 10; ++t) {
        auto v = random_vector(rng, 2, 5);
        ExpSpec s{kind, 2, t % 2 ? 1 : -1, t - 4, level, 2};
        auto tab = make_table(s, 6);
        std::vector<Scalar> h(7);
        for (int r = 1; r <= 6; ++r) h[static_cast<std::size_t>(r)] = tab.at(2, r);
        auto want = oracle_annihilation_exp(2, h, level, v);
        auto got = apply_exp_series(s, -20, 0, v, cartan_a);
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("coefficient tables") {
  // k^+ coefficient (q - q^{-1})(-q^{2r + cr/2}/(1 + q^{2r}))
  auto t = make_table(ExpSpec{ExpKind::KPlus, 1, 1, 0, 2, 1}, 3);
  for (int r = 1; r <= 3; ++r) {
    Scalar want = (Scalar::q_pow(1) - Scalar::q_pow(-1)) * -Scalar::q_pow(2 * r + r) / (Scalar(1) + Scalar::q_pow(2 * r));
    CHECK(t.at(1, r) == want);
  }
  CHECK_THROWS_AS(t.at(1, 4), std::out_of_range);
  auto e = make_table(ExpSpec{ExpKind::EPlusMinus, 1, 1, 2, 1, 1}, 2);
  CHECK(e.at(1, 1) == -Scalar::v_pow(1) / q_int(1) * Scalar::v_pow(-2));
}

TEST_CASE("exponentials of one kind commute") {
  std::mt19937 rng(9);
  auto compose = [](const ExpSpec& a, const ExpSpec& b, const FockVector& v, int lo, int hi) {
    std::map<int, FockVector> out;
    for (auto& [z1, v1] : apply_exp_series(b, lo, hi, v, cartan_a)) {
      for (auto& [z2, v2] : apply_exp_series(a, lo - z1, hi - z1, v1, cartan_a)) {
        for (auto& [m, c] : v2) add_to(out[z1 + z2], m, c);
      }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.empty() ? out.erase(it) : std::next(it);
    return out;
  };
  for (int t = 0; t < 8; ++t) {
    auto v = random_vector(rng, 2, 4);
    ExpSpec a{ExpKind::EPlusPlus, 1, 1, 1, 1, 2}, b{ExpKind::KPlus, 2, 1, -1, 1, 2};
    CHECK(compose(a, b, v, -12, 0) == compose(b, a, v, -12, 0));
    ExpSpec c{ExpKind::EMinusPlus, 1, 1, 1, 1, 2}, d{ExpKind::EMinusMinus, 2, -1, 0, 1, 2};
    CHECK(compose(c, d, v, 0, 4) == compose(d, c, v, 0, 4));
  }
}

TEST_CASE("json dump") {
  auto v = create(1, 2, vacuum());
  CHECK(fock_json(v) == R"([{"coeff":"1","parts":[[1,2]]}])");
}
