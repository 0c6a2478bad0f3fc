#include "qp/quasiparticle.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <json.hpp>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace qp {

std::string flavor_name(Flavor f) { return f == Flavor::Type1 ? "type1" : "type2"; }

// ---------------------------------------------------------------- monomial views

int QPMonomial::degree() const {
  int d = 0;
  for (const auto& x : factors) d += x.degree;
  return d;
}

bool QPMonomial::canonical() const {
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].charge < 1) return false;
    if (k == 0) continue;
    const auto& a = factors[k - 1];
    const auto& b = factors[k];
    if (b.color < a.color) return false;
    if (b.color == a.color) {
      if (b.charge > a.charge) return false;
      if (b.charge == a.charge && b.degree > a.degree) return false;
    }
  }
  return true;
}

std::vector<int> QPMonomial::color_type(int n) const {
  std::vector<int> out(static_cast<std::size_t>(n), 0);
  for (const auto& x : factors) out[static_cast<std::size_t>(x.color - 1)] += x.charge;
  return out;
}

std::vector<int> QPMonomial::charge_type(int color) const {
  std::vector<int> out;
  for (const auto& x : factors)
    if (x.color == color) out.push_back(x.charge);
  return out;
}

std::vector<int> QPMonomial::dual_charge_type(int color) const {
  auto ct = charge_type(color);
  int top = ct.empty() ? 0 : *std::max_element(ct.begin(), ct.end());
  std::vector<int> out;
  for (int k = 1; k <= top; ++k)
    out.push_back(static_cast<int>(std::count_if(ct.begin(), ct.end(), [k](int m) { return m >= k; })));
  return out;
}

std::vector<int> QPMonomial::color_charge_type() const {
  std::vector<int> out;
  for (const auto& x : factors) out.push_back(x.charge);
  return out;
}

std::vector<std::vector<int>> QPMonomial::color_dual_charge_type(int n) const {
  std::vector<std::vector<int>> out;
  for (int i = 1; i <= n; ++i) out.push_back(dual_charge_type(i));
  return out;
}

std::vector<int> QPMonomial::color_degree_type(int n) const {
  std::vector<int> out(static_cast<std::size_t>(n), 0);
  for (const auto& x : factors) out[static_cast<std::size_t>(x.color - 1)] += x.degree;
  return out;
}

std::vector<int> QPMonomial::degree_sequence() const {
  std::vector<int> out;
  for (const auto& x : factors) out.push_back(x.degree);
  return out;
}

WeightKey QPMonomial::key(int n) const { return WeightKey{color_type(n), degree()}; }

std::string QPMonomial::str() const {
  if (factors.empty()) return "1";
  std::ostringstream os;
  const char* name = flavor == Flavor::Type1 ? "x" : "xb";
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    if (it != factors.rbegin()) os << ' ';
    os << name << '_' << it->charge << 'a' << it->color << '(' << it->degree << ')';
  }
  return os.str();
}

std::string QPMonomial::json() const {
  nlohmann::json j;
  j["flavor"] = flavor_name(flavor);
  j["factors"] = nlohmann::json::array();
  for (const auto& x : factors) j["factors"].push_back({x.color, x.charge, x.degree});
  return j.dump();
}

// ---------------------------------------------------------------- compiled currents

Scalar qp_prefactor(Flavor f, int m) {
  Scalar s(1);
  for (int r = 1; r <= m; ++r) {
    for (int t = r + 1; t <= m; ++t) {
      s *= Scalar(1) - Scalar::q_pow(2 * (1 + t - r));
      if (f == Flavor::Type2) s /= Scalar(1) - Scalar::q_pow(2 * (t - r));
    }
  }
  return s;
}

namespace {

Scalar qdiff() { return Scalar::q_pow(1) - Scalar::q_pow(-1); }

enum class Piece { None, Phi, X };

}  // namespace

// Factor p sits at z_p = z q^{2(p-1)}; on slot s it contributes phi(z_p q^{s-1/2}) if s < l_p,
// x(z_p q^{s-1}) if s = l_p, and nothing otherwise. Reordering into normal form uses the
// level-one contractions of an x with a later x, and of an x with a later phi.
VertexWord compile_qp_tuple(const ModuleHandle& h, Flavor f, int color, const std::vector<int>& tuple) {
  const int m = static_cast<int>(tuple.size());
  const int c = h.c;
  for (int l : tuple)
    if (l < 1 || l > c) throw std::invalid_argument("coproduct index out of range");
  VertexWord w;
  w.color = color;
  w.slots.resize(static_cast<std::size_t>(c));
  w.scalar = qp_prefactor(f, m);
  std::ostringstream tag;
  tag << '(';
  for (int p = 0; p < m; ++p) tag << (p ? "," : "") << tuple[static_cast<std::size_t>(p)];
  tag << ')';
  w.tag = tag.str();

  for (int s = 1; s <= c; ++s) {
    auto& op = w.slots[static_cast<std::size_t>(s - 1)];
    std::vector<Piece> pieces(static_cast<std::size_t>(m), Piece::None);
    for (int p = 1; p <= m; ++p) {
      int l = tuple[static_cast<std::size_t>(p - 1)];
      int zq = 4 * (p - 1);  // v-exponent of z_p / z
      if (s < l) {
        pieces[static_cast<std::size_t>(p - 1)] = Piece::Phi;
        int e = zq + 2 * s - 1;
        op.create = op.create.plus(ExpTable(h.n(), h.rmax(), [&](int i, int r) {
          return i == color ? -qdiff() * Scalar::v_pow(r * e) : Scalar();
        }));
        op.kpow -= 1;
      } else if (s == l) {
        pieces[static_cast<std::size_t>(p - 1)] = Piece::X;
        int e = zq + 2 * (s - 1);
        op.create = op.create.plus(make_table(ExpSpec{ExpKind::EMinusPlus, color, -1, e, 1, h.n()}, h.rmax()));
        op.annih = op.annih.plus(make_table(ExpSpec{ExpKind::EPlusPlus, color, -1, e, 1, h.n()}, h.rmax()));
        op.shift += 1;
        op.powers.emplace_back(1, e);
      }
      if (f == Flavor::Type2) {
        int beta = -(2 * s - c - 1) + zq;
        op.annih = op.annih.plus(make_table(ExpSpec{ExpKind::KPlus, color, 1, beta, c, h.n()}, h.rmax()));
      }
    }
    for (int p = 1; p <= m; ++p) {
      if (pieces[static_cast<std::size_t>(p - 1)] != Piece::X) continue;
      for (int pp = p + 1; pp <= m; ++pp) {
        int d = pp - p;  // z_{p'} / z_p = q^{2d}
        auto kind = pieces[static_cast<std::size_t>(pp - 1)];
        if (kind == Piece::X) {
          w.zstatic += 2;
          w.scalar *= Scalar::q_pow(2 * (2 * (p - 1) + s - 1)) * (Scalar(1) - Scalar::q_pow(2 * d)) *
                      (Scalar(1) - Scalar::q_pow(2 * d - 2));
        } else if (kind == Piece::Phi) {
          w.scalar *= Scalar::q_pow(2) * (Scalar(1) - Scalar::q_pow(2 * d - 2)) / (Scalar(1) - Scalar::q_pow(2 * d + 2));
        }
      }
    }
  }
  return w;
}

const std::vector<VertexWord>& compile_qp(const ModuleHandle& h, Flavor f, int color, int m) {
  if (m < 1) throw std::invalid_argument("charge must be positive");
  if (color < 1 || color > h.n()) throw std::invalid_argument("color out of range");
  static std::shared_mutex mu;
  static std::map<std::array<int, 6>, std::vector<VertexWord>> cache;
  std::array<int, 6> key{f == Flavor::Type1 ? 1 : 2, h.n(), h.c, h.rmax(), color, m};
  {
    std::shared_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<VertexWord> words;
  std::vector<int> tuple(static_cast<std::size_t>(m), 1);
  while (true) {
    VertexWord w = compile_qp_tuple(h, f, color, tuple);
    if (!w.scalar.is_zero()) words.push_back(std::move(w));
    std::size_t k = 0;
    while (k < tuple.size() && ++tuple[k] > h.c) tuple[k++] = 1;
    if (k == tuple.size()) break;
  }
  std::unique_lock lock(mu);
  return cache.try_emplace(key, std::move(words)).first->second;
}

ModuleVector apply_qp_mode(const ModuleHandle& h, Flavor f, const QPFactor& x, const ModuleVector& v) {
  const auto& words = compile_qp(h, f, x.color, x.charge);
  if (words.empty()) {
    ModuleVector out;
    out.truncated = v.truncated;
    return out;
  }
  return apply_words(h, words, -x.degree - x.charge, v);
}

ModuleVector apply_monomial(const ModuleHandle& h, const QPMonomial& b, const ModuleVector& v) {
  ModuleVector cur = v;
  for (const auto& x : b.factors) {
    if (cur.empty()) break;
    cur = apply_qp_mode(h, b.flavor, x, cur);
  }
  return cur;
}

int qp_vanishing_bound(const ModuleHandle& h, Flavor f, int color, int m, const ModuleVector& v) {
  const auto& words = compile_qp(h, f, color, m);
  if (words.empty() || v.empty()) return -(1 << 29);
  return -min_zexp(h, words, v) - m;
}

// ---------------------------------------------------------------- nested oracle

namespace {

struct NestedState {
  const ModuleHandle* h;
  const std::vector<const std::vector<VertexWord>*>* currents;
  const ModuleVector* v;
  std::map<std::vector<int>, ModuleVector> memo;  // suffix (k_p..k_m) -> X_p[k_p]...X_m[k_m] v
  bool truncated = false;

  const ModuleVector& suffix(const std::vector<int>& k, std::size_t from) {
    std::vector<int> key(k.begin() + static_cast<long>(from), k.end());
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    ModuleVector in = from + 1 == k.size() ? *v : suffix(k, from + 1);
    ModuleVector out;
    if (!in.empty()) out = apply_words(*h, *(*currents)[from], k[from], in);
    if (out.truncated) truncated = true;
    return memo.emplace(std::move(key), std::move(out)).first->second;
  }
};

}  // namespace

NestedResult nested_product_coeff(const ModuleHandle& h, const std::vector<const std::vector<VertexWord>*>& currents,
                                  const std::vector<int>& vexps, const std::vector<PrefactorTerm>& prefactor,
                                  const std::vector<int>& lower, int N, const ModuleVector& v) {
  const std::size_t m = currents.size();
  if (vexps.size() != m || lower.size() != m) throw std::invalid_argument("nested product: size mismatch");
  NestedState st{&h, &currents, &v, {}, false};
  NestedResult res;
  std::vector<int> a(m);
  // enumerate a with a_p >= lower_p - 2 and sum a = N
  std::function<void(std::size_t, int)> rec = [&](std::size_t p, int remaining) {
    if (p + 1 == m) {
      a[p] = remaining;
      if (a[p] < lower[p] - 2) return;
      ModuleVector d;
      for (const auto& [coef, e] : prefactor) {
        std::vector<int> k(m);
        for (std::size_t t = 0; t < m; ++t) k[t] = a[t] - e[t];
        d.add(st.suffix(k, 0), coef);
      }
      bool tail = false;
      for (std::size_t t = 0; t < m; ++t) tail = tail || a[t] < lower[t];
      if (tail) {
        if (!d.empty()) res.tail_clean = false;
        return;
      }
      int ve = 0;
      for (std::size_t t = 0; t < m; ++t) ve += vexps[t] * a[t];
      res.value.add(d, Scalar::v_pow(ve));
      return;
    }
    int rest_lo = 0;
    for (std::size_t t = p + 1; t < m; ++t) rest_lo += lower[t] - 2;
    for (int x = lower[p] - 2; x <= remaining - rest_lo; ++x) {
      a[p] = x;
      rec(p + 1, remaining - x);
    }
  };
  if (m == 0) {
    res.value = v;
    return res;
  }
  rec(0, N);
  res.truncated = st.truncated;
  return res;
}

// ---------------------------------------------------------------- orders

bool sequence_prec(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sequences of different length");
  long sa = 0, sb = 0;
  bool strict = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sa += a[k];
    sb += b[k];
    if (sa > sb) return false;
    if (sa < sb) strict = true;
  }
  return strict;
}

bool compare_lt(const QPMonomial& a, const QPMonomial& b, int n) {
  if (a.color_type(n) != b.color_type(n)) throw std::invalid_argument("monomials of different color-type");
  auto ca = a.color_charge_type(), cb = b.color_charge_type();
  if (ca != cb) return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
  auto da = a.degree_sequence(), db = b.degree_sequence();
  return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end());
}

bool compare_prec(const QPMonomial& a, const QPMonomial& b, int n) {
  return compare_lt(a, b, n) && sequence_prec(a.color_degree_type(n), b.color_degree_type(n));
}

}  // namespace qp
