#include "qp/fock.hpp"

#include <algorithm>
#include <json.hpp>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace qp {

int FockMonomial::depth() const {
  int d = 0;
  for (int c : parts_) d += r_of(c);
  return d;
}

int FockMonomial::multiplicity(int color, int r) const {
  auto rng = std::equal_range(parts_.begin(), parts_.end(), code(color, r));
  return static_cast<int>(rng.second - rng.first);
}

FockMonomial FockMonomial::with(int color, int r) const {
  FockMonomial m(*this);
  int c = code(color, r);
  m.parts_.insert(std::upper_bound(m.parts_.begin(), m.parts_.end(), c), c);
  return m;
}

FockMonomial FockMonomial::without(int color, int r) const {
  FockMonomial m(*this);
  auto it = std::lower_bound(m.parts_.begin(), m.parts_.end(), code(color, r));
  if (it == m.parts_.end() || *it != code(color, r)) throw std::logic_error("factor not present");
  m.parts_.erase(it);
  return m;
}

FockMonomial FockMonomial::times(const FockMonomial& o) const {
  FockMonomial m;
  m.parts_.resize(parts_.size() + o.parts_.size());
  std::merge(parts_.begin(), parts_.end(), o.parts_.begin(), o.parts_.end(), m.parts_.begin());
  return m;
}

std::size_t FockMonomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (int c : parts_) h = (h ^ static_cast<std::size_t>(c)) * 1099511628211ull;
  return h;
}

std::string FockMonomial::str() const {
  if (parts_.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) s += "*";
    s += "a" + std::to_string(color_of(parts_[k])) + "(-" + std::to_string(r_of(parts_[k])) + ")";
  }
  return s;
}

void add_to(FockVector& v, const FockMonomial& m, const Scalar& s) {
  if (s.is_zero()) return;
  auto it = v.find(m);
  if (it == v.end()) {
    v.emplace(m, s);
    return;
  }
  it->second += s;
  if (it->second.is_zero()) v.erase(it);
}

Scalar heisenberg_pairing(int aij, int r, int c) {
  return q_int(aij * r) * q_int(c * r) / Scalar(static_cast<long>(r));
}

// ---------------------------------------------------------------- ExpTable

ExpTable::ExpTable(int ncolors, int rmax, const std::function<Scalar(int, int)>& gen) {
  auto d = std::make_shared<Data>();
  d->ncolors = ncolors;
  d->rmax = rmax;
  d->c.resize(static_cast<std::size_t>(ncolors));
  d->zero.assign(static_cast<std::size_t>(ncolors), true);
  for (int i = 1; i <= ncolors; ++i) {
    auto& row = d->c[static_cast<std::size_t>(i - 1)];
    row.resize(static_cast<std::size_t>(rmax + 1));
    for (int r = 1; r <= rmax; ++r) {
      row[static_cast<std::size_t>(r)] = gen(i, r);
      if (!row[static_cast<std::size_t>(r)].is_zero()) d->zero[static_cast<std::size_t>(i - 1)] = false;
    }
  }
  d_ = std::move(d);
}

const Scalar& ExpTable::at(int color, int r) const {
  if (r < 1 || r > rmax()) throw std::out_of_range("exponential table queried beyond its truncation order");
  return d_->c[static_cast<std::size_t>(color - 1)][static_cast<std::size_t>(r)];
}

bool ExpTable::empty() const {
  return !d_ || std::all_of(d_->zero.begin(), d_->zero.end(), [](bool z) { return z; });
}

ExpTable ExpTable::plus(const ExpTable& o) const {
  if (ncolors() == 0) return o;
  if (o.ncolors() == 0) return *this;
  int rm = std::min(rmax(), o.rmax());
  return ExpTable(ncolors(), rm, [&](int i, int r) { return at(i, r) + o.at(i, r); });
}

// ---------------------------------------------------------------- exponentials

namespace {

void gen_creation(const ExpTable& t, int remaining, int min_code, FockMonomial& cur, const Scalar& coeff,
                  std::vector<std::pair<FockMonomial, Scalar>>& out) {
  if (remaining == 0) {
    out.emplace_back(cur, coeff);
    return;
  }
  int max_code = FockMonomial::code(t.ncolors(), remaining);
  for (int c = min_code; c <= max_code; ++c) {
    int color = FockMonomial::color_of(c), r = FockMonomial::r_of(c);
    if (color < 1 || color > t.ncolors() || r < 1 || r > remaining) continue;
    const Scalar& g = t.at(color, r);
    if (g.is_zero()) continue;
    FockMonomial saved = cur;
    Scalar acc = coeff;
    for (int mu = 1; mu * r <= remaining; ++mu) {
      acc = acc * g / Scalar(static_cast<long>(mu));
      cur = cur.with(color, r);
      gen_creation(t, remaining - mu * r, c + 1, cur, acc, out);
    }
    cur = saved;
  }
}

}  // namespace

std::vector<std::pair<FockMonomial, Scalar>> creation_terms(const ExpTable& t, int d) {
  std::vector<std::pair<FockMonomial, Scalar>> out;
  if (d < 0) return out;
  if (d == 0) {
    out.emplace_back(FockMonomial(), Scalar(1));
    return out;
  }
  if (t.ncolors() == 0 || t.empty()) return out;
  FockMonomial cur;
  gen_creation(t, d, FockMonomial::code(1, 1), cur, Scalar(1), out);
  return out;
}

const std::vector<std::pair<FockMonomial, Scalar>>& creation_terms_cached(const ExpTable& t, int d) {
  struct Entry {
    ExpTable keep;
    std::vector<std::pair<FockMonomial, Scalar>> terms;
  };
  static std::shared_mutex mu;
  static std::map<std::pair<const void*, int>, Entry> cache;
  auto key = std::make_pair(t.id(), d);
  {
    std::shared_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.terms;
  }
  auto terms = creation_terms(t, d);
  std::unique_lock lock(mu);
  return cache.try_emplace(key, Entry{t, std::move(terms)}).first->second.terms;
}

std::vector<AnnTerm> annihilation_terms(const ExpTable& t, const FockMonomial& m, int level,
                                        const std::function<int(int, int)>& cartan) {
  std::vector<AnnTerm> out{AnnTerm{0, FockMonomial(), Scalar(1)}};
  if (t.ncolors() == 0 || t.empty()) {
    out[0].mono = m;
    return out;
  }
  const auto& parts = m.parts();
  std::size_t k = 0;
  while (k < parts.size()) {
    std::size_t e = k;
    while (e < parts.size() && parts[e] == parts[k]) ++e;
    int mu = static_cast<int>(e - k);
    int color = FockMonomial::color_of(parts[k]), r = FockMonomial::r_of(parts[k]);
    Scalar s;
    for (int i = 1; i <= t.ncolors(); ++i) {
      if (t.zero_color(i)) continue;
      int aij = cartan(i, color);
      if (aij == 0) continue;
      const Scalar& g = t.at(i, r);
      if (g.is_zero()) continue;
      s += g * heisenberg_pairing(aij, r, level);
    }
    std::vector<AnnTerm> next;
    Scalar sp(1);
    Scalar binom(1);
    for (int u = 0; u <= mu; ++u) {
      if (u > 0) {
        sp *= s;
        binom = binom * Scalar(static_cast<long>(mu - u + 1)) / Scalar(static_cast<long>(u));
        if (sp.is_zero()) break;
      }
      FockMonomial keep;
      for (int w = 0; w < mu - u; ++w) keep = keep.with(color, r);
      Scalar f = binom * sp;
      for (const auto& a : out) next.push_back(AnnTerm{a.zexp - r * u, a.mono.times(keep), a.coeff * f});
    }
    out = std::move(next);
    k = e;
  }
  return out;
}

FockVector create(int color, int r, const FockVector& v) {
  if (r < 1) throw std::invalid_argument("create: r must be positive");
  FockVector out;
  for (const auto& [m, s] : v) add_to(out, m.with(color, r), s);
  return out;
}

FockVector annihilate(int color, int r, int level, const FockVector& v, const std::function<int(int, int)>& cartan) {
  if (r < 1) throw std::invalid_argument("annihilate: r must be positive");
  FockVector out;
  for (const auto& [m, s] : v) {
    for (int j = 1; j < 32; ++j) {
      int mu = m.multiplicity(j, r);
      if (mu == 0) continue;
      int aij = cartan(color, j);
      if (aij == 0) continue;
      add_to(out, m.without(j, r), s * Scalar(static_cast<long>(mu)) * heisenberg_pairing(aij, r, level));
    }
  }
  return out;
}

ExpTable make_table(const ExpSpec& s, int rmax) {
  auto qhalf = [](int vexp) { return Scalar::v_pow(vexp); };
  return ExpTable(s.ncolors, rmax, [&](int i, int r) -> Scalar {
    if (i != s.color) return Scalar();
    int c = s.level;
    Scalar sg(static_cast<long>(s.sign));
    switch (s.kind) {
      case ExpKind::EMinusPlus:
        return -sg * qhalf(-c * r) / q_int(c * r) * Scalar::v_pow(s.beta_vexp * r);
      case ExpKind::EMinusMinus:
        return sg * qhalf(c * r) / q_int(c * r) * Scalar::v_pow(s.beta_vexp * r);
      case ExpKind::EPlusPlus:
        return sg * qhalf(-c * r) / q_int(c * r) * Scalar::v_pow(-s.beta_vexp * r);
      case ExpKind::EPlusMinus:
        return -sg * qhalf(c * r) / q_int(c * r) * Scalar::v_pow(-s.beta_vexp * r);
      case ExpKind::KPlus:
        return (Scalar::q_pow(1) - Scalar::q_pow(-1)) * (-Scalar::v_pow(4 * r + c * r)) /
               (Scalar(1) + Scalar::q_pow(2 * r)) * Scalar::v_pow(-s.beta_vexp * r);
    }
    return Scalar();
  });
}

std::map<int, FockVector> apply_exp_series(const ExpSpec& s, int lo, int hi, const FockVector& v,
                                           const std::function<int(int, int)>& cartan) {
  if (lo > hi) throw std::invalid_argument("empty window");
  std::map<int, FockVector> out;
  bool creation = s.kind == ExpKind::EMinusPlus || s.kind == ExpKind::EMinusMinus;
  int maxdepth = 0;
  for (const auto& [m, c] : v) maxdepth = std::max(maxdepth, m.depth());
  int rmax = std::max({1, hi, maxdepth});
  ExpTable t = make_table(s, rmax);
  for (const auto& [m, c] : v) {
    if (creation) {
      for (int d = std::max(lo, 0); d <= hi; ++d) {
        for (const auto& [cm, cs] : creation_terms(t, d)) add_to(out[d], m.times(cm), c * cs);
      }
    } else {
      for (const auto& a : annihilation_terms(t, m, s.level, cartan)) {
        if (a.zexp < lo || a.zexp > hi) continue;
        add_to(out[a.zexp], a.mono, c * a.coeff);
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.empty()) it = out.erase(it);
    else ++it;
  }
  return out;
}

std::string fock_json(const FockVector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [m, s] : v) {
    nlohmann::json parts = nlohmann::json::array();
    for (int c : m.parts()) parts.push_back({FockMonomial::color_of(c), FockMonomial::r_of(c)});
    arr.push_back({{"parts", parts}, {"coeff", s.str()}});
  }
  return arr.dump();
}

}  // namespace qp
