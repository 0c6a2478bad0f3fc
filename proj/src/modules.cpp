#include "qp/modules.hpp"

#include <omp.h>

#include <json.hpp>
#include <array>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace qp {

ModuleHandle ModuleHandle::make(int n, int c0, int cj, int j, int depth) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
  if (c0 < 0 || cj < 0 || c0 + cj <= 0) throw std::invalid_argument("weight needs c0, cj >= 0 and c0 + cj > 0");
  if (j < 1 || j > n) throw std::invalid_argument("weight index j out of range");
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  ModuleHandle h;
  h.rd = RootData(n);
  h.c = c0 + cj;
  h.sectors.assign(static_cast<std::size_t>(c0), 0);
  h.sectors.insert(h.sectors.end(), static_cast<std::size_t>(cj), j);
  h.depth = depth;
  return h;
}

ModuleHandle ModuleHandle::w_space(int n, int depth) {
  ModuleHandle h;
  h.rd = RootData(n);
  h.c = 1;
  h.sectors = {0};
  h.depth = depth;
  h.full_lattice = true;
  return h;
}

std::string ModuleHandle::label() const {
  int c0 = 0, cj = 0, j = 0;
  for (int s : sectors) {
    if (s == 0) ++c0;
    else {
      ++cj;
      j = s;
    }
  }
  std::string w = c0 ? std::to_string(c0) + "L0" : "";
  if (cj) w += (c0 ? "+" : "") + std::to_string(cj) + "L" + std::to_string(j);
  return "n=" + std::to_string(n()) + " c=" + std::to_string(c) + " " + w;
}

// ---------------------------------------------------------------- vectors

void ModuleVector::add(const TensorBasis& b, const Scalar& s) {
  if (s.is_zero()) return;
  auto it = terms.find(b);
  if (it == terms.end()) {
    terms.emplace(b, s);
    return;
  }
  it->second += s;
  if (it->second.is_zero()) terms.erase(it);
}

void ModuleVector::add(const ModuleVector& o, const Scalar& s) {
  for (const auto& [b, c] : o.terms) add(b, c * s);
  truncated = truncated || o.truncated;
}

ModuleVector ModuleVector::scaled(const Scalar& s) const {
  ModuleVector r;
  r.truncated = truncated;
  if (s.is_zero()) return r;
  for (const auto& [b, c] : terms) r.terms.emplace(b, c * s);
  return r;
}

ModuleVector operator-(const ModuleVector& a, const ModuleVector& b) {
  ModuleVector r = a;
  r.add(b, Scalar(-1));
  return r;
}

std::string WeightKey::str() const {
  std::string s = "(";
  for (std::size_t k = 0; k < counts.size(); ++k) s += (k ? "," : "") + std::to_string(counts[k]);
  return s + ";" + std::to_string(degree) + ")";
}

int slot_degree(const ModuleHandle& h, int slot, const SlotState& s) {
  const auto& lam = h.rd.lambda(h.sectors[static_cast<std::size_t>(slot)]);
  Rational e = (h.rd.pairing(s.w, s.w) - h.rd.pairing(lam, lam)) / 2;
  if (e.get_den() != 1) throw std::logic_error("slot weight outside its sector");
  return -s.fock.depth() - static_cast<int>(e.get_num().get_si());
}

int degree_of(const ModuleHandle& h, const TensorBasis& b) {
  int d = 0;
  for (std::size_t s = 0; s < b.size(); ++s) d += slot_degree(h, static_cast<int>(s), b[s]);
  return d;
}

std::vector<int> slot_colorweight(const ModuleHandle& h, int slot, const SlotState& s) {
  return h.rd.root_counts(s.w, h.sectors[static_cast<std::size_t>(slot)]);
}

std::vector<int> colorweight(const ModuleHandle& h, const TensorBasis& b) {
  std::vector<int> out(static_cast<std::size_t>(h.n()), 0);
  for (std::size_t s = 0; s < b.size(); ++s) {
    auto c = slot_colorweight(h, static_cast<int>(s), b[s]);
    for (std::size_t k = 0; k < c.size(); ++k) out[k] += c[k];
  }
  return out;
}

WeightKey key_of(const ModuleHandle& h, const TensorBasis& b) { return WeightKey{colorweight(h, b), degree_of(h, b)}; }

WeightKey key_of(const ModuleHandle& h, const ModuleVector& v) {
  if (v.empty()) throw std::invalid_argument("zero vector has no key");
  WeightKey k = key_of(h, v.terms.begin()->first);
  for (const auto& [b, c] : v.terms) {
    if (!(key_of(h, b) == k)) throw std::logic_error("vector is not homogeneous");
  }
  return k;
}

ModuleVector highest_weight_vector(const ModuleHandle& h) {
  TensorBasis b;
  for (int s : h.sectors) b.push_back(SlotState{FockMonomial(), h.rd.lambda(s)});
  ModuleVector v;
  v.add(b, Scalar(1));
  return v;
}

std::string vector_json(const ModuleHandle& h, const ModuleVector& v) {
  (void)h;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [b, c] : v.terms) {
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : b) {
      nlohmann::json parts = nlohmann::json::array();
      for (int code : s.fock.parts()) parts.push_back({FockMonomial::color_of(code), FockMonomial::r_of(code)});
      slots.push_back({{"fock", parts}, {"exps", s.w.exps}});
    }
    arr.push_back({{"slots", slots}, {"coeff", c.str()}});
  }
  return arr.dump();
}

// ---------------------------------------------------------------- word kernel

namespace {

struct SlotOption {
  int zexp;
  SlotState st;
  Scalar coeff;
};

std::vector<SlotOption> slot_options(const ModuleHandle& h, const VertexWord& word, const SlotOp& op, const SlotState& in) {
  if (op.identity()) return {SlotOption{0, in, Scalar(1)}};
  const RootData& rd = h.rd;
  int pair = rd.pair_alpha(word.color, in.w);
  int z = 0, vexp = 0;
  for (const auto& [sg, e] : op.powers) {
    z += sg * pair;
    vexp += sg * e * pair;
  }
  SignedLatticeElt cur{1, in.w};
  if (op.shift != 0) {
    LatticeElt step = rd.alpha(word.color) * (op.shift > 0 ? 1 : -1);
    for (int k = 0; k < std::abs(op.shift); ++k) cur = rd.mul(SignedLatticeElt{1, step}, cur);
  }
  if (op.kpow != 0) vexp += 2 * op.kpow * rd.pair_alpha(word.color, cur.elt);
  Scalar base = Scalar::v_pow(vexp) * Scalar(static_cast<long>(cur.sign));
  std::vector<SlotOption> out;
  if (op.annih.empty()) {
    out.push_back(SlotOption{z, SlotState{in.fock, cur.elt}, base});
    return out;
  }
  auto cart = [&rd](int a, int b) { return rd.cartan(a, b); };
  for (auto& t : annihilation_terms(op.annih, in.fock, 1, cart)) {
    out.push_back(SlotOption{z + t.zexp, SlotState{t.mono, cur.elt}, base * t.coeff});
  }
  return out;
}

// Spread the creation degree R over the slots that carry a creation table.
void distribute(const ModuleHandle& h, const VertexWord& w, const std::vector<int>& cslots, std::size_t k,
                int remaining, TensorBasis& cur, const Scalar& coeff, ModuleVector& out) {
  if (k == cslots.size()) {
    if (remaining != 0) return;
    if (!h.full_lattice && degree_of(h, cur) < h.floor()) {
      out.truncated = true;
      return;
    }
    out.add(cur, coeff);
    return;
  }
  int s = cslots[k];
  int lo = (k + 1 == cslots.size()) ? remaining : 0;
  FockMonomial saved = cur[static_cast<std::size_t>(s)].fock;
  for (int d = lo; d <= remaining; ++d) {
    for (const auto& [m, c] : creation_terms_cached(w.slots[static_cast<std::size_t>(s)].create, d)) {
      cur[static_cast<std::size_t>(s)].fock = saved.times(m);
      distribute(h, w, cslots, k + 1, remaining - d, cur, coeff * c, out);
    }
  }
  cur[static_cast<std::size_t>(s)].fock = saved;
}

void apply_word_term(const ModuleHandle& h, const VertexWord& w, int zexp, const TensorBasis& b, const Scalar& cf,
                     ModuleVector& out) {
  std::size_t ns = b.size();
  std::vector<std::vector<SlotOption>> opts(ns);
  std::vector<int> cslots;
  for (std::size_t s = 0; s < ns; ++s) {
    opts[s] = slot_options(h, w, w.slots[s], b[s]);
    if (opts[s].empty()) return;
    if (!w.slots[s].create.empty()) cslots.push_back(static_cast<int>(s));
  }
  std::vector<std::size_t> idx(ns, 0);
  TensorBasis cur(ns);
  while (true) {
    int z = w.zstatic;
    Scalar c = cf * w.scalar;
    for (std::size_t s = 0; s < ns; ++s) {
      const auto& o = opts[s][idx[s]];
      z += o.zexp;
      c *= o.coeff;
      cur[s] = o.st;
    }
    int R = zexp - z;
    if (R >= 0) {
      if (!h.full_lattice && R > h.depth) {
        // every output would sit below the floor
        out.truncated = true;
      } else if (R > 0 && cslots.empty()) {
        // nothing can absorb the remaining degree
      } else {
        distribute(h, w, cslots, 0, R, cur, c, out);
      }
    }
    std::size_t s = 0;
    while (s < ns && ++idx[s] == opts[s].size()) idx[s++] = 0;
    if (s == ns) break;
  }
}

}  // namespace

ModuleVector apply_words_serial(const ModuleHandle& h, const std::vector<VertexWord>& words, int zexp, const ModuleVector& v) {
  ModuleVector out;
  out.truncated = v.truncated;
  for (const auto& w : words)
    for (const auto& [b, c] : v.terms) apply_word_term(h, w, zexp, b, c, out);
  return out;
}

ModuleVector apply_words(const ModuleHandle& h, const std::vector<VertexWord>& words, int zexp, const ModuleVector& v) {
  std::vector<std::pair<const VertexWord*, const std::pair<const TensorBasis, Scalar>*>> jobs;
  for (const auto& w : words)
    for (const auto& t : v.terms) jobs.emplace_back(&w, &t);
  if (jobs.size() < 8 || omp_get_max_threads() == 1) return apply_words_serial(h, words, zexp, v);
  ModuleVector out;
  out.truncated = v.truncated;
#pragma omp parallel
  {
    ModuleVector local;
#pragma omp for schedule(dynamic)
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      apply_word_term(h, *jobs[k].first, zexp, jobs[k].second->first, jobs[k].second->second, local);
    }
#pragma omp critical
    out.add(local);
  }
  return out;
}

int min_zexp(const ModuleHandle& h, const std::vector<VertexWord>& words, const ModuleVector& v) {
  int best = 1 << 29;
  for (const auto& w : words) {
    for (const auto& [b, c] : v.terms) {
      int z = w.zstatic;
      for (std::size_t s = 0; s < b.size(); ++s) {
        const auto& op = w.slots[s];
        int pair = h.rd.pair_alpha(w.color, b[s].w);
        for (const auto& pw : op.powers) z += pw.first * pair;
        if (!op.annih.empty()) z -= b[s].fock.depth();
      }
      best = std::min(best, z);
    }
  }
  return best;
}

namespace {

struct PairOption {
  int z1, z2;
  SlotState st;
  Scalar coeff;
};

// One slot of :A(z1) B(z2):, everything except the creations.
std::vector<PairOption> pair_options(const ModuleHandle& h, const VertexWord& wa, const SlotOp& a, const VertexWord& wb,
                                     const SlotOp& b, const SlotState& in) {
  const RootData& rd = h.rd;
  int z1 = 0, z2 = 0, vexp = 0;
  int pa = rd.pair_alpha(wa.color, in.w), pb = rd.pair_alpha(wb.color, in.w);
  for (const auto& [sg, e] : a.powers) {
    z1 += sg * pa;
    vexp += sg * e * pa;
  }
  for (const auto& [sg, e] : b.powers) {
    z2 += sg * pb;
    vexp += sg * e * pb;
  }
  SignedLatticeElt cur{1, in.w};
  for (const auto& [word, shift] : {std::pair{&wb, b.shift}, std::pair{&wa, a.shift}}) {
    LatticeElt step = rd.alpha(word->color) * (shift > 0 ? 1 : -1);
    for (int k = 0; k < std::abs(shift); ++k) cur = rd.mul(SignedLatticeElt{1, step}, cur);
  }
  vexp += 2 * a.kpow * rd.pair_alpha(wa.color, cur.elt) + 2 * b.kpow * rd.pair_alpha(wb.color, cur.elt);
  Scalar base = Scalar::v_pow(vexp) * Scalar(static_cast<long>(cur.sign));
  auto cart = [&rd](int x, int y) { return rd.cartan(x, y); };
  std::vector<AnnTerm> tb = b.annih.empty() ? std::vector<AnnTerm>{AnnTerm{0, in.fock, Scalar(1)}}
                                             : annihilation_terms(b.annih, in.fock, 1, cart);
  std::vector<PairOption> out;
  for (const auto& t : tb) {
    if (a.annih.empty()) {
      out.push_back({z1, z2 + t.zexp, SlotState{t.mono, cur.elt}, base * t.coeff});
      continue;
    }
    for (const auto& u : annihilation_terms(a.annih, t.mono, 1, cart))
      out.push_back({z1 + u.zexp, z2 + t.zexp, SlotState{u.mono, cur.elt}, base * t.coeff * u.coeff});
  }
  return out;
}

}  // namespace

ModuleVector apply_normal_pair(const ModuleHandle& h, const VertexWord& wa, const VertexWord& wb, int za, int zb,
                               const ModuleVector& v) {
  ModuleVector out;
  out.truncated = v.truncated;
  const std::size_t ns = static_cast<std::size_t>(h.c);
  for (const auto& [b, cf] : v.terms) {
    std::vector<std::vector<PairOption>> opts(ns);
    bool dead = false;
    for (std::size_t s = 0; s < ns && !dead; ++s) {
      opts[s] = pair_options(h, wa, wa.slots[s], wb, wb.slots[s], b[s]);
      dead = opts[s].empty();
    }
    if (dead) continue;
    std::vector<std::size_t> idx(ns, 0);
    TensorBasis cur(ns);
    while (true) {
      int z1 = wa.zstatic, z2 = wb.zstatic;
      Scalar c = cf * wa.scalar * wb.scalar;
      for (std::size_t s = 0; s < ns; ++s) {
        const auto& o = opts[s][idx[s]];
        z1 += o.z1;
        z2 += o.z2;
        c *= o.coeff;
        cur[s] = o.st;
      }
      int R1 = za - z1, R2 = zb - z2;
      if (R1 >= 0 && R2 >= 0) {
        // creations of A and B are spread over the slots independently
        std::function<void(std::size_t, int, int, const Scalar&)> place = [&](std::size_t s, int r1, int r2,
                                                                              const Scalar& acc) {
          if (s == ns) {
            if (r1 != 0 || r2 != 0) return;
            if (!h.full_lattice && degree_of(h, cur) < h.floor()) {
              out.truncated = true;
              return;
            }
            out.add(cur, acc);
            return;
          }
          const auto& ca = wa.slots[s].create;
          const auto& cb = wb.slots[s].create;
          FockMonomial saved = cur[s].fock;
          for (int d1 = 0; d1 <= (ca.empty() ? 0 : r1); ++d1)
            for (int d2 = 0; d2 <= (cb.empty() ? 0 : r2); ++d2) {
              static const std::vector<std::pair<FockMonomial, Scalar>> unit{{FockMonomial(), Scalar(1)}};
              const auto& ta = ca.empty() ? unit : creation_terms_cached(ca, d1);
              const auto& tb = cb.empty() ? unit : creation_terms_cached(cb, d2);
              for (const auto& [ma, sa] : ta)
                for (const auto& [mb, sb] : tb) {
                  cur[s].fock = saved.times(ma).times(mb);
                  place(s + 1, r1 - d1, r2 - d2, acc * sa * sb);
                }
            }
          cur[s].fock = saved;
        };
        place(0, R1, R2, c);
      }
      std::size_t s = 0;
      while (s < ns && ++idx[s] == opts[s].size()) idx[s++] = 0;
      if (s == ns) break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- currents

namespace {

int cartan_of(const ModuleHandle& h, int a, int b) { return h.rd.cartan(a, b); }

ExpTable single_color(const ModuleHandle& h, int color, const std::function<Scalar(int)>& f) {
  return ExpTable(h.n(), h.rmax(), [&](int i, int r) { return i == color ? f(r) : Scalar(); });
}

// Per-slot scale v^{r(2s-c-1)} of a_i(+-r) on the c-fold tensor product (slot s = 1..c).
int slot_scale(const ModuleHandle& h, int s) { return 2 * s - h.c - 1; }

Scalar qdiff() { return Scalar::q_pow(1) - Scalar::q_pow(-1); }

ExpTable k_table(const ModuleHandle& h, int color, int s) {
  ExpSpec spec{ExpKind::KPlus, color, 1, -slot_scale(h, s), h.c, h.n()};
  return make_table(spec, h.rmax());
}

std::vector<VertexWord> build_xplus_words(const ModuleHandle& h, int j) {
  std::vector<VertexWord> out;
  for (int l = 1; l <= h.c; ++l) {
    VertexWord w;
    w.color = j;
    w.slots.resize(static_cast<std::size_t>(h.c));
    w.tag = "(" + std::to_string(l) + ")";
    for (int s = 1; s < l; ++s) {
      auto& op = w.slots[static_cast<std::size_t>(s - 1)];
      op.create = single_color(h, j, [&](int r) { return -qdiff() * Scalar::v_pow(r * (2 * s - 1)); });
      op.kpow = -1;
    }
    auto& op = w.slots[static_cast<std::size_t>(l - 1)];
    op.create = make_table(ExpSpec{ExpKind::EMinusPlus, j, -1, 2 * (l - 1), 1, h.n()}, h.rmax());
    op.annih = make_table(ExpSpec{ExpKind::EPlusPlus, j, -1, 2 * (l - 1), 1, h.n()}, h.rmax());
    op.shift = 1;
    op.powers = {{1, 2 * (l - 1)}};
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<VertexWord> build_xbar_words(const ModuleHandle& h, int j) {
  auto words = xplus_words(h, j);
  for (auto& w : words) {
    for (int s = 1; s <= h.c; ++s) {
      auto& op = w.slots[static_cast<std::size_t>(s - 1)];
      op.annih = op.annih.plus(k_table(h, j, s));
    }
  }
  return words;
}

VertexWord build_phi_word(const ModuleHandle& h, int i) {
  VertexWord w;
  w.color = i;
  w.slots.resize(static_cast<std::size_t>(h.c));
  for (int s = 1; s <= h.c; ++s) {
    auto& op = w.slots[static_cast<std::size_t>(s - 1)];
    int sc = slot_scale(h, s);
    op.create = single_color(h, i, [&](int r) { return -qdiff() * Scalar::v_pow(r * sc); });
    op.kpow = -1;
  }
  return w;
}

VertexWord build_psi_word(const ModuleHandle& h, int i) {
  VertexWord w;
  w.color = i;
  w.slots.resize(static_cast<std::size_t>(h.c));
  for (int s = 1; s <= h.c; ++s) {
    auto& op = w.slots[static_cast<std::size_t>(s - 1)];
    int sc = slot_scale(h, s);
    op.annih = single_color(h, i, [&](int r) { return qdiff() * Scalar::v_pow(r * sc); });
    op.kpow = 1;
  }
  return w;
}

VertexWord build_xminus_word(const ModuleHandle& h, int j) {
  if (h.c != 1) throw std::invalid_argument("x^- is only realized on level-one modules");
  VertexWord w;
  w.color = j;
  w.slots.resize(1);
  auto& op = w.slots[0];
  op.create = make_table(ExpSpec{ExpKind::EMinusMinus, j, -1, 0, 1, h.n()}, h.rmax());
  op.annih = make_table(ExpSpec{ExpKind::EPlusMinus, j, -1, 0, 1, h.n()}, h.rmax());
  op.shift = -1;
  op.powers = {{-1, 0}};
  return w;
}

// Word lists depend only on (n, c, rmax, color); they are built once and shared.
const std::vector<VertexWord>& cached_words(int kind, const ModuleHandle& h, int color,
                                            const std::function<std::vector<VertexWord>()>& build) {
  static std::shared_mutex mu;
  static std::map<std::array<int, 5>, std::vector<VertexWord>> cache;
  std::array<int, 5> key{kind, h.n(), h.c, h.rmax(), color};
  {
    std::shared_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto words = build();
  std::unique_lock lock(mu);
  return cache.try_emplace(key, std::move(words)).first->second;
}

}  // namespace

std::vector<VertexWord> xplus_words(const ModuleHandle& h, int j) {
  return cached_words(0, h, j, [&] { return build_xplus_words(h, j); });
}

std::vector<VertexWord> xbar_words(const ModuleHandle& h, int j) {
  return cached_words(1, h, j, [&] { return build_xbar_words(h, j); });
}

VertexWord phi_word(const ModuleHandle& h, int i) {
  return cached_words(2, h, i, [&] { return std::vector<VertexWord>{build_phi_word(h, i)}; })[0];
}

VertexWord psi_word(const ModuleHandle& h, int i) {
  return cached_words(3, h, i, [&] { return std::vector<VertexWord>{build_psi_word(h, i)}; })[0];
}

VertexWord xminus_word(const ModuleHandle& h, int j) {
  if (h.c != 1) throw std::invalid_argument("x^- is only realized on level-one modules");
  return cached_words(4, h, j, [&] { return std::vector<VertexWord>{build_xminus_word(h, j)}; })[0];
}

VertexWord kplus_word(const ModuleHandle& h, int i) {
  return cached_words(6, h, i, [&] {
           VertexWord w;
           w.color = i;
           w.slots.resize(static_cast<std::size_t>(h.c));
           for (int s = 1; s <= h.c; ++s) w.slots[static_cast<std::size_t>(s - 1)].annih = k_table(h, i, s);
           return std::vector<VertexWord>{w};
         })[0];
}

// Creation and annihilation tables of the Y operator, stored as one slot.
static const SlotOp& y_tables(const ModuleHandle& h, int i) {
  return cached_words(5, h, i, [&] {
           int n = h.n();
           VertexWord w;
           w.slots.resize(1);
           w.slots[0].create = ExpTable(n, h.rmax(), [&](int j, int r) { return Scalar::v_pow(r) / q_int(r) * astar_coeff(n, i, j, r); });
           w.slots[0].annih = ExpTable(n, h.rmax(), [&](int j, int r) { return -Scalar::v_pow(r) / q_int(r) * astar_coeff(n, i, j, r); });
           return std::vector<VertexWord>{w};
         })[0].slots[0];
}

ModuleVector act_xplus_mode(const ModuleHandle& h, int j, int k, const ModuleVector& v) {
  return apply_words(h, xplus_words(h, j), -k - 1, v);
}

ModuleVector act_xminus_mode(const ModuleHandle& h, int j, int k, const ModuleVector& v) {
  return apply_words(h, {xminus_word(h, j)}, -k - 1, v);
}

ModuleVector act_xbar_mode(const ModuleHandle& h, int j, int k, const ModuleVector& v) {
  return apply_words(h, xbar_words(h, j), -k - 1, v);
}

ModuleVector act_kplus_coeff(const ModuleHandle& h, int i, int zexp, const ModuleVector& v) {
  return apply_words(h, {kplus_word(h, i)}, zexp, v);
}

ModuleVector act_phi_mode(const ModuleHandle& h, int i, int r, const ModuleVector& v) {
  if (r > 0) throw std::invalid_argument("phi modes have nonpositive index");
  return apply_words(h, {phi_word(h, i)}, -r, v);
}

ModuleVector act_psi_mode(const ModuleHandle& h, int i, int r, const ModuleVector& v) {
  if (r < 0) throw std::invalid_argument("psi modes have nonnegative index");
  return apply_words(h, {psi_word(h, i)}, -r, v);
}

ModuleVector act_a(const ModuleHandle& h, int i, int r, const ModuleVector& v) {
  if (r == 0) throw std::invalid_argument("a_i(0) is not a generator");
  ModuleVector out;
  out.truncated = v.truncated;
  int ar = std::abs(r);
  for (const auto& [b, c] : v.terms) {
    for (int s = 1; s <= h.c; ++s) {
      Scalar sc = c * Scalar::v_pow(ar * slot_scale(h, s));
      const auto& st = b[static_cast<std::size_t>(s - 1)];
      FockVector fv{{st.fock, Scalar(1)}};
      FockVector res = r < 0 ? create(i, ar, fv) : annihilate(i, ar, 1, fv, [&h](int x, int y) { return cartan_of(h, x, y); });
      for (const auto& [m, mc] : res) {
        TensorBasis nb = b;
        nb[static_cast<std::size_t>(s - 1)].fock = m;
        if (!h.full_lattice && degree_of(h, nb) < h.floor()) {
          out.truncated = true;
          continue;
        }
        out.add(nb, sc * mc);
      }
    }
  }
  return out;
}

int xplus_vanishing_bound(const ModuleHandle& h, int j, const ModuleVector& v) {
  if (v.empty()) return -(1 << 29);
  return -min_zexp(h, xplus_words(h, j), v) - 1;
}

ModuleVector project_pi(const ModuleHandle& h, const std::vector<std::vector<int>>& charges, const ModuleVector& v) {
  for (const auto& row : charges)
    for (int x : row)
      if (x < 0) throw std::invalid_argument("dual charges must be nonnegative");
  ModuleVector out;
  out.truncated = v.truncated;
  for (const auto& [b, c] : v.terms) {
    bool keep = true;
    for (std::size_t s = 0; s < b.size() && keep; ++s) {
      keep = slot_colorweight(h, static_cast<int>(s), b[s]) == charges[s];
    }
    if (keep) out.add(b, c);
  }
  return out;
}

// ---------------------------------------------------------------- the Y operator

Scalar astar_coeff(int n, int i, int j, int l) {
  int lo = std::min(i, j), hi = std::max(i, j);
  return q_int(lo * l) * q_int((n + 1 - hi) * l) / (q_int((n + 1) * l) * q_int(l));
}

int y_sign(const RootData& rd, int i, const LatticeElt& w) {
  auto c = rd.to_simple_roots(w);
  long parity = 0;
  for (int k = 1; k <= rd.n(); ++k) {
    int t = rd.commutation_sign(rd.alpha(k), rd.lambda(i)) * (k == i ? -1 : 1);
    if (t == 1) continue;
    mpz_class f;
    const Rational& x = c[static_cast<std::size_t>(k - 1)];
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    parity += f.get_si();
  }
  return (parity % 2 == 0) ? 1 : -1;
}

ModuleVector act_Y_mode(const ModuleHandle& h, int i, int hexp, const ModuleVector& v, const LatticeElt& ref) {
  if (!h.full_lattice) throw std::invalid_argument("the Y operator acts on the full-lattice space");
  const RootData& rd = h.rd;
  const ExpTable& cre = y_tables(h, i).create;
  const ExpTable& ann = y_tables(h, i).annih;
  auto cart = [&rd](int a, int b) { return rd.cartan(a, b); };
  const LatticeElt lam = rd.lambda(i);
  ModuleVector out;
  out.truncated = v.truncated;
  for (const auto& [b, c] : v.terms) {
    const SlotState& st = b[0];
    Rational p = rd.pairing(lam, st.w - ref);
    if (p.get_den() != 1) throw std::invalid_argument("reference weight is in another coset");
    int pw = static_cast<int>(p.get_num().get_si());
    auto moved = rd.mul(SignedLatticeElt{1, lam}, SignedLatticeElt{y_sign(rd, i, st.w), st.w});
    for (const auto& t : annihilation_terms(ann, st.fock, 1, cart)) {
      int R = hexp - pw - t.zexp;
      if (R < 0) continue;
      if (R > ann.rmax()) throw std::out_of_range("Y mode window exceeds the coefficient tables");
      for (const auto& [m, mc] : creation_terms_cached(cre, R)) {
        out.add(TensorBasis{SlotState{t.mono.times(m), moved.elt}}, c * t.coeff * mc * Scalar(static_cast<long>(moved.sign)));
      }
    }
  }
  return out;
}

}  // namespace qp
