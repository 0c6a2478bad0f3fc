#include "qp/verifier.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace qp {

std::string RankReport::json() const {
  nlohmann::json j;
  j["color_type"] = key.counts;
  j["degree"] = key.degree;
  j["flavor"] = flavor_name(flavor);
  j["oracle_rank"] = oracle_rank;
  j["predicted_count"] = predicted_count;
  j["basis_rank"] = basis_rank;
  j["oracle_eval_rank"] = oracle_eval_rank;
  j["basis_eval_rank"] = basis_eval_rank;
  j["truncated"] = truncated;
  j["pass"] = pass();
  return j.dump();
}

std::vector<ModuleVector> oracle_span(const ModuleHandle& h, const WeightKey& key, bool all_orders) {
  const int n = h.n();
  if (static_cast<int>(key.counts.size()) != n) throw std::invalid_argument("key has wrong rank");
  if (key.degree < h.floor()) throw std::invalid_argument("key below the floor");
  std::vector<ModuleVector> out;
  std::function<void(const ModuleVector&, int, int, int, int)> rec = [&](const ModuleVector& u, int d, int color,
                                                                        int left, int cap) {
    while (color <= n && left == 0) {
      ++color;
      if (color <= n) left = key.counts[static_cast<std::size_t>(color - 1)];
      cap = 1 << 29;
    }
    if (color > n) {
      if (d == key.degree && !u.empty()) out.push_back(u);
      return;
    }
    int top = xplus_vanishing_bound(h, color, u);
    if (!all_orders) top = std::min(top, cap);
    for (int k = top; d + k >= h.floor(); --k) {
      ModuleVector w = act_xplus_mode(h, color, k, u);
      if (w.empty()) continue;
      rec(w, d + k, color, left - 1, k);
    }
  };
  ModuleVector v = highest_weight_vector(h);
  rec(v, 0, 1, key.counts.empty() ? 0 : key.counts[0], 1 << 29);
  return out;
}

std::vector<WeightKey> candidate_keys(const ModuleHandle& h, int N) {
  std::vector<WeightKey> keys;
  for (const auto& ct : candidate_color_types(h, N))
    for (int d = 0; d >= -N; --d) keys.push_back({ct, d});
  return keys;
}

namespace {

struct KeyJob {
  WeightKey key;
  std::vector<const QPMonomial*> monomials;
};

std::vector<RankReport> run_job(const ModuleHandle& h, const KeyJob& job, const MainOptions& opt) {
  auto span = oracle_span(h, job.key, opt.all_orders);
  bool trunc = false;
  for (const auto& s : span) trunc = trunc || s.truncated;
  RankResult orc = exact_rank_report(span, opt.seed);
  std::vector<RankReport> out;
  if (orc.rank == 0 && job.monomials.empty() && !trunc) return out;
  const ModuleVector v = highest_weight_vector(h);
  for (Flavor f : {Flavor::Type1, Flavor::Type2}) {
    std::vector<ModuleVector> vecs;
    bool t = trunc;
    for (const auto* m : job.monomials) {
      QPMonomial b = *m;
      b.flavor = f;
      vecs.push_back(apply_monomial(h, b, v));
      t = t || vecs.back().truncated;
    }
    RankResult br = exact_rank_report(vecs, opt.seed);
    RankReport r;
    r.key = job.key;
    r.flavor = f;
    r.oracle_rank = orc.rank;
    r.oracle_eval_rank = orc.eval_rank;
    r.predicted_count = static_cast<long>(job.monomials.size());
    r.basis_rank = br.rank;
    r.basis_eval_rank = br.eval_rank;
    r.truncated = t;
    out.push_back(r);
  }
  return out;
}

}  // namespace

int headroom_for(const ModuleHandle& h, int N) {
  int lowest = 0;
  for (const auto& b : enumerate_basis({h, N, Flavor::Type1, false})) {
    int d = 0;
    for (const auto& f : b.factors) lowest = std::min(lowest, d += f.degree);
  }
  return std::max(0, -lowest - N);
}

std::vector<RankReport> check_main_theorem(const ModuleHandle& h0, int N, const MainOptions& opt) {
  ModuleHandle h = h0;
  h.depth = N + (opt.margin >= 0 ? opt.margin : headroom_for(h0, N) + 2);
  auto basis = enumerate_basis({h, N, Flavor::Type1, opt.corrupt_gap});
  std::map<WeightKey, std::size_t> index;
  std::vector<KeyJob> jobs;
  for (const auto& k : candidate_keys(h, N)) {
    index[k] = jobs.size();
    jobs.push_back({k, {}});
  }
  for (const auto& b : basis) {
    auto it = index.find(b.key(h.n()));
    if (it == index.end()) throw std::logic_error("basis monomial outside the candidate keys");
    jobs[it->second].monomials.push_back(&b);
  }
  std::vector<std::vector<RankReport>> results(jobs.size());
  const long nj = static_cast<long>(jobs.size());
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < nj; ++k) results[static_cast<std::size_t>(k)] = run_job(h, jobs[static_cast<std::size_t>(k)], opt);
  } else {
    for (long k = 0; k < nj; ++k) results[static_cast<std::size_t>(k)] = run_job(h, jobs[static_cast<std::size_t>(k)], opt);
  }
  std::vector<RankReport> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::vector<ModuleVector> test_battery(const ModuleHandle& h, int depth) {
  std::vector<ModuleVector> out;
  const ModuleVector v = highest_weight_vector(h);
  for (const auto& b : enumerate_basis({h, std::min(depth, h.depth), Flavor::Type1, false})) {
    auto w = apply_monomial(h, b, v);
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace qp
