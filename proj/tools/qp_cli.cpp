// qpc: basis enumeration, character tables, mode actions and verification runs on principal subspaces.
#include <omp.h>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qp/basis_enum.hpp"
#include "qp/relations.hpp"
#include "qp/verifier.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTruncated = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int n = 1;
  int c = 0;  // 0: take c0 + cj from the weight
  std::string weight = "1,0,1";
  int depth = 4;
  std::string flavor = "type1";
  std::uint64_t seed = 1;
};

std::vector<int> parse_ints(const std::string& s, char sep) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw UsageError("not an integer: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

qp::ModuleHandle make_handle(const RunConfig& cfg, int depth) {
  auto w = parse_ints(cfg.weight, ',');
  if (w.size() != 3) throw UsageError("--weight expects c0,cj,j");
  const int c0 = w[0], cj = w[1], j = w[2];
  if (c0 < 0 || cj < 0 || c0 + cj <= 0) throw UsageError("--weight needs c0, cj >= 0 and c0 + cj > 0");
  if (cfg.n < 1) throw UsageError("--n must be positive");
  if (j < 1 || j > cfg.n) throw UsageError("--weight j must lie in 1..n");
  if (cfg.c != 0 && cfg.c != c0 + cj) throw UsageError("--c disagrees with the level c0 + cj of --weight");
  if (depth < 0) throw UsageError("--depth must be nonnegative");
  return qp::ModuleHandle::make(cfg.n, c0, cj, j, depth);
}

qp::Flavor parse_flavor(const std::string& f) {
  if (f == "type1") return qp::Flavor::Type1;
  if (f == "type2") return qp::Flavor::Type2;
  throw UsageError("--flavor is type1 or type2");
}

int cmd_basis(const RunConfig& cfg) {
  auto h = make_handle(cfg, cfg.depth);
  for (const auto& b : qp::enumerate_basis({h, cfg.depth, parse_flavor(cfg.flavor), false})) std::cout << b.json() << "\n";
  return kExitPass;
}

int cmd_char(const RunConfig& cfg) {
  auto h = make_handle(cfg, cfg.depth);
  std::cout << qp::graded_count_csv(qp::graded_count({h, cfg.depth, parse_flavor(cfg.flavor), false}));
  return kExitPass;
}

// word: factors "color:charge:mode" separated by ';', applied in the order written (first factor acts first).
int cmd_act(const RunConfig& cfg, const std::string& word) {
  qp::QPMonomial b;
  b.flavor = parse_flavor(cfg.flavor);
  if (!word.empty()) {
    std::stringstream ss(word);
    std::string f;
    while (std::getline(ss, f, ';')) {
      auto t = parse_ints(f, ':');
      if (t.size() != 3) throw UsageError("--word factors are color:charge:mode");
      if (t[0] < 1 || t[0] > cfg.n || t[1] < 1) throw UsageError("bad factor '" + f + "'");
      b.factors.push_back({t[0], t[1], t[2]});
    }
  }
  int d = 0;
  for (const auto& f : b.factors) d += f.degree;
  auto h = make_handle(cfg, std::max(cfg.depth, -d));
  auto v = qp::apply_monomial(h, b, qp::highest_weight_vector(h));
  nlohmann::json out;
  out["handle"] = h.label();
  out["word"] = nlohmann::json::parse(b.json());
  out["vector"] = nlohmann::json::parse(qp::vector_json(h, v));
  out["truncated"] = v.truncated;
  std::cout << out.dump() << "\n";
  return v.truncated ? kExitTruncated : kExitPass;
}

int cmd_oracle(const RunConfig& cfg, const std::string& color_type, int degree, bool all_orders) {
  qp::WeightKey key{parse_ints(color_type, ':'), degree};
  if (static_cast<int>(key.counts.size()) != cfg.n) throw UsageError("--color-type needs n entries");
  auto h = make_handle(cfg, std::max(cfg.depth, -degree));
  auto span = qp::oracle_span(h, key, all_orders);
  auto r = qp::exact_rank_report(span, cfg.seed);
  bool trunc = false;
  for (const auto& s : span) trunc = trunc || s.truncated;
  nlohmann::json out;
  out["handle"] = h.label();
  out["color_type"] = key.counts;
  out["degree"] = key.degree;
  out["words"] = span.size();
  out["rank"] = r.rank;
  out["eval_rank"] = r.eval_rank;
  out["truncated"] = trunc;
  std::cout << out.dump() << "\n";
  return trunc ? kExitTruncated : kExitPass;
}

struct VerifyArgs {
  std::string target = "main";
  std::string id;
  int window = qp::kDefaultWindow;
  bool corrupt = false;
  bool all_orders = false;
  bool serial = false;
  int margin = -1;
};

int cmd_verify(const RunConfig& cfg, const VerifyArgs& va) {
  if (va.target != "main" && va.target != "relations" && va.target != "all")
    throw UsageError("verify target is main, relations or all");
  nlohmann::json out;
  bool pass = true, trunc = false;
  std::string trunc_where;
  if (va.target != "relations") {
    auto h = make_handle(cfg, cfg.depth);
    qp::MainOptions opt;
    opt.corrupt_gap = va.corrupt;
    opt.all_orders = va.all_orders;
    opt.parallel = !va.serial;
    opt.seed = cfg.seed;
    opt.margin = va.margin;
    auto reps = qp::check_main_theorem(h, cfg.depth, opt);
    out["handle"] = h.label();
    out["depth"] = cfg.depth;
    out["reports"] = nlohmann::json::array();
    for (const auto& r : reps) {
      out["reports"].push_back(nlohmann::json::parse(r.json()));
      if (r.truncated && !trunc) {
        trunc = true;
        trunc_where = r.key.str();
      }
      if (!r.pass()) {
        pass = false;
        if (!out.contains("witness_key")) out["witness_key"] = r.key.str() + " " + qp::flavor_name(r.flavor);
      }
    }
  }
  if (va.target != "main") {
    std::vector<std::string> ids = va.id.empty() ? qp::relation_ids() : std::vector<std::string>{va.id};
    for (const auto& id : ids)
      if (std::find(qp::relation_ids().begin(), qp::relation_ids().end(), id) == qp::relation_ids().end())
        throw UsageError("unknown relation id " + id);
    if (va.window < 2) throw UsageError("--window must be at least 2");
    std::vector<std::vector<qp::RelationCheck>> res(ids.size());
    const long ni = static_cast<long>(ids.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < ni; ++k) res[static_cast<std::size_t>(k)] = qp::check_relation(ids[static_cast<std::size_t>(k)], va.window);
    out["relations"] = nlohmann::json::array();
    for (const auto& rs : res)
      for (const auto& r : rs) {
        out["relations"].push_back(nlohmann::json::parse(r.json()));
        if (r.truncated && !trunc) {
          trunc = true;
          trunc_where = r.id + " " + r.label;
        }
        if (!r.pass) pass = false;
      }
  }
  if (trunc) out["truncated_at"] = trunc_where;
  out["pass"] = pass && !trunc;
  std::cout << out.dump() << "\n";
  if (trunc) return kExitTruncated;
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("QP_THREADS")) {
    int k = std::atoi(t);
    if (k > 0) omp_set_num_threads(k);
  }
  CLI::App app{"Principal subspace bases: enumeration, characters and verification"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&cfg](CLI::App* s) {
    s->add_option("--n", cfg.n, "rank n of sl_{n+1}");
    s->add_option("--c", cfg.c, "level; must equal c0 + cj when given");
    s->add_option("--weight", cfg.weight, "highest weight c0,cj,j");
    s->add_option("--depth", cfg.depth, "degree depth N");
    s->add_option("--flavor", cfg.flavor, "type1 or type2");
    s->add_option("--seed", cfg.seed, "seed of the evaluation precheck");
  };
  auto* basis = app.add_subcommand("basis", "basis monomials as JSON lines");
  common(basis);
  auto* chr = app.add_subcommand("char", "graded counts as CSV");
  common(chr);
  auto* act = app.add_subcommand("act", "apply a quasi-particle word to v_Lambda");
  common(act);
  std::string word;
  act->add_option("--word", word, "factors color:charge:mode separated by ';', first acts first");
  auto* oracle = app.add_subcommand("oracle", "rank of the plain x^+ span at one key");
  common(oracle);
  std::string color_type = "1";
  int degree = 0;
  bool oracle_all = false;
  oracle->add_option("--color-type", color_type, "m_1:...:m_n");
  oracle->add_option("--degree", degree, "degree, <= 0");
  oracle->add_flag("--all-orders", oracle_all, "every mode order within a color");
  auto* verify = app.add_subcommand("verify", "main theorem and relation checks");
  common(verify);
  VerifyArgs va;
  verify->add_option("target", va.target, "main, relations or all");
  verify->add_option("--id", va.id, "single relation id, R1..R11");
  verify->add_option("--window", va.window, "coefficient window per variable");
  verify->add_flag("--all-orders", va.all_orders, "oracle uses every mode order within a color");
  verify->add_flag("--serial", va.serial, "run key jobs without threads");
  verify->add_option("--margin", va.margin, "extra depth for intermediate vectors");
  verify->add_flag("--corrupt", va.corrupt, "negative control: weaken the equal-charge gap")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  try {
    if (*basis) return cmd_basis(cfg);
    if (*chr) return cmd_char(cfg);
    if (*act) return cmd_act(cfg, word);
    if (*oracle) return cmd_oracle(cfg, color_type, degree, oracle_all);
    if (*verify) return cmd_verify(cfg, va);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
