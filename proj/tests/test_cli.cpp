#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run qpc(const std::string& args) {
  std::string cmd = std::string(QPC_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string l;
  while (std::getline(ss, l))
    if (!l.empty()) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("basis on the basic sl2 module") {
  auto r = qpc("basis --n 1 --c 1 --weight 1,0,1 --depth 4");
  CHECK(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 6);
  std::map<int, int> per_degree;
  for (const auto& l : ls) {
    auto j = nlohmann::json::parse(l);
    int d = 0;
    for (const auto& f : j["factors"]) d += f[2].get<int>();
    ++per_degree[d];
  }
  CHECK(per_degree == std::map<int, int>{{0, 1}, {-1, 1}, {-2, 1}, {-3, 1}, {-4, 2}});
}

TEST_CASE("depth zero gives only the empty monomial") {
  auto r = qpc("basis --n 2 --weight 1,0,1 --depth 0");
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{R"({"factors":[],"flavor":"type1"})"});
}

TEST_CASE("usage errors exit with 2") {
  CHECK(qpc("basis --n 1 --weight 1,x,1").code == 2);
  CHECK(qpc("basis --n 1 --weight 1,0").code == 2);
  CHECK(qpc("basis --n 1 --weight 0,0,1").code == 2);
  CHECK(qpc("basis --n 1 --c 3 --weight 1,1,1").code == 2);
  CHECK(qpc("basis --n 1 --weight 1,0,2").code == 2);
  CHECK(qpc("verify relations --id R42").code == 2);
  CHECK(qpc("frobnicate").code == 2);
}

TEST_CASE("char table") {
  auto r = qpc("char --n 1 --c 1 --weight 0,1,1 --depth 4");
  CHECK(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE_FALSE(ls.empty());
  CHECK(ls[0] == "color_type,degree,count");
  std::map<int, long> per_degree;
  for (std::size_t k = 1; k < ls.size(); ++k) {
    auto a = ls[k].find(','), b = ls[k].rfind(',');
    per_degree[std::stoi(ls[k].substr(a + 1, b - a - 1))] += std::stol(ls[k].substr(b + 1));
  }
  const std::vector<long> expected{1, 0, 1, 1, 1};
  for (int d = 0; d <= 4; ++d) CHECK(per_degree[-d] == expected[static_cast<std::size_t>(d)]);
  auto t1 = qpc("char --n 2 --weight 1,1,2 --depth 3 --flavor type1");
  auto t2 = qpc("char --n 2 --weight 1,1,2 --depth 3 --flavor type2");
  CHECK(t1.out == t2.out);
}

TEST_CASE("act applies a word to the highest weight vector") {
  auto r = qpc("act --n 1 --weight 1,0,1 --word '1:1:-1;1:1:-3'");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["vector"].size() == 1);
  CHECK(j["truncated"] == false);
  auto z = nlohmann::json::parse(qpc("act --n 1 --weight 1,0,1 --word '1:1:1'").out);
  CHECK(z["vector"].empty());
}

TEST_CASE("oracle rank at one key") {
  auto j = nlohmann::json::parse(qpc("oracle --n 2 --weight 1,0,1 --color-type 1:1 --degree -3").out);
  CHECK(j["rank"] == 3);
  CHECK(j["eval_rank"] == 3);
}

TEST_CASE("verify main passes and the corrupted gap fails with a witness") {
  auto ok = qpc("verify main --n 1 --c 2 --weight 1,1,1 --depth 5");
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["pass"] == true);
  auto bad = qpc("verify main --n 1 --weight 1,0,1 --depth 5 --corrupt");
  CHECK(bad.code == 1);
  auto j = nlohmann::json::parse(bad.out);
  CHECK(j["pass"] == false);
  CHECK(j.contains("witness_key"));
}

TEST_CASE("single relation report") {
  auto r = qpc("verify relations --id R3 --window 8");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["relations"].size() >= 1);
  for (const auto& x : j["relations"]) CHECK(x["id"] == "R3");
}

TEST_CASE("same configuration gives byte-identical output") {
  const std::string args = "verify main --n 2 --weight 1,0,1 --depth 3 --seed 7";
  auto a = qpc(args), b = qpc(args), s = qpc(args + " --serial");
  CHECK(a.out == b.out);
  CHECK(a.out == s.out);
  CHECK(qpc("basis --n 2 --weight 0,2,1 --depth 3").out == qpc("basis --n 2 --weight 0,2,1 --depth 3").out);
}
