#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "schargraph/fixtures.hpp"
#include "schargraph/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace schargraph;

namespace {

struct Run {
  int status = -1;
  std::string out;
  json j() const { return json::parse(out); }
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + SCHARGRAPH_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  fs::path dir;
  void SetUp() override {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("schargraph_cli_" + std::to_string(rd()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) {
    fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string write(const std::string& name, const json& j) { return write(name, j.dump()); }
};

void expect_keys(const json& j, std::set<std::string> keys) {
  ASSERT_TRUE(j.is_object());
  std::set<std::string> got;
  for (const auto& [k, v] : j.items()) got.insert(k);
  EXPECT_EQ(got, keys);
}

bool has_vertices(const json& list, const std::vector<int>& vs) {
  for (const auto& c : list) {
    auto v = c["vertices"].get<std::vector<int>>();
    std::sort(v.begin(), v.end());
    if (v == vs) return true;
  }
  return false;
}

}  // namespace

TEST_F(Cli, Width) {
  for (auto [b, w] : std::vector<std::pair<int, int>>{{2, 8}, {3, 18}, {5, 50}}) {
    auto r = run("width --bridge " + std::to_string(b));
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, std::to_string(w) + "\n");
    auto j = run("width --bridge " + std::to_string(b) + " --json").j();
    EXPECT_EQ(j["width"], w);
  }
  EXPECT_EQ(run("width --bridge 0").status, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("width").status, 2);
  EXPECT_EQ(run("verify").status, 2);
  EXPECT_EQ(run("verify --suite bogus").status, 2);
  EXPECT_EQ(run("verify --lemma NOPE").status, 2);
  EXPECT_EQ(run("star derive --type +x-").status, 2);
  EXPECT_EQ(run("fixtures").status, 2);
  EXPECT_EQ(run("fixtures --emit nothing").status, 2);
  EXPECT_EQ(run("analyze --side R x.json").status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

TEST_F(Cli, FixturesListAndEmit) {
  auto j = run("fixtures --list --json").j();
  std::set<std::string> names;
  for (const auto& f : j) {
    expect_keys(f, {"name", "kind", "summary"});
    names.insert(f["name"].get<std::string>());
  }
  EXPECT_EQ(names.size(), fixtures::all().size());
  for (const auto& f : fixtures::all()) {
    auto r = run("fixtures --emit " + f.name);
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.j(), fixtures::json(f.name));
  }
}

TEST_F(Cli, RoundTrip) {
  for (const auto& f : fixtures::all()) {
    if (f.kind != "pair") continue;
    std::string a = write(f.name + ".json", run("fixtures --emit " + f.name).out);
    auto v = run("validate " + a + " --json");
    ASSERT_EQ(v.status, 0) << f.name;
    EXPECT_TRUE(v.j()["valid"].get<bool>());
    auto first = run("analyze " + a + " --json");
    ASSERT_EQ(first.status, 0);
    // re-serialize and analyze again: byte-identical
    std::string b = write(f.name + "_again.json", json::parse(std::ifstream(a)).dump(4));
    EXPECT_EQ(run("analyze " + b + " --json").out, first.out) << f.name;
    EXPECT_EQ(run("validate " + b + " --json").out, v.out);
  }
}

TEST_F(Cli, AnalyzeGreatweb) {
  std::string file = write("gw.json", fixtures::json("greatweb"));
  auto r = run("analyze " + file + " --side Q --json");
  ASSERT_EQ(r.status, 0);
  auto j = r.j();
  ASSERT_EQ(j["sides"].size(), 1u);
  const auto& q = j["sides"][0];
  expect_keys(q, {"side", "x_cycles", "scharlemann", "scharlemann_consistent", "great_webs", "s_sets", "isolated", "trees"});
  EXPECT_EQ(q["side"], "Q");
  EXPECT_TRUE(has_vertices(q["scharlemann"], {2, 4}));
  EXPECT_TRUE(has_vertices(q["great_webs"], {2, 4, 6, 8}));
  for (const auto& c : q["scharlemann"]) {
    EXPECT_EQ(c["kind"], "scharlemann");
    EXPECT_EQ(c["labels"].size(), 2u);
    EXPECT_EQ(c["order"], c["vertices"].size());
  }
  bool innermost = false;
  for (const auto& s : q["s_sets"])
    if (s["vertices"] == json({2, 4, 6, 8})) innermost = s["innermost"].get<bool>() && s["sign"] == "+";
  EXPECT_TRUE(innermost);

  auto text = run("analyze " + file).out;
  EXPECT_NE(text.find("scharlemann cycle on {2,4}"), std::string::npos);
  EXPECT_NE(text.find("great web {2,4,6,8}"), std::string::npos);
  EXPECT_NE(text.find("G_P:"), std::string::npos);
}

TEST_F(Cli, ValidateRejectsBrokenInput) {
  // join two slots of the same character
  json j = fixtures::json("scharlemann_bigon");
  IntersectionPair pr = pair_from_json(j);
  auto chr = [&](const json& s) { return character(pr, Side::P, s[1].get<int>(), s[0].get<int>()); };
  auto& m = j["matching"];
  bool done = false;
  for (std::size_t k = 1; k < m.size() && !done; ++k)
    if (chr(m[k][0]) == chr(m[0][0])) {
      std::swap(m[0][1], m[k][0]);
      done = true;
    }
  ASSERT_TRUE(done);
  auto r = run("validate " + write("broken.json", j));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("PARITY_VIOLATION"), std::string::npos);
  auto rj = run("validate " + write("broken.json", j) + " --json").j();
  expect_keys(rj, {"valid", "issues", "notes"});
  EXPECT_FALSE(rj["valid"].get<bool>());
  EXPECT_EQ(rj["issues"][0]["code"], "PARITY_VIOLATION");

  json imb = fixtures::json("small_pair");
  imb["signsP"] = {"+", "+"};
  EXPECT_EQ(run("validate " + write("imb.json", imb)).status, 1);
  EXPECT_EQ(run("validate " + write("garbage.json", std::string("{not json"))).status, 1);
  EXPECT_EQ(run("validate " + (dir / "missing.json").string()).status, 1);
  EXPECT_EQ(run("analyze " + write("broken2.json", j)).status, 1);
}

TEST_F(Cli, StarCommands) {
  std::string mv = write("mv.json", fixtures::json("model_vertices"));
  auto d = run("star derive --star " + mv + " --json");
  ASSERT_EQ(d.status, 0);
  auto dj = d.j();
  EXPECT_EQ(dj["input"]["switches"]["A"], json({4, 7}));
  EXPECT_EQ(dj["input"]["switches"]["C"], json({1, 6}));
  EXPECT_EQ(dj["derivative"]["star"]["L"], json({1, 6}));
  EXPECT_EQ(star_from_json(dj["derivative"]["star"]), derivative(fixtures::star("model_vertices"), Sign::Plus));
  auto minus = run("star derive --star " + mv + " --chirality - --json").j();
  EXPECT_EQ(star_from_json(minus["derivative"]["star"]), derivative(fixtures::star("model_vertices"), Sign::Minus));

  auto c = run("star cohere --type +-+--+ --json");
  ASSERT_EQ(c.status, 0);
  auto stars = c.j()["sequence"]["stars"];
  ASSERT_GE(stars.size(), 1u);
  EXPECT_TRUE(is_coherent(star_from_json(stars.back())));
  // T1 may be barred, so it represents the type under either dictionary
  EXPECT_TRUE(represents(star_from_json(stars.front()), type_from_json(json({"+", "-", "+", "-", "-", "+"}))));
  EXPECT_EQ(run(R"(star cohere --type '["+","-","+","-","-","+"]' --json)").out, c.out);
  EXPECT_EQ(run("star cohere --type ++++").status, 1);  // trivial type

  auto conj = run("star conjugate --type ++-- --json").j();
  Star t = star_from_json(conj["input"]["star"]);
  EXPECT_EQ(star_from_json(conj["conjugate"]["star"]), conjugate_star(t));
  EXPECT_EQ(run("star conjugate --star " + mv).status, 1);  // parities do not alternate
}

TEST_F(Cli, Represent) {
  std::string pair = write("sb.json", fixtures::json("scharlemann_bigon"));
  std::string star = write("st.json", std::string(R"({"sign":"+","labels":[{"id":1,"parity":"+"},{"id":2,"parity":"-"},
    {"id":3,"parity":"+"},{"id":4,"parity":"-"}],"L":[1,2,3,4],"omega":["out","in","out","in"]})"));
  auto r = run("represent " + pair + " --star " + star + " --eta-c + --eta-a - --json");
  ASSERT_EQ(r.status, 0);
  auto j = r.j();
  for (const auto& c : j["orientation"]["corners"]) {
    expect_keys(c, {"vertex", "interval", "dir"});
    EXPECT_EQ(c["interval"].size(), 2u);
    EXPECT_TRUE(c["dir"] == "in" || c["dir"] == "out");
  }
  EXPECT_EQ(j["orientation"]["corners"].size(), 16u);  // 4 vertices of degree 4
  expect_keys(j["representation"]["stats"], {"i", "u", "r", "s", "t"});
  EXPECT_EQ(j["representation"]["stats"]["r"], j["representation"]["faces"].size());
  for (const auto& f : j["faces"]) EXPECT_TRUE(f.contains("good_corner_bound"));
  EXPECT_EQ(run("represent " + pair + " --star " + star + " --eta-c +").status, 2);
}

TEST_F(Cli, VerifySmokeReport) {
  auto r = run("verify --suite smoke --json");
  EXPECT_EQ(r.status, 0);
  auto j = r.j();
  expect_keys(j, {"profile", "seed", "lemmas"});
  EXPECT_EQ(j["profile"], "smoke");
  EXPECT_EQ(j["seed"], harness::kDefaultSeed);
  EXPECT_EQ(j["lemmas"].size(), harness::registry().size());
  for (const auto& l : j["lemmas"]) {
    expect_keys(l, {"id", "class", "pass", "flagged", "witnesses"});
    EXPECT_TRUE(l["class"] == "U" || l["class"] == "T");
    EXPECT_TRUE(l["pass"].is_number_integer());
    EXPECT_TRUE(l["flagged"].is_number_integer());
    EXPECT_TRUE(l["witnesses"].is_array());
    EXPECT_LE(l["witnesses"].size(), 5u);
    if (l["class"] == "U") EXPECT_EQ(l["flagged"], 0) << l["id"];
  }
  EXPECT_EQ(run("verify --suite smoke --json").out, r.out);

  auto text = run("verify --suite smoke");
  EXPECT_EQ(text.status, 0);
  EXPECT_NE(text.out.find("no class-U failures"), std::string::npos);
}

TEST_F(Cli, VerifyWitnessIsALoadableFixture) {
  auto j = run("verify --lemma NO_NEW_GREAT_XCYCLE --json").j();
  const auto& w = j["lemmas"][0]["witnesses"];
  ASSERT_FALSE(w.empty());
  ASSERT_TRUE(w[0].contains("fixture"));
  EXPECT_EQ(run("validate " + write("w.json", w[0]["fixture"])).status, 0);
}

TEST_F(Cli, VerifySeedAndEnumerate) {
  auto j = run("verify --lemma EULER_INDEX --seed 5 --json").j();
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["lemmas"][0]["pass"], 100);
  auto e = run("verify --lemma NO_ISOLATED --enumerate 2,4 --json").j();
  harness::EnumerationSpec spec;
  spec.p = 2;
  spec.q = 4;
  spec.iso_reduction = true;
  const auto n = harness::enumerate_pairs(spec).size();
  EXPECT_EQ(e["lemmas"][0]["pass"].get<std::size_t>() + e["lemmas"][0]["flagged"].get<std::size_t>(), n);
  EXPECT_EQ(run("verify --lemma NO_ISOLATED --enumerate 4").status, 2);
}

TEST_F(Cli, Enumerate) {
  fs::path out = dir / "e22";
  auto r = run("enumerate --p 2 --q 2 --out " + out.string() + " --json");
  ASSERT_EQ(r.status, 0);
  harness::EnumerationSpec spec;
  const auto pairs = harness::enumerate_pairs(spec);
  EXPECT_EQ(r.j()["count"], pairs.size());
  std::size_t files = 0;
  for (const auto& f : fs::directory_iterator(out)) {
    ++files;
    EXPECT_EQ(run("validate " + f.path().string()).status, 0);
  }
  EXPECT_EQ(files, pairs.size());
  EXPECT_EQ(run("enumerate --p 4 --q 4 --out " + (dir / "x").string(), "SCHARGRAPH_BUDGET=8").status, 1);
}
