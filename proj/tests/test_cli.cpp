#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

RunResult run_tool(const std::string& args) {
  const std::string cmd = std::string(KPSTOOL_PATH) + " " + args +
                          " >cli_stdout.txt 2>cli_stderr.txt";
  int raw = std::system(cmd.c_str());
  RunResult r;
  if (raw != -1 && WIFEXITED(raw)) r.code = WEXITSTATUS(raw);
  r.out = slurp("cli_stdout.txt");
  r.err = slurp("cli_stderr.txt");
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) rows.push_back(line);
  return rows;
}

bool has_line(const std::string& text, const std::string& want) {
  for (const std::string& line : lines_of(text))
    if (line == want) return true;
  return false;
}

const char* kToySpec = R"({
  "designs": [
    {"design": "pbib2", "scheme": {"scheme": "gd", "a": 2, "f": 3}},
    {"design": "explicit", "v": 9, "blocks": [
      [4,7,2],[7,1,5],[1,4,8],[5,8,3],[8,2,6],[2,5,9],
      [6,9,1],[9,3,4],[3,6,7],[1,2,3],[4,5,6],[7,8,9]]}
  ]
})";

}  // namespace

TEST_CASE("version and usage errors") {
  RunResult v = run_tool("--version");
  CHECK(v.code == 0);
  CHECK(v.out == "kpstool 1.0.0\n");

  CHECK(run_tool("").code == 1);
  CHECK(run_tool("frobnicate").code == 1);
  CHECK(run_tool("analyze").code != 0);  // no input given
}

TEST_CASE("scheme subcommand") {
  RunResult r = run_tool(R"(scheme --json '{"scheme":"gd","a":2,"f":3}')");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "family,,gd"));
  CHECK(has_line(r.out, "v,,6"));
  CHECK(has_line(r.out, "theta,j=1,2"));
  CHECK(has_line(r.out, "theta,j=2,3"));
  CHECK(has_line(r.out, "phi,j=2 u=2 w=2,0"));
  CHECK(has_line(r.out, "valid,,true"));

  RunResult j = run_tool(
      R"(scheme --json '{"scheme":"triangular","m":5}' --format json)");
  CHECK(j.code == 0);
  json doc = json::parse(j.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["family"] == "triangular");
  CHECK(doc["v"] == 10);
  CHECK(doc["theta"] == json::array({1, 6, 3}));
  CHECK(doc["valid"] == true);

  RunResult bad = run_tool(R"(scheme --json '{"scheme":"gd","a":2}')");
  CHECK(bad.code == 2);
  json err = json::parse(bad.err);
  CHECK(err["schema"] == 1);
  CHECK(err["error"].is_string());

  CHECK(run_tool("scheme --json 'not json'").code == 2);
}

TEST_CASE("design subcommand with dual derivation") {
  RunResult r = run_tool(R"(design --json '{"design":"sts","g":4}' --dual)");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "v,,9"));
  CHECK(has_line(r.out, "b,,12"));
  CHECK(has_line(r.out, "k,,3"));
  CHECK(has_line(r.out, "r,,4"));
  CHECK(has_line(r.out, "role,,bib lambda=1"));
  CHECK(has_line(r.out, "dual_b,,9"));
  CHECK(has_line(r.out, "dual_v,,12"));
  CHECK(has_line(r.out, "dual_r,,3"));
  CHECK(has_line(r.out, "dual_k,,4"));
  CHECK(has_line(r.out, "dual_theta,j=1,0"));
  CHECK(has_line(r.out, "dual_theta,j=2,8"));
  CHECK(has_line(r.out, "dual_phi,j=2 u=2 w=2,7"));
  CHECK(has_line(r.out, "dual_in_q,,false"));

  RunResult bad = run_tool(R"(design --json '{"design":"sts","g":5}')");
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.err)["error"].is_string());
}

TEST_CASE("design export round trips") {
  spit("cli_toy.json", kToySpec);
  json toy = json::parse(std::string(kToySpec));
  const std::string frag = toy["designs"][1].dump();

  RunResult ex = run_tool("design --json '" + frag +
                          "' --export cli_exported.json");
  CHECK(ex.code == 0);
  json exported = json::parse(slurp("cli_exported.json"));
  CHECK(exported["design"] == "explicit");
  CHECK(exported["v"] == 9);
  CHECK(exported["blocks"].size() == 12);
  CHECK(exported["blocks"][0] == json::parse("[2,4,7]"));

  RunResult re = run_tool("design --spec cli_exported.json");
  CHECK(re.code == 0);
  CHECK(has_line(re.out, "role,,bib lambda=1"));
  CHECK(has_line(re.out, "b,,12"));

  // the dual's blocks list, per original symbol, the blocks containing it
  RunResult dual_ex = run_tool("design --json '" + frag +
                               "' --dual --export cli_dual.json");
  CHECK(dual_ex.code == 0);
  json dual_doc = json::parse(slurp("cli_dual.json"));
  CHECK(dual_doc["v"] == 12);
  CHECK(dual_doc["blocks"].size() == 9);
  CHECK(dual_doc["blocks"][0] == json::parse("[2,3,7,10]"));
  CHECK(dual_doc["blocks"][8] == json::parse("[6,7,8,12]"));
}

TEST_CASE("kps subcommand prints the worked example tables") {
  spit("cli_toy.json", kToySpec);
  RunResult r = run_tool("kps --spec cli_toy.json");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "n,,54"));
  CHECK(has_line(r.out, "k,,7"));
  CHECK(has_line(r.out, "v,,21"));
  CHECK(has_line(r.out, "q,,2"));
  CHECK(has_line(r.out, "dual_b,design=1,6"));
  CHECK(has_line(r.out, "dual_in_q,design=1,true"));
  CHECK(has_line(r.out, "dual_b,design=2,9"));
  CHECK(has_line(r.out, "dual_in_q,design=2,false"));
  CHECK(has_line(r.out, "n_assoc,tuple=02,8"));
  CHECK(has_line(r.out, "n_assoc,tuple=10,2"));
  CHECK(has_line(r.out, "n_assoc,tuple=12,16"));
  CHECK(has_line(r.out, "n_assoc,tuple=20,3"));
  CHECK(has_line(r.out, "n_assoc,tuple=22,24"));
  CHECK(has_line(r.out, "lambda,tuple=12,1"));
  CHECK(has_line(r.out, "lambda,tuple=20,5"));
  CHECK(has_line(r.out, "delta,tuple=12,0"));
  CHECK(has_line(r.out, "delta,tuple=22,1"));
  CHECK(has_line(r.out, "mu,tuple=12,29"));

  RunResult j = run_tool("kps --spec cli_toy.json --format json");
  CHECK(j.code == 0);
  json doc = json::parse(j.out);
  CHECK(doc["n"] == 54);
  CHECK(doc["tuples"].size() == 5);
  CHECK(doc["tuples"][2]["tuple"] == "12");
  CHECK(doc["tuples"][2]["mu"] == 29);
}

TEST_CASE("analyze reproduces the published row and is deterministic") {
  spit("cli_toy.json", kToySpec);
  RunResult r = run_tool("analyze --spec cli_toy.json");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "pr1,,0.6981"));
  CHECK(has_line(r.out, "pr,eta=1,0.8665"));
  CHECK(has_line(r.out, "pr,eta=3,0.9739"));
  CHECK(has_line(r.out, "pr,eta=20,1.0000"));
  CHECK(has_line(r.out, "fail,s=1,0.0582"));

  // exact beta semantics move the eta=3 entry
  RunResult ex = run_tool("analyze --spec cli_toy.json --mode exact");
  CHECK(ex.code == 0);
  CHECK(has_line(ex.out, "pr,eta=3,0.9758"));

  RunResult f1 = run_tool("analyze --spec cli_toy.json --out cli_a1.csv");
  RunResult f2 = run_tool("analyze --spec cli_toy.json --out cli_a2.csv");
  CHECK(f1.code == 0);
  CHECK(f2.code == 0);
  CHECK(f1.out.empty());
  CHECK(slurp("cli_a1.csv") == slurp("cli_a2.csv"));
  CHECK(has_line(slurp("cli_a1.csv"), "pr1,,0.6981"));

  // a bare design fragment runs as a single-constituent spec; the default
  // s list would overrun the 9 nodes here, so pass explicit small values
  RunResult bare =
      run_tool(R"(analyze --json '{"design":"sts","g":4}' --eta 1 --s 1)");
  CHECK(bare.code == 0);
  CHECK(has_line(bare.out, "pr1,,1.0000"));
  CHECK(has_line(bare.out, "pr2,eta=1,0.0000"));
  CHECK(has_line(bare.out, "fail,s=1,0.1429"));

  // with the defaults the same fragment reports the overrun as a clean error
  RunResult over = run_tool(R"(analyze --json '{"design":"sts","g":4}')");
  CHECK(over.code == 2);
  CHECK(over.err.find("\"schema\":1") != std::string::npos);
}

TEST_CASE("verify passes on the worked example and honors expectations") {
  spit("cli_toy.json", kToySpec);
  RunResult ok = run_tool(
      "verify --spec cli_toy.json --trials 4000 --eta 1 --eta 3 --s 1 --s 2 "
      "--seed 42");
  CHECK(ok.code == 0);
  bool scheme_row = false, pr1_row = false, lambda_row = false,
       mu_row = false, two_hop = false, fail_row = false;
  for (const std::string& line : lines_of(ok.out)) {
    if (line.rfind("scheme_tables,", 0) == 0 &&
        line.find(",pass") != std::string::npos)
      scheme_row = true;
    if (line.rfind("exact_pr1,", 0) == 0) {
      CHECK(line.find("37/53 vs 37/53") != std::string::npos);
      pr1_row = line.find(",pass") != std::string::npos;
    }
    if (line.rfind("lambda_pairs,pairs=1431", 0) == 0)
      lambda_row = line.find(",pass") != std::string::npos;
    if (line.rfind("mu,tuple=12", 0) == 0)
      mu_row = line.find(",pass") != std::string::npos;
    if (line.rfind("mc_two_hop,eta=1", 0) == 0)
      two_hop = line.find(",pass") != std::string::npos;
    if (line.rfind("mc_fail,s=1", 0) == 0) {
      CHECK(line.find("vs exhaustive") != std::string::npos);
      fail_row = line.find(",pass") != std::string::npos;
    }
  }
  CHECK(scheme_row);
  CHECK(pr1_row);
  CHECK(lambda_row);
  CHECK(mu_row);
  CHECK(two_hop);
  CHECK(fail_row);

  RunResult expect_ok = run_tool(
      "verify --spec cli_toy.json --trials 1000 --eta 1 --s 1 "
      "--expect-pr1 0.6981");
  CHECK(expect_ok.code == 0);

  RunResult expect_bad = run_tool(
      "verify --spec cli_toy.json --trials 1000 --eta 1 --s 1 "
      "--expect-pr1 0.9999");
  CHECK(expect_bad.code == 3);
  CHECK(has_line(expect_bad.out,
                 "expect_pr1,expected=0.9999 actual=0.6981,fail"));
}

TEST_CASE("discover prints shared key labels") {
  RunResult r =
      run_tool("discover 1:6:4:0 1:6:6:0 --groups 2 --f 23 --g 22");
  CHECK(r.code == 0);
  std::vector<std::string> rows = lines_of(r.out);
  REQUIRE(rows.size() == 24);
  for (int d = 1; d <= 23; ++d)
    CHECK(rows[static_cast<size_t>(d - 1)] ==
          "block:1:2:6:" + std::to_string(d));
  CHECK(rows[23] == "triple:0:1:5");

  RunResult two =
      run_tool("discover 2:2:5:1 1:3:6:2 --groups 2 --f 23 --g 22");
  CHECK(two.code == 0);
  CHECK(two.out == "block:1:2:3:2\ntriple:1:1:6\n");

  RunResult j = run_tool(
      "discover 2:2:5:1 1:3:6:2 --groups 2 --f 23 --g 22 --format json");
  CHECK(j.code == 0);
  json doc = json::parse(j.out);
  CHECK(doc["labels"] ==
        json::array({"block:1:2:3:2", "triple:1:1:6"}));

  CHECK(run_tool("discover 1:1:0:0 1:2:0:0 --groups 2 --f 3 --g 5").code == 2);
  CHECK(run_tool("discover 1:6:4:0 --groups 2 --f 23 --g 22").code == 1);
}

TEST_CASE("discover falls back to raw ids for the skolem family") {
  RunResult r =
      run_tool("discover 1:2:3:0 1:3:3:0 --groups 2 --f 3 --g 6");
  CHECK(r.code == 0);
  std::vector<std::string> rows = lines_of(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0].rfind("# labels unavailable", 0) == 0);
  for (size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].rfind("raw:2:", 0) == 0);

  // the sts part must be written as symbol:0 in this range
  CHECK(run_tool("discover 1:2:3:1 1:3:3:0 --groups 2 --f 3 --g 6").code == 2);
}

TEST_CASE("reference tables regenerate byte for byte") {
  RunResult r = run_tool("paper-tables --out cli_tables");
  CHECK(r.code == 0);
  CHECK(lines_of(r.out).size() == 7);

  const char* names[] = {
      "gd_a2_f21_g25.csv",     "gd_a2_f23_g22.csv",
      "triangular_m9_g27.csv", "triangular_m8_g31.csv",
      "latin_p17_k12_g28.csv", "latin_p19_k13_g28.csv",
      "toy_a2_f3_g4.csv",
  };
  for (const char* name : names) {
    const std::string text = slurp(std::string("cli_tables/") + name);
    CHECK_FALSE(text.empty());
  }

  const std::string gd21 = slurp("cli_tables/gd_a2_f21_g25.csv");
  CHECK(has_line(gd21, "pr1,,0.5329"));
  CHECK(has_line(gd21, "pr,eta=3,0.9421"));
  CHECK(has_line(gd21, "fail,s=10,0.1624"));

  const std::string toy = slurp("cli_tables/toy_a2_f3_g4.csv");
  CHECK(has_line(toy, "pr1,,0.6981"));

  RunResult again = run_tool("paper-tables --out cli_tables2");
  CHECK(again.code == 0);
  for (const char* name : names) {
    CHECK(slurp(std::string("cli_tables/") + name) ==
          slurp(std::string("cli_tables2/") + name));
  }
}
