#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

std::string data(const std::string& name) { return std::string(PERMCYC_DATA_DIR) + "/" + name; }

Result run(const std::string& args) {
  std::string cmd = std::string(PERMCYC_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("eval") {
  auto r = run("eval " + data("g.json") + " 2");
  CHECK(r.status == 0);
  CHECK(r.out == "0\n");
  CHECK(run("eval " + data("g.json") + " 0").out == "4\n");
  CHECK(run("eval " + data("g.json") + " 0 --inv").out == "2\n");
  CHECK(run("eval " + data("g.json") + " 7").out == "7\n");
  CHECK(run("eval " + data("parity-swap.json") + " 6").out == "7\n");
}

TEST_CASE("decide") {
  CHECK(run("decide " + data("parity-eq.json") + " 4 7").out == "false\n");
  CHECK(run("decide " + data("parity-eq.json") + " 4 8").out == "true\n");
  CHECK(run("decide " + data("g-witness.json") + " 0 14").out == "true\n");
  CHECK(run("decide " + data("g-witness.json") + " 0 3").out == "false\n");
  CHECK(run("decide " + data("two-cycles-witness.json") + " 1 9").out == "true\n");
}

TEST_CASE("orbit") {
  auto r = run("orbit " + data("g.json") + " 0 --steps 5");
  CHECK(r.status == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"k\tvalue", "0\t0", "-1\t2", "1\t4", "-2\t6", "2\t8"});
  auto fixed = lines(run("orbit " + data("transposition-01.json") + " 5 --steps 3").out);
  CHECK(fixed == std::vector<std::string>{"k\tvalue", "0\t5", "-1\t5", "1\t5"});
}

TEST_CASE("exit codes") {
  CHECK(run("eval " + data("malformed.json") + " 0").status == 1);
  CHECK(run("decide " + data("overflow.json") + " 0 1").status == 1);
  CHECK(run("eval " + data("g.json") + " 18446744073709551616").status == 1);
  CHECK(run("eval " + data("g.json") + " abc").status == 1);
  CHECK(run("eval").status == 1);
  CHECK(run("frobnicate").status == 1);
  CHECK(run("eval " + data("broken.json") + " 0").status == 2);
  CHECK(run("decide " + data("g-transversal-decider.json") + " 0 14 --fuel 5").status == 3);
  CHECK(run("decide " + data("g-transversal-decider.json") + " 0 14").out == "true\n");
}

TEST_CASE("dot") {
  auto r = run("dot " + data("transposition-01.json") + " --window 3");
  CHECK(r.status == 0);
  CHECK(r.out == "digraph perm {\n  0;\n  1;\n  2;\n  0 -> 1;\n  1 -> 0;\n  2 -> 2;\n}\n");
  auto g = run("dot " + data("g.json") + " --window 4");
  auto ls = lines(g.out);
  REQUIRE(ls.size() == 1 + 4 + 1 + 4 + 1);
  CHECK(ls[5] == "  \"…\" [shape=plaintext];");
  CHECK(ls[6] == "  0 -> \"…\";");
  CHECK(ls[8] == "  2 -> 0;");
}

TEST_CASE("output is deterministic") {
  const std::string cmds[] = {"dot " + data("g.json") + " --window 50",
                              "orbit " + data("two-cycles.json") + " 3 --steps 40",
                              "normalize " + data("semi-135.json") + " --witness " + data("semi-135-witness.json")};
  for (const auto& c : cmds) {
    auto a = run(c), b = run(c);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("normalize writes a loadable permutation") {
  auto path = std::filesystem::temp_directory_path() / "permcyc-cli-normal.json";
  std::filesystem::remove(path);
  auto r = run("normalize " + data("semi-135.json") + " --witness " + data("semi-135-witness.json") + " -o " +
               path.string());
  REQUIRE(r.status == 0);
  REQUIRE(std::filesystem::exists(path));
  CHECK(run("eval " + path.string() + " 1").out == "5\n");
  CHECK(run("eval " + path.string() + " 5").out == "3\n");
  CHECK(run("eval " + path.string() + " 3").out == "1\n");
  std::ifstream in(path);
  nlohmann::json parsed;
  CHECK_NOTHROW(parsed = nlohmann::json::parse(in));
  CHECK(parsed["kind"] == "Normalized");
  std::filesystem::remove(path);
}

TEST_CASE("conjugate") {
  auto r = run("conjugate " + data("evens-cycle.json") + " " + data("odds-cycle.json") + " --iso " +
               data("parity-swap.json") + " --witness " + data("evens-cycle-witness.json"));
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verification"]["conjugates"] == true);
  CHECK(j["verification"]["bijective"] == true);
  CHECK(j["verification"]["window"] == "200");
  CHECK(j["conjugator"].contains("kind"));

  auto s = run("conjugate " + data("g.json") + " " + data("evens-cycle.json") + " --same-partition --witness " +
               data("g-witness.json"));
  REQUIRE(s.status == 0);
  CHECK(nlohmann::json::parse(s.out)["verification"]["conjugates"] == true);
  CHECK(run("conjugate " + data("g.json") + " " + data("g.json") + " --witness " + data("g-witness.json")).status == 1);
  CHECK(run("conjugate " + data("g.json") + " " + data("g.json") + " --same-partition").status == 2);
}

TEST_CASE("gadgets") {
  auto h = run("gadget halting --program " + data("countdown.json") + " --steps 8");
  REQUIRE(h.status == 0);
  auto hj = nlohmann::json::parse(h.out);
  CHECK(hj["halting_step"] == nullptr);
  CHECK(hj["program"]["code"].size() == 3);
  CHECK(hj["trace"]["orbit"].size() == 8);

  auto p0 = nlohmann::json::parse(run("gadget halting --program 1").out);
  CHECK(p0["halting_step"] == "1");
  CHECK(p0["trace"]["closed"] == true);

  auto odd = nlohmann::json::parse(run("gadget oddlength " + data("transposition-01.json")).out);
  CHECK(odd["trace"]["closed"] == true);
  CHECK(odd["trace"]["orbit"].size() == 5);

  auto cd = nlohmann::json::parse(run("gadget interred-cd2cf " + data("identity.json") + " --x 0 --y 1").out);
  CHECK(cd["trace"]["closed"] == false);
  auto cf = nlohmann::json::parse(run("gadget interred-cf2cd " + data("transposition-01.json")).out);
  CHECK(cf.contains("j"));
  CHECK(cf.contains("jprime"));

  auto cr = run("gadget conjreduction " + data("g.json") + " --witness " + data("g-witness.json") + " --window 17");
  REQUIRE(cr.status == 0);
  CHECK(nlohmann::json::parse(cr.out)["block"] == nlohmann::json{"0", "6", "8", "14", "16"});
  CHECK(run("gadget oddlength").status == 1);
}

TEST_CASE("selfcheck") {
  auto r = run("selfcheck --suite core");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("PASS", 0) == 0);
  CHECK(run("selfcheck --suite nope").status == 1);
}
