#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "suites.hpp"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(PERMCYC_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(PERMCYC_DATA_DIR) + "/" + name; }

// The CLI selfcheck must pass and every subcommand must be byte-for-byte
// reproducible.
bool cli_criterion(std::string& detail) {
  auto self = run("selfcheck");
  if (self.status != 0) {
    detail = "selfcheck exited " + std::to_string(self.status);
    return false;
  }
  const std::string cmds[] = {
      "dot " + data("g.json") + " --window 100",
      "eval " + data("g.json") + " 2",
      "eval " + data("two-cycles.json") + " 12345 --inv",
      "decide " + data("parity-eq.json") + " 4 7",
      "decide " + data("g-witness.json") + " 0 14",
      "orbit " + data("g.json") + " 0 --steps 50",
  };
  for (const auto& c : cmds) {
    auto a = run(c), b = run(c);
    if (a.status != 0 || a.out.empty() || a.out != b.out) {
      detail = "not reproducible: " + c;
      return false;
    }
  }
  auto eval = run("eval " + data("g.json") + " 2");
  if (eval.out != "0\n") {
    detail = "eval g 2 printed " + eval.out;
    return false;
  }
  detail = "selfcheck and 6 commands";
  return true;
}

}  // namespace

int main() {
  bool all = true;
  for (const auto& c : suites::criteria()) {
    if (c.id == 0) continue;
    auto o = suites::run(c);
    std::cout << suites::format(o) << std::endl;
    all = all && o.pass;
  }
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = cli_criterion(detail);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char line[512];
  std::snprintf(line, sizeof line, "%s 9 command-line interface (%.2fs): %s", ok ? "PASS" : "FAIL", secs,
                detail.c_str());
  std::cout << line << std::endl;
  all = all && ok;
  return all ? 0 : 1;
}
