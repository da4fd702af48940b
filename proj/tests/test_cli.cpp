// Integration tests for the command-line front end: exit codes, report
// shape, and determinism. Takes the binary path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

namespace {

std::string g_cli;
int g_failures = 0;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string strip_duration(std::string s) {
  static const std::regex dur("\"duration_ms\": [0-9]+");
  return std::regex_replace(s, dur, "\"duration_ms\": X");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <binary>\n";
    return 2;
  }
  g_cli = argv[1];
  std::string dir = "/tmp/treelab_cli_test";
  if (std::system(("mkdir -p " + dir).c_str()) != 0) return 2;

  write_file(dir + "/chain.json", R"({"nodes": [[0,[0,1]],[2,[0,1]]], "covers": [[0,1]]})");
  write_file(dir + "/bad.json",
             R"({"nodes": [[0,[0,1]],[0,[1,1]],[2,[0,1]]], "covers": [[0,2],[1,2]]})");
  write_file(dir + "/broken.json", "{nope");
  write_file(dir + "/double.json", R"({"order_size": 4, "tuples": [[0,1],[2,3]]})");

  expect(run("validate-condition --in " + dir + "/chain.json").exit_code == 0,
         "valid condition exits 0");
  expect(run("validate-condition --in " + dir + "/bad.json").exit_code == 1,
         "invalid condition exits 1");
  expect(run("validate-condition --in " + dir + "/broken.json").exit_code == 2,
         "mangled JSON exits 2");
  expect(run("no-such-command").exit_code == 2, "unknown subcommand exits 2");
  expect(run("validate-condition --in " + dir + "/missing.json").exit_code == 2,
         "missing file exits 2");

  {
    auto r = run("validate-condition --in " + dir + "/chain.json + --restrict 1 --out " + dir +
                 "/part.json");
    (void)r;  // the + above is an intentional stray token
    expect(r.exit_code == 2, "stray positional exits 2");
    auto ok = run("validate-condition --in " + dir + "/chain.json --restrict 1 --out " + dir +
                  "/part.json");
    expect(ok.exit_code == 0, "restriction exits 0");
    auto part = run("validate-condition --in " + dir + "/part.json");
    expect(part.exit_code == 0, "written restriction file is a valid condition");
  }

  expect(run("validate-condition --in " + dir + "/chain.json --extends " + dir +
             "/part.json")
                 .exit_code == 0,
         "end-extension check exits 0");

  // negative realization flips to 0 under --expect none
  expect(run("realize linear --in " + dir + "/double.json --type 10").exit_code == 1,
         "unrealized pattern exits 1");
  expect(run("realize linear --in " + dir + "/double.json --type 10 --expect none").exit_code == 0,
         "--expect none flips the exit");
  expect(run("realize linear --in " + dir + "/double.json --type 11 --expect none").exit_code == 1,
         "--expect none fails when a witness exists");

  // generated tree piped back through analysis
  {
    auto gen = run("gen-tree --height 3 --widths 1,2,4 --seed 9 --out " + dir + "/t.json");
    expect(gen.exit_code == 0, "gen-tree exits 0");
    auto analyze = run("gen-tree --in " + dir + "/t.json");
    expect(analyze.exit_code == 0, "generated tree is normal");
    expect(analyze.output.find("max_antichain") != std::string::npos,
           "analysis reports the extremes");
    expect(run("check-lemma 2.4 --in " + dir + "/t.json").exit_code == 0,
           "the meet-bound scan is empty on a generated tree");
  }

  // determinism: identical runs give identical reports, duration aside
  {
    std::vector<std::string> cmds = {
        "gen-tree --height 4 --widths 1,2,4,8 --seed 123",
        "realize linear --in " + dir + "/double.json --type 11",
        "counterexample prop39 --size 5",
        "counterexample sec4 --k 4 --seed 11",
        "check-lemma 2.4 --height 3 --widths 1,2,5 --seed 77",
    };
    for (const auto& c : cmds) {
      auto a = run(c), b = run(c);
      expect(strip_duration(a.output) == strip_duration(b.output),
             "deterministic report for: " + c);
    }
  }

  // the 2.11 check through the CLI
  {
    write_file(dir + "/fork.json", R"({
      "condition": {"nodes": [[0,[0,1]],[1,[0,1]],[1,[1,1]],[2,[0,1]],[2,[1,1]]],
                     "covers": [[0,1],[0,2],[1,3],[2,4]]},
      "config": {"fork": 0, "left": 1, "right": 2, "left_top": 3, "right_top": 4}})");
    auto r = run("check-lemma 2.11 --in " + dir + "/fork.json --completions 8 --seed 5");
    expect(r.exit_code == 0, "forced lex order holds in sampled completions");
    expect(r.output.find("\"holds\": true") != std::string::npos, "2.11 reports holds");
  }

  if (g_failures) {
    std::cerr << g_failures << " CLI test(s) failed\n";
    return 1;
  }
  std::cout << "all CLI tests passed\n";
  return 0;
}
