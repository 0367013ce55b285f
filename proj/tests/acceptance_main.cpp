// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any gate fails.
//
// argv[1] (optional): path to the CLI binary, used by the determinism
// criterion; without it that criterion is checked in-process only.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "btq/suites.hpp"

using namespace btq;
namespace fs = std::filesystem;

namespace {

struct Gate {
  int id;
  std::string label;
  bool pass;
  double seconds;
  double limit_seconds;
  std::vector<suites::CriterionLine> lines;
};

std::vector<Gate> gates;

template <typename Fn>
void run_gate(int id, const std::string& label, double limit_seconds, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Gate g;
  g.id = id;
  g.label = label;
  g.limit_seconds = limit_seconds;
  try {
    const suites::SuiteResult res = fn();
    g.pass = res.pass();
    g.lines = res.lines;
  } catch (const std::exception& e) {
    g.pass = false;
    g.lines.push_back({std::string("exception: ") + e.what(), false, false, ""});
  }
  g.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (g.seconds > g.limit_seconds) {
    g.pass = false;
    g.lines.push_back({"runtime limit exceeded", false, false,
                       std::to_string(g.seconds) + "s > " +
                           std::to_string(g.limit_seconds) + "s"});
  }
  gates.push_back(std::move(g));
}

std::string read_file(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

suites::SuiteResult determinism_gate(const std::string& cli) {
  suites::SuiteResult res;
  res.name = "determinism";

  // in-process: identical config gives identical report bytes
  ExperimentConfig cfg;
  cfg.command = "verify-theorem";
  cfg.part = "v";
  cfg.samples = 20000;
  const std::string a = suites::report_document(cfg, suites::run_suite(cfg)).dump(2);
  const std::string b = suites::report_document(cfg, suites::run_suite(cfg)).dump(2);
  res.lines.push_back({"identical config gives identical report bytes (in-process)", a == b,
                       false, ""});

  if (!cli.empty()) {
    const fs::path base = fs::temp_directory_path() / "btq_acceptance_det";
    fs::remove_all(base);
    fs::create_directories(base);
    auto run_cli = [&](const std::string& args, const fs::path& out) {
      const std::string cmd = "\"" + cli + "\" " + args + " --out \"" + out.string() +
                              "\" > /dev/null 2>&1";
      return std::system(cmd.c_str());
    };
    bool all = true;
    for (const std::string& args :
         {std::string("sign-probe"),
          std::string("verify-theorem --part v --samples 20000 --seed 9001")}) {
      // identical config (including the out path): rerun into the same
      // directory and compare the bytes of the two writes
      const fs::path out = base / "run";
      fs::remove_all(out);
      run_cli(args, out);
      const std::string r1 = read_file(out / "report.json");
      run_cli(args, out);
      const std::string r2 = read_file(out / "report.json");
      all = all && !r1.empty() && r1 == r2;
    }
    res.lines.push_back({"CLI reruns produce byte-identical report.json", all, false, ""});
    fs::remove_all(base);
  }
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  ExperimentConfig cfg;  // defaults: 1e5 samples, seed 12345, sign -1

  run_gate(1, "orthogonality identity", 60, [&] {
    ExperimentConfig c = cfg;
    c.command = "verify-orthogonality";
    return suites::run_suite(c);
  });
  run_gate(2, "unitary isomorphism (part i)", 120, [&] {
    ExperimentConfig c = cfg;
    c.command = "verify-theorem";
    c.part = "i";
    return suites::run_suite(c);
  });
  run_gate(3, "spectral correspondence (part ii)", 180, [&] {
    ExperimentConfig c = cfg;
    c.command = "verify-theorem";
    c.part = "ii";
    return suites::run_suite(c);
  });
  run_gate(4, "u-invariant correspondence (part v)", 180, [&] {
    ExperimentConfig c = cfg;
    c.command = "verify-theorem";
    c.part = "v";
    return suites::run_suite(c);
  });
  run_gate(5, "cochain sign discrimination", 10, [&] {
    ExperimentConfig c = cfg;
    c.command = "sign-probe";
    return suites::run_suite(c);
  });
  run_gate(6, "semiclassical order, spectral symbols", 120, [&] {
    ExperimentConfig c = cfg;
    c.command = "semiclassical";
    c.mode = "spectral";
    return suites::run_suite(c);
  });
  run_gate(7, "semiclassical order, u-invariant symbols", 120, [&] {
    ExperimentConfig c = cfg;
    c.command = "semiclassical";
    c.mode = "uinvariant";
    return suites::run_suite(c);
  });
  run_gate(8, "norm limit", 60, [&] {
    ExperimentConfig c = cfg;
    c.command = "sup-norm-limit";
    return suites::run_suite(c);
  });
  run_gate(9, "norm-decay pathology", 60, [&] {
    ExperimentConfig c = cfg;
    c.command = "decay-demo";
    return suites::run_suite(c);
  });
  run_gate(10, "reproducing kernels", 180, [&] {
    ExperimentConfig c = cfg;
    c.command = "kernel-check";
    c.mode = "single";
    const suites::SuiteResult single = suites::run_suite(c);
    c.mode = "product";
    suites::SuiteResult both = suites::run_suite(c);
    both.lines.insert(both.lines.begin(), single.lines.begin(), single.lines.end());
    return both;
  });
  run_gate(11, "determinism", 300, [&] { return determinism_gate(cli); });

  bool all_pass = true;
  for (const auto& g : gates) {
    all_pass = all_pass && g.pass;
    std::printf("criterion %2d %-42s %s  (%.1fs, limit %.0fs)\n", g.id, g.label.c_str(),
                g.pass ? "PASS" : "FAIL", g.seconds, g.limit_seconds);
    for (const auto& l : g.lines) {
      const char* tag = l.informational ? "." : (l.pass ? "+" : "!");
      std::printf("    %s %s%s%s\n", tag, l.label.c_str(), l.detail.empty() ? "" : " -- ",
                  l.detail.c_str());
    }
  }
  std::printf("acceptance: %s\n", all_pass ? "PASS" : "FAIL");
  return all_pass ? 0 : 1;
}
