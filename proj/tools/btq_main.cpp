// Batch verification runner for the quantization lab.
//
// Subcommands map to the named suites; a JSON config file supplies defaults
// and CLI flags override it. Reports land in <out>/report.json with CSV
// tables under <out>/tables/. Exit codes: 0 all criteria pass, 1 a
// criterion failed, 2 configuration error.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "btq/suites.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<int> workers;
  std::optional<int> sign;
  std::string part;
  std::string mode;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file");
  cmd->add_option("--out", f.out, "output directory for report.json and tables/");
  cmd->add_option("--seed", f.seed, "64-bit master seed override");
  cmd->add_option("--samples", f.samples, "Monte-Carlo sample count override");
  cmd->add_option("--workers", f.workers, "worker threads (never affects the numbers)");
  cmd->add_option("--sign", f.sign, "cochain sign convention (+1 or -1)");
}

int run_command(const std::string& command, const CommonFlags& f) {
  btq::ExperimentConfig cfg;
  cfg.command = command;
  cfg.out = "btq-out";
  try {
    if (!f.config_path.empty()) cfg = btq::load_config_file(f.config_path, cfg);
    cfg.command = command;
    if (!f.part.empty()) cfg.part = f.part;
    if (!f.mode.empty()) cfg.mode = f.mode;
    if (f.seed) cfg.seed = *f.seed;
    if (f.samples) cfg.samples = *f.samples;
    if (f.workers) cfg.workers = *f.workers;
    if (f.sign) cfg.sign = *f.sign;
    if (!f.out.empty()) cfg.out = f.out;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  btq::suites::SuiteResult res;
  try {
    res = btq::suites::run_suite(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  for (const auto& line : res.lines) {
    const char* tag = line.informational ? "info" : (line.pass ? "pass" : "FAIL");
    std::cout << "[" << tag << "] " << line.label;
    if (!line.detail.empty()) std::cout << " -- " << line.detail;
    std::cout << "\n";
  }

  const btq::ordered_json doc = btq::suites::report_document(cfg, res);
  const std::filesystem::path out_dir(cfg.out);
  btq::write_text_file((out_dir / "report.json").string(), doc.dump(2) + "\n");
  for (const auto& [name, csv] : res.tables)
    btq::write_text_file((out_dir / "tables" / name).string(), csv);
  std::cout << (res.pass() ? "PASS" : "FAIL") << " -> " << (out_dir / "report.json").string()
            << "\n";
  return res.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for Toeplitz quantization on normal-matrix domains"};
  app.require_subcommand(1);

  struct Sub {
    std::string name;
    std::string help;
    bool has_part = false;
    bool has_mode = false;
  };
  const std::vector<Sub> subs = {
      {"verify-orthogonality", "monomial moment identity on the matrix domain"},
      {"verify-theorem", "unitary-correspondence checks (--part i|ii|v)", true, false},
      {"semiclassical", "expansion order fits (--mode spectral|uinvariant)", false, true},
      {"sup-norm-limit", "Toeplitz norm against the sup norm as h decreases"},
      {"decay-demo", "norm-decay pathology of the determinant-Gaussian symbol"},
      {"kernel-check", "reproducing kernel checks (--mode single|product)", false, true},
      {"sign-probe", "cochain sign discriminator"},
  };

  std::map<std::string, CommonFlags> flags;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    CommonFlags& f = flags[s.name];
    add_common(cmd, f);
    if (s.has_part) cmd->add_option("--part", f.part, "theorem part: i, ii or v");
    if (s.has_mode) cmd->add_option("--mode", f.mode, "suite mode");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (const auto& s : subs)
    if (app.got_subcommand(s.name)) return run_command(s.name, flags[s.name]);
  return 2;
}
