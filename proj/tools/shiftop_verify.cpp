#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shiftop/verify.hpp"

namespace sv = shiftop::verify;

namespace {

constexpr int kConfigError = 2;

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

std::vector<shiftop::Rational> rationals(const std::vector<std::string>& raw) {
  std::vector<shiftop::Rational> out;
  for (const auto& s : split_list(raw)) out.push_back(shiftop::parse_rational(s));
  return out;
}

int usage(const std::string& msg) {
  std::cerr << "shiftop-verify: " << msg << "\nrun with --help for usage\n";
  return kConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numeric verification suites for curved shift operators"};
  sv::SuiteConfig cfg = sv::SuiteConfig::defaults();

  std::vector<std::string> suites, ns, mus;
  std::string jets_path, json_path;
  bool list = false, no_timings = false, quiet = false;
  auto* suite_opt = app.add_option("--suite", suites, "suites to run (comma separated; default: all)")->expected(0, -1);
  auto* n_opt = app.add_option("--n", ns, "dimension grid, e.g. 3,5,7,9");
  auto* mu_opt = app.add_option("--mu", mus, "Einstein constant grid, e.g. 0,1/2,-1,3/7");
  app.add_option("--nmax", cfg.nmax, "largest GJMS order N");
  app.add_option("--order", cfg.order, "Einstein backend truncation K");
  app.add_option("--seed", cfg.seed, "seed for random and sampled checks");
  app.add_option("--jets", jets_path, "jet-extension file (JSON) for the generic backend");
  app.add_option("--json", json_path, "write the JSON report here");
  app.add_option("--threads", cfg.threads, "worker threads (0: hardware)");
  app.add_flag("--list", list, "list checks with their anchors and exit");
  app.add_flag("--no-timings", no_timings, "write 0 for every timing in the JSON report");
  app.add_flag("--quiet", quiet, "only print failures and the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (suite_opt->count() > 0) cfg.suites = split_list(suites);
    if (n_opt->count() > 0) cfg.ns = rationals(ns);
    if (mu_opt->count() > 0) cfg.mus = rationals(mus);
  } catch (const shiftop::ParseError& e) {
    return usage(e.what());
  }
  if (std::string err = sv::validate(cfg); !err.empty()) return usage(err);

  if (!jets_path.empty()) {
    std::ifstream in(jets_path);
    if (!in) return usage("cannot read jets file " + jets_path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      sv::JetsFile jf = sv::parse_jets(buf.str());
      cfg.jets = jf.ext;
      cfg.jets_n = jf.n;
      cfg.jets_path = jets_path;
    } catch (const shiftop::ParseError& e) {
      return usage(std::string("jets file: ") + e.what());
    }
  }

  std::vector<sv::CheckSpec> checks;
  try {
    checks = sv::build_checks(cfg);
  } catch (const std::exception& e) {
    return usage(e.what());
  }

  if (list) {
    for (const auto& c : checks) std::cout << c.id << "  [" << c.anchor << "]" << (c.gating ? "" : "  (exploratory)") << "\n";
    return 0;
  }

  std::vector<sv::CheckReport> reports = sv::run_checks(checks, cfg.threads);
  std::string text = sv::text_report(reports);
  if (quiet) {
    std::istringstream in(text);
    bool failing = false;
    for (std::string line; std::getline(in, line);) {
      bool indented = line.rfind("  ", 0) == 0;
      if (!indented) failing = line.rfind("FAIL", 0) == 0;
      if (failing || line.rfind("summary", 0) == 0) std::cout << line << "\n";
    }
  } else {
    std::cout << text;
  }

  if (!json_path.empty()) {
    try {
      sv::write_atomic(json_path, sv::json_report(cfg, reports, !no_timings));
    } catch (const std::exception& e) {
      std::cerr << "shiftop-verify: " << e.what() << "\n";
      return 1;
    }
  }
  return sv::summarize(reports).ok() ? 0 : 1;
}
