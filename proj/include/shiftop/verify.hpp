#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftop/geometry.hpp"

namespace shiftop::verify {

enum class Status { Pass, Fail, Skipped };
const char* status_name(Status s);

using Params = std::vector<std::pair<std::string, std::string>>;

struct Outcome {
  Status status = Status::Pass;
  std::string residual;  // serialized normal form or a numeric residual
  std::string reason;    // why a check was skipped
  Params details;        // extra report fields (seed, hashes, compared order)

  static Outcome pass(std::string residual = "0", Params details = {});
  static Outcome fail(std::string residual, Params details = {});
  static Outcome skip(std::string reason);
  static Outcome from(bool ok, const std::string& residual_if_failed, Params details = {});
};

struct CheckSpec {
  std::string id;
  std::string suite;
  std::string anchor;
  Params params;
  bool gating = true;  // exploratory checks never affect the exit code
  std::function<Outcome()> run;
};

struct CheckReport {
  std::string id;
  std::string suite;
  std::string anchor;
  Params params;
  bool gating = true;
  Outcome outcome;
  double ms = 0;
};

struct SuiteConfig {
  std::vector<std::string> suites;
  std::vector<Rational> ns;
  std::vector<Rational> mus;
  int nmax = 4;
  int order = 14;
  std::uint64_t seed = 1;
  std::optional<JetExtension> jets;
  std::optional<Rational> jets_n;  // restrict the extension to one dimension
  std::string jets_path;
  int threads = 0;  // 0: hardware concurrency

  static SuiteConfig defaults();
};

const std::vector<std::string>& suite_names();
// Empty when the configuration is usable; otherwise the first problem found.
std::string validate(const SuiteConfig& cfg);

std::vector<CheckSpec> build_checks(const SuiteConfig& cfg);
// Runs every check on a worker pool; the result is sorted by id.
std::vector<CheckReport> run_checks(const std::vector<CheckSpec>& checks, int threads);

struct Summary {
  int total = 0, passed = 0, failed = 0, skipped = 0, exploratory = 0;
  bool ok() const { return failed == 0; }
};
Summary summarize(const std::vector<CheckReport>& reports);

std::string json_report(const SuiteConfig& cfg, const std::vector<CheckReport>& reports, bool timings = true);
std::string text_report(const std::vector<CheckReport>& reports);
// Write via a temporary file in the same directory and rename.
void write_atomic(const std::string& path, const std::string& content);

// Jet-extension file (JSON). Declares any new letters as a side effect.
struct JetsFile {
  std::optional<Rational> n;
  JetExtension ext;
};
JetsFile parse_jets(const std::string& text);

// Anchor table: every check family with its descriptive anchor.
const std::vector<std::pair<std::string, std::string>>& anchor_table();

}  // namespace shiftop::verify
