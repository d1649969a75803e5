#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "shiftop/operator_series.hpp"
#include "shiftop/verify.hpp"

namespace shiftop::verify {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      return "skipped";
  }
  return "?";
}

Outcome Outcome::pass(std::string residual, Params details) {
  return Outcome{Status::Pass, std::move(residual), "", std::move(details)};
}

Outcome Outcome::fail(std::string residual, Params details) {
  if (residual.empty()) residual = "nonzero (no serialization available)";
  return Outcome{Status::Fail, std::move(residual), "", std::move(details)};
}

Outcome Outcome::skip(std::string reason) { return Outcome{Status::Skipped, "", std::move(reason), {}}; }

Outcome Outcome::from(bool ok, const std::string& residual_if_failed, Params details) {
  return ok ? pass("0", std::move(details)) : fail(residual_if_failed, std::move(details));
}

SuiteConfig SuiteConfig::defaults() {
  SuiteConfig c;
  c.suites = suite_names();
  c.ns = {Rational(3), Rational(5), Rational(7), Rational(9)};
  c.mus = {Rational(0), Rational(1, 2), Rational(-1), Rational(3, 7)};
  return c;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"weyl",           "delta",           "factorization", "tangential",
                                              "bigGJMS",        "q-holo",          "solution-ops",  "building-blocks",
                                              "holo-laplacian", "numeric-flat",    "numeric-scattering",
                                              "exploratory"};
  return names;
}

std::string validate(const SuiteConfig& cfg) {
  if (cfg.suites.empty()) return "no suites selected";
  std::set<std::string> seen;
  for (const auto& s : cfg.suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      return "unknown suite '" + s + "'";
    if (!seen.insert(s).second) return "suite '" + s + "' listed twice";
  }
  if (cfg.ns.empty()) return "empty n-grid";
  if (cfg.mus.empty()) return "empty mu-grid";
  for (const auto& n : cfg.ns)
    if (n < 2) return "dimension " + to_string(n) + " is below 2";
  if (cfg.nmax < 1) return "nmax must be at least 1";
  if (cfg.order < 4) return "truncation order must be at least 4";
  static const std::set<std::string> einstein{"weyl", "factorization", "tangential", "bigGJMS", "q-holo",
                                              "solution-ops", "building-blocks", "holo-laplacian", "exploratory"};
  bool needs = std::any_of(cfg.suites.begin(), cfg.suites.end(), [](const std::string& s) { return einstein.count(s); });
  if (needs && cfg.order < 2 * cfg.nmax + 4)
    return "truncation order " + std::to_string(cfg.order) + " is below 2*nmax+4 = " + std::to_string(2 * cfg.nmax + 4);
  if (cfg.threads < 0) return "thread count must be non-negative";
  return {};
}

std::vector<CheckReport> run_checks(const std::vector<CheckSpec>& checks, int threads) {
  std::vector<CheckReport> out(checks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < checks.size();) {
      const CheckSpec& c = checks[i];
      CheckReport& r = out[i];
      r.id = c.id;
      r.suite = c.suite;
      r.anchor = c.anchor;
      r.params = c.params;
      r.gating = c.gating;
      auto t0 = std::chrono::steady_clock::now();
      try {
        r.outcome = c.run();
      } catch (const TruncationInsufficient& e) {
        r.outcome = Outcome::skip(std::string("TruncationInsufficient: ") + e.what());
      } catch (const std::exception& e) {
        r.outcome = Outcome::fail(std::string("exception: ") + e.what());
      }
      r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  int n = threads > 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<int>(n, std::max<size_t>(1, checks.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i].id == out[i - 1].id) throw std::logic_error("duplicate check id " + out[i].id);
  return out;
}

Summary summarize(const std::vector<CheckReport>& reports) {
  Summary s;
  for (const auto& r : reports) {
    ++s.total;
    if (!r.gating) {
      ++s.exploratory;
      continue;
    }
    switch (r.outcome.status) {
      case Status::Pass:
        ++s.passed;
        break;
      case Status::Fail:
        ++s.failed;
        break;
      case Status::Skipped:
        ++s.skipped;
        break;
    }
  }
  return s;
}

namespace {

nlohmann::ordered_json params_json(const Params& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

std::vector<std::string> strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

}  // namespace

std::string json_report(const SuiteConfig& cfg, const std::vector<CheckReport>& reports, bool timings) {
  nlohmann::ordered_json j;
  j["version"] = "1";
  nlohmann::ordered_json c;
  c["suites"] = cfg.suites;
  c["n"] = strings(cfg.ns);
  c["mu"] = strings(cfg.mus);
  c["nmax"] = cfg.nmax;
  c["order"] = cfg.order;
  c["seed"] = cfg.seed;
  c["jets"] = cfg.jets_path.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(cfg.jets_path);
  j["config"] = c;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json e;
    e["id"] = r.id;
    e["anchor"] = r.anchor;
    e["params"] = params_json(r.params);
    e["status"] = status_name(r.outcome.status);
    e["residual"] = r.outcome.residual;
    if (r.outcome.status == Status::Skipped) e["reason"] = r.outcome.reason;
    if (!r.outcome.details.empty()) e["details"] = params_json(r.outcome.details);
    if (!r.gating) e["gating"] = false;
    e["ms"] = timings ? std::round(r.ms * 10) / 10 : 0.0;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  Summary s = summarize(reports);
  j["summary"] = {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped},
                  {"exploratory", s.exploratory}};
  return j.dump(2) + "\n";
}

std::string text_report(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    const char* tag = !r.gating ? "INFO" : r.outcome.status == Status::Pass ? "PASS"
                                          : r.outcome.status == Status::Fail ? "FAIL"
                                                                             : "SKIP";
    os << tag << "  " << r.id << "  [" << r.anchor << "]";
    char buf[32];
    std::snprintf(buf, sizeof buf, "  %.1f ms", r.ms);
    os << buf;
    if (r.outcome.status == Status::Skipped) os << "  (" << r.outcome.reason << ")";
    if (r.outcome.status == Status::Fail || !r.gating) {
      std::string res = r.outcome.residual;
      if (res.size() > 400) res = res.substr(0, 400) + "...";
      for (auto& ch : res)
        if (ch == '\n') ch = ';';
      os << "\n      residual: " << res;
    }
    os << "\n";
  }
  Summary s = summarize(reports);
  os << "summary: " << s.total << " checks, " << s.passed << " passed, " << s.failed << " failed, " << s.skipped
     << " skipped, " << s.exploratory << " exploratory\n";
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()) % 100000);
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + target.string() + ": " + ec.message());
  }
}

}  // namespace shiftop::verify
