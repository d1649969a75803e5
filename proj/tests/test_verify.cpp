#include <doctest.h>

#include <algorithm>
#include <set>

#include <json.hpp>

#include "shiftop/conformal.hpp"
#include "shiftop/verify.hpp"

using namespace shiftop;
namespace sv = shiftop::verify;

namespace {

sv::SuiteConfig only(std::vector<std::string> suites) {
  sv::SuiteConfig c = sv::SuiteConfig::defaults();
  c.suites = std::move(suites);
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("configuration validation") {
  CHECK(sv::validate(sv::SuiteConfig::defaults()).empty());
  CHECK_FALSE(sv::validate(only({})).empty());
  CHECK_FALSE(sv::validate(only({"nope"})).empty());
  CHECK_FALSE(sv::validate(only({"delta", "delta"})).empty());
  sv::SuiteConfig c = only({"tangential"});
  c.order = 10;
  CHECK_FALSE(sv::validate(c).empty());
  c.order = 12;
  CHECK(sv::validate(c).empty());
  c.ns = {};
  CHECK_FALSE(sv::validate(c).empty());
  c.ns = {Rational(1)};
  CHECK_FALSE(sv::validate(c).empty());
  CHECK_THROWS_AS(sv::build_checks(only({})), std::invalid_argument);
}

TEST_CASE("the delta suite has one check per dimension and order") {
  auto checks = sv::build_checks(only({"delta"}));
  CHECK(checks.size() == 12);
  auto reports = sv::run_checks(checks, 1);
  sv::Summary s = sv::summarize(reports);
  CHECK(s.passed == 12);
  CHECK(s.failed == 0);
}

TEST_CASE("every check carries a documented anchor") {
  std::set<std::string> anchors;
  for (const auto& [family, anchor] : sv::anchor_table()) anchors.insert(anchor);
  auto checks = sv::build_checks(sv::SuiteConfig::defaults());
  std::set<std::string> ids;
  for (const auto& c : checks) {
    CHECK(anchors.count(c.anchor) == 1);
    CHECK(ids.insert(c.id).second);
    CHECK(c.id.rfind(c.suite, 0) == 0);
  }
}

TEST_CASE("run_checks reports failures, skips and exceptions") {
  std::vector<sv::CheckSpec> checks{
      {"t.b", "t", "x", {}, true, [] { return sv::Outcome::fail(""); }},
      {"t.a", "t", "x", {}, true, [] { return sv::Outcome::pass(); }},
      {"t.c", "t", "x", {}, true, []() -> sv::Outcome { throw TruncationInsufficient("too short"); }},
      {"t.d", "t", "x", {}, true, []() -> sv::Outcome { throw std::runtime_error("boom"); }},
      {"t.e", "t", "x", {}, false, [] { return sv::Outcome::fail("ignored"); }},
  };
  auto reports = sv::run_checks(checks, 3);
  REQUIRE(reports.size() == 5);
  CHECK(reports[0].id == "t.a");
  CHECK(reports[1].outcome.status == sv::Status::Fail);
  CHECK_FALSE(reports[1].outcome.residual.empty());
  CHECK(reports[2].outcome.status == sv::Status::Skipped);
  CHECK(reports[2].outcome.reason.find("TruncationInsufficient") != std::string::npos);
  CHECK(reports[3].outcome.status == sv::Status::Fail);
  sv::Summary s = sv::summarize(reports);
  CHECK(s.failed == 2);
  CHECK(s.skipped == 1);
  CHECK(s.exploratory == 1);
  CHECK_FALSE(s.ok());

  checks.push_back(checks[0]);
  CHECK_THROWS(sv::run_checks(checks, 1));
}

TEST_CASE("JSON report schema and determinism") {
  sv::SuiteConfig c = only({"delta", "numeric-flat"});
  auto r1 = sv::run_checks(sv::build_checks(c), 1);
  c.threads = 2;
  auto r2 = sv::run_checks(sv::build_checks(c), 2);
  std::string j1 = sv::json_report(c, r1, false), j2 = sv::json_report(c, r2, false);
  CHECK(j1 == j2);
  auto j = nlohmann::json::parse(j1);
  for (const char* k : {"version", "config", "checks", "summary"}) CHECK(j.contains(k));
  REQUIRE(j["checks"].size() == r1.size());
  for (const auto& e : j["checks"])
    for (const char* k : {"id", "anchor", "params", "status", "residual", "ms"}) CHECK(e.contains(k));
  CHECK(j["summary"]["failed"] == 0);
  CHECK(j["config"]["seed"] == 1);
}

TEST_CASE("jet extension files") {
  const char* good = R"({
    "n": "5",
    "letters": [{"name": "EXTRA_TEST", "adjoint": "self", "kills_constants": true}],
    "deltaBar": [{"order": 4, "terms": [{"word": ["EXTRA_TEST"], "deriv": 0, "coeff": "2/3"},
                                        {"word": ["MULT_Psq"], "deriv": 2, "coeff": "-1"}]}],
    "v": [{"order": 6, "terms": [{"atoms": ["J", "J", "Psq"], "coeff": "1/8"}]}]
  })";
  sv::JetsFile f = sv::parse_jets(good);
  REQUIRE(f.n);
  CHECK(*f.n == 5);
  REQUIRE(f.ext.lap_bar.count(4));
  CHECK(f.ext.lap_bar[4].size() == 2);
  CHECK(f.ext.lap_bar[4][0].coeff == Rational(2, 3));
  auto extra = Alphabet::find("EXTRA_TEST");
  REQUIRE(extra);
  CHECK(Alphabet::info(*extra).kills_constants);
  CHECK(f.ext.v[6] == ScalarPoly::monomial({2, 1, 0}, Rational(1, 8)));

  CHECK_THROWS_AS(sv::parse_jets("{"), ParseError);
  CHECK_THROWS_AS(sv::parse_jets("[]"), ParseError);
  CHECK_THROWS_AS(sv::parse_jets(R"({"n": 5})"), ParseError);
  CHECK_THROWS_AS(sv::parse_jets(R"({"v": [{"order": 6, "terms": [{"atoms": ["Q"], "coeff": "1"}]}]})"), ParseError);
  CHECK_THROWS_AS(sv::parse_jets(R"({"deltaBar": [{"terms": []}]})"), ParseError);
  CHECK_THROWS_AS(sv::parse_jets(R"({"v": [{"order": 6, "terms": [{"coeff": "1/0"}]}]})"), ParseError);
}

TEST_CASE("generic restrictions ignore order-4 jet data that does change the jets") {
  Alphabet::declare("PROBE_TEST", AdjointKind::Unavailable, false);
  JetExtension ext;
  ext.lap_bar[4].push_back(JetExtensionTerm{Word{*Alphabet::find("PROBE_TEST")}, 0, Rational(7, 2)});
  ext.v[5] = ScalarPoly();
  ext.v[6] = ScalarPoly::atom(Atom::J, 3) * Rational(-3);
  const Rational n(7);
  GeometryJets plain = generic_jets(n), probed = generic_jets(n, ext);
  CHECK(plain.lap_bar.order() < probed.lap_bar.order());
  CHECK(probed.lap_bar.coefficient(Rational(4), 0).coeff(Word{*Alphabet::find("PROBE_TEST")}) == RatFunc(Rational(7, 2)));
  CHECK(probed.v.coeff(Rational(6)) == ScalarPoly::atom(Atom::J, 3) * Rational(-3));
  for (int N = 1; N <= 3; ++N)
    CHECK(iterated_shift(plain, RatFunc::lambda(), N).restrict_boundary() ==
          iterated_shift(probed, RatFunc::lambda(), N).restrict_boundary());

  auto reports = sv::run_checks(sv::build_checks(only({"delta"})), 1);
  for (const auto& r : reports) {
    bool probe = std::any_of(r.outcome.details.begin(), r.outcome.details.end(),
                             [](const auto& d) { return d.first == "jet_independence"; });
    CHECK(probe);
  }
}
