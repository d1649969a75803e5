#include <json.hpp>

#include "shiftop/verify.hpp"

namespace shiftop::verify {
namespace {

using nlohmann::json;

Rational rational_field(const json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a rational string \"p/q\"");
  return parse_rational(j.get<std::string>());
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) throw ParseError(std::string("missing integer field '") + key + "'");
  return j[key].get<int>();
}

Letter letter(const std::string& name) {
  if (auto l = Alphabet::find(name)) return *l;
  // Undeclared letters get the default rule set: no adjoint, no scalar action.
  return Alphabet::intern(name);
}

ScalarPoly scalar_terms(const json& terms) {
  ScalarPoly p;
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  for (const auto& t : terms) {
    AtomExponents e{};
    for (const auto& a : t.value("atoms", json::array())) {
      std::string s = a.get<std::string>();
      if (s == "J") ++e[0];
      else if (s == "Psq") ++e[1];
      else if (s == "DJ") ++e[2];
      else throw ParseError("unknown scalar atom '" + s + "'");
    }
    p = p + ScalarPoly::monomial(e, rational_field(t.at("coeff"), "coeff"));
  }
  return p;
}

}  // namespace

JetsFile parse_jets(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("jets file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("jets file must hold a JSON object");
  JetsFile out;
  try {
    if (j.contains("n")) out.n = rational_field(j["n"], "n");
    for (const auto& l : j.value("letters", json::array())) {
      std::string name = l.at("name").get<std::string>();
      std::string adj = l.value("adjoint", "unavailable");
      if (adj != "self" && adj != "unavailable") throw ParseError("adjoint must be \"self\" or \"unavailable\"");
      Alphabet::declare(name, adj == "self" ? AdjointKind::SelfAdjoint : AdjointKind::Unavailable,
                        l.value("kills_constants", false));
    }
    for (const auto& block : j.value("deltaBar", json::array())) {
      int order = int_field(block, "order");
      auto& terms = out.ext.lap_bar[order];
      for (const auto& t : block.at("terms")) {
        JetExtensionTerm term;
        for (const auto& w : t.at("word")) term.word.push_back(letter(w.get<std::string>()));
        term.deriv = t.value("deriv", 0);
        term.coeff = rational_field(t.at("coeff"), "coeff");
        terms.push_back(std::move(term));
      }
    }
    for (const auto& block : j.value("v", json::array()))
      out.ext.v[int_field(block, "order")] = scalar_terms(block.value("terms", json::array()));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed jets file: ") + e.what());
  }
  return out;
}

}  // namespace shiftop::verify
