#include "shiftop/tangential.hpp"

#include <mutex>
#include <sstream>

namespace shiftop {

namespace {

struct Registry {
  std::mutex mu;
  std::vector<LetterInfo> letters;
  Registry() {
    letters = {
        {"LAP", AdjointKind::SelfAdjoint, true, std::nullopt},
        {"MULT_J", AdjointKind::SelfAdjoint, false, Atom::J},
        {"MULT_Psq", AdjointKind::SelfAdjoint, false, Atom::Psq},
        {"MULT_DJ", AdjointKind::SelfAdjoint, false, Atom::DJ},
        {"DPD", AdjointKind::SelfAdjoint, true, std::nullopt},
        {"GJD", AdjointKind::Unavailable, true, std::nullopt},
    };
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

Letter Alphabet::intern(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  for (std::size_t i = 0; i < r.letters.size(); ++i)
    if (r.letters[i].name == name) return static_cast<Letter>(i);
  r.letters.push_back({std::string(name), AdjointKind::Unavailable, false, std::nullopt});
  return static_cast<Letter>(r.letters.size() - 1);
}

std::optional<Letter> Alphabet::find(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  for (std::size_t i = 0; i < r.letters.size(); ++i)
    if (r.letters[i].name == name) return static_cast<Letter>(i);
  return std::nullopt;
}

void Alphabet::declare(std::string_view name, AdjointKind adjoint, bool kills_constants) {
  Letter l = intern(name);
  if (l < letters::kBuiltinCount) throw std::invalid_argument("cannot redeclare built-in letter " + std::string(name));
  auto& r = registry();
  std::lock_guard lock(r.mu);
  r.letters[l].adjoint = adjoint;
  r.letters[l].kills_constants = kills_constants;
}

LetterInfo Alphabet::info(Letter l) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  if (l >= r.letters.size()) throw std::out_of_range("unknown letter id");
  return r.letters[l];
}

std::string Alphabet::name(Letter l) { return info(l).name; }

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ".";
    out += Alphabet::name(w[i]);
  }
  return out;
}

const char* mode_name(TangentialMode m) { return m == TangentialMode::Free ? "free" : "einstein"; }

TangentialElement TangentialElement::word(TangentialMode mode, const Word& w, const RatFunc& c) {
  TangentialElement t(mode);
  t.add(w, c);
  return t;
}

TangentialElement TangentialElement::scalar(TangentialMode mode, const RatFunc& c) { return word(mode, Word(), c); }

TangentialElement TangentialElement::lap_power(TangentialMode mode, int k, const RatFunc& c) {
  return word(mode, Word(static_cast<std::size_t>(k), letters::LAP), c);
}

TangentialElement TangentialElement::multiplication(TangentialMode mode, const ScalarPoly& p, const Rational& n,
                                                    const Rational& mu) {
  if (mode == TangentialMode::Einstein) return scalar(mode, RatFunc(p.einstein_value(n, mu)));
  TangentialElement t(mode);
  for (const auto& [e, c] : p.terms()) {
    Word w;
    w.append(e[0], letters::MULT_J);
    w.append(e[1], letters::MULT_Psq);
    w.append(e[2], letters::MULT_DJ);
    t.add(w, RatFunc(c));
  }
  return t;
}

RatFunc TangentialElement::coeff(const Word& w) const {
  auto it = t_.find(w);
  return it == t_.end() ? RatFunc() : it->second;
}

void TangentialElement::add(const Word& w, const RatFunc& c) {
  if (c.is_zero()) return;
  if (mode_ == TangentialMode::Einstein)
    for (Letter l : w)
      if (l != letters::LAP) throw ContextMismatch("Einstein tangential element with letter " + Alphabet::name(l));
  auto [it, fresh] = t_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

TangentialElement TangentialElement::operator-() const {
  TangentialElement r = *this;
  for (auto& [w, c] : r.t_) c = -c;
  return r;
}

TangentialElement& TangentialElement::operator+=(const TangentialElement& o) {
  if (o.mode_ != mode_) throw ContextMismatch("mixing tangential modes");
  for (const auto& [w, c] : o.t_) add(w, c);
  return *this;
}

TangentialElement& TangentialElement::operator-=(const TangentialElement& o) { return *this += -o; }

TangentialElement operator*(const TangentialElement& a, const TangentialElement& b) {
  if (a.mode_ != b.mode_) throw ContextMismatch("mixing tangential modes");
  TangentialElement r(a.mode_);
  for (const auto& [wa, ca] : a.t_)
    for (const auto& [wb, cb] : b.t_) r.add(wa + wb, ca * cb);
  return r;
}

TangentialElement operator*(const TangentialElement& a, const RatFunc& s) {
  TangentialElement r(a.mode_);
  for (const auto& [w, c] : a.t_) r.add(w, c * s);
  return r;
}

TangentialElement TangentialElement::map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const {
  TangentialElement r(mode_);
  for (const auto& [w, c] : t_) r.add(w, f(c));
  return r;
}

TangentialElement TangentialElement::evaluated(const Rational& lam) const {
  return map_coeffs([&](const RatFunc& c) { return RatFunc(c.eval(lam)); });
}

TangentialElement TangentialElement::reduce_einstein(const Rational& n, const Rational& mu) const {
  if (mode_ == TangentialMode::Einstein) return *this;
  TangentialElement out(TangentialMode::Einstein);
  for (const auto& [w, c] : t_) {
    // Each letter becomes a polynomial in LAP; multiply them out.
    TangentialElement acc = scalar(TangentialMode::Einstein, c);
    for (Letter l : w) {
      TangentialElement f(TangentialMode::Einstein);
      switch (l) {
        case letters::LAP: f = lap_power(TangentialMode::Einstein, 1); break;
        case letters::MULT_J: f = scalar(TangentialMode::Einstein, RatFunc(n * mu)); break;
        case letters::MULT_Psq: f = scalar(TangentialMode::Einstein, RatFunc(n * mu * mu)); break;
        case letters::MULT_DJ: break;
        case letters::DPD: f = lap_power(TangentialMode::Einstein, 1, RatFunc(Rational(-mu))); break;
        case letters::GJD: break;
        default: throw UnreducibleApplication("no Einstein reduction for letter " + Alphabet::name(l));
      }
      acc = acc * f;
      if (acc.is_zero()) break;
    }
    out += acc;
  }
  return out;
}

ScalarPoly TangentialElement::apply(const ScalarPoly& f, const Rational& n, const Rational& mu) const {
  ScalarPoly out;
  for (const auto& [w, c] : t_) out += apply_word(w, f, mode_, n, mu) * c.constant_value();
  return out;
}

TangentialElement TangentialElement::leibniz_normal() const {
  if (mode_ == TangentialMode::Einstein) return *this;
  auto is_mult = [](Letter l) { return Alphabet::info(l).multiplies.has_value(); };
  TangentialElement done(mode_);
  std::vector<std::pair<Word, RatFunc>> work(t_.begin(), t_.end());
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    bool rewritten = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      Letter a = w[i], b = w[i + 1];
      if (a == letters::LAP && b == letters::MULT_J) {
        Word head = w.substr(0, i), tail = w.substr(i + 2);
        work.emplace_back(head + Word{letters::MULT_J, letters::LAP} + tail, c);
        work.emplace_back(head + Word{letters::MULT_DJ} + tail, c);
        work.emplace_back(head + Word{letters::GJD} + tail, c * RatFunc(2));
        rewritten = true;
        break;
      }
      if (is_mult(a) && is_mult(b) && b < a) {
        std::swap(w[i], w[i + 1]);
        work.emplace_back(w, c);
        rewritten = true;
        break;
      }
    }
    if (!rewritten) done.add(w, c);
  }
  return done;
}

std::string TangentialElement::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : t_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")*" << word_str(w);
    first = false;
  }
  return os.str();
}

namespace {

ScalarPoly apply_letter(Letter l, const ScalarPoly& f, TangentialMode mode) {
  if (f.is_zero()) return f;
  LetterInfo info = Alphabet::info(l);
  if (info.multiplies) return f * ScalarPoly::atom(*info.multiplies);
  ScalarPoly out;
  for (const auto& [e, c] : f.terms()) {
    if (e == AtomExponents{0, 0, 0} && info.kills_constants) continue;
    if (l == letters::LAP && mode == TangentialMode::Free && e == AtomExponents{1, 0, 0}) {
      out += ScalarPoly::atom(Atom::DJ) * c;
      continue;
    }
    throw UnreducibleApplication("no rule for " + info.name + "(" + ScalarPoly::monomial(e, c).str() + ")");
  }
  return out;
}

}  // namespace

ScalarPoly apply_word(const Word& w, const ScalarPoly& f, TangentialMode mode, const Rational&, const Rational&) {
  ScalarPoly cur = f;
  for (auto it = w.rbegin(); it != w.rend(); ++it) cur = apply_letter(*it, cur, mode);
  return cur;
}

}  // namespace shiftop
