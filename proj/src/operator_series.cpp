#include "shiftop/operator_series.hpp"

#include <sstream>

namespace shiftop {

bool operator<(const TermKey& a, const TermKey& b) {
  int c = cmp(a.exp, b.exp);
  if (c != 0) return c < 0;
  if (a.deriv != b.deriv) return a.deriv < b.deriv;
  return a.word < b.word;
}

namespace {

void require_same(const Context& a, const Context& b) {
  if (a != b) throw ContextMismatch("operators from different evaluation contexts");
}

Order weight_order(const OperatorSeries& e) { return e.min_weight(); }

}  // namespace

OperatorSeries OperatorSeries::identity(const Context& ctx) { return r_power(ctx, Rational(0)); }

OperatorSeries OperatorSeries::r_power(const Context& ctx, const Rational& a, const RatFunc& c) {
  OperatorSeries e(ctx);
  e.add(a, 0, Word(), c);
  return e;
}

OperatorSeries OperatorSeries::d_r(const Context& ctx, int b) {
  OperatorSeries e(ctx);
  e.add(Rational(0), b, Word(), RatFunc(1));
  return e;
}

OperatorSeries OperatorSeries::tangential(const Context& ctx, const TangentialElement& t) {
  if (t.mode() != ctx.mode) throw ContextMismatch("tangential element in the wrong mode");
  OperatorSeries e(ctx);
  for (const auto& [w, c] : t.terms()) e.add(Rational(0), 0, w, c);
  return e;
}

OperatorSeries OperatorSeries::multiplication(const Context& ctx, const ScalarSeries& s) {
  OperatorSeries e(ctx, s.order());
  for (const auto& [a, p] : s.terms()) {
    TangentialElement t = TangentialElement::multiplication(ctx.mode, p, ctx.n, ctx.mu);
    for (const auto& [w, c] : t.terms()) e.add(a, 0, w, c);
  }
  return e;
}

void OperatorSeries::add(const TermKey& k, const RatFunc& c) {
  if (c.is_zero() || !order_.covers(k.weight())) return;
  if (ctx_.mode == TangentialMode::Einstein)
    for (Letter l : k.word)
      if (l != letters::LAP) throw ContextMismatch("Einstein operator with letter " + Alphabet::name(l));
  auto [it, fresh] = t_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

RatFunc OperatorSeries::coeff(const TermKey& k) const {
  auto it = t_.find(k);
  return it == t_.end() ? RatFunc() : it->second;
}

TangentialElement OperatorSeries::coefficient(const Rational& exp, int deriv) const {
  TangentialElement t(ctx_.mode);
  for (const auto& [k, c] : t_)
    if (k.deriv == deriv && k.exp == exp) t.add(k.word, c);
  return t;
}

Order OperatorSeries::min_weight() const {
  Order m = Order::infinite();
  for (const auto& [k, c] : t_) m = min(m, Order(k.weight()));
  return m;
}

std::optional<Rational> OperatorSeries::min_exponent() const {
  if (t_.empty()) return std::nullopt;
  return t_.begin()->first.exp;
}

int OperatorSeries::max_deriv() const {
  int m = 0;
  for (const auto& [k, c] : t_) m = std::max(m, k.deriv);
  return m;
}

OperatorSeries OperatorSeries::operator-() const {
  OperatorSeries r = *this;
  for (auto& [k, c] : r.t_) c = -c;
  return r;
}

OperatorSeries operator+(const OperatorSeries& a, const OperatorSeries& b) {
  require_same(a.ctx_, b.ctx_);
  OperatorSeries out(a.ctx_, min(a.order_, b.order_));
  out.tail_deriv_ = std::max(a.is_exact() ? 0 : a.tail_deriv_, b.is_exact() ? 0 : b.tail_deriv_);
  for (const auto& [k, c] : a.t_) out.add(k, c);
  for (const auto& [k, c] : b.t_) out.add(k, c);
  return out;
}

OperatorSeries operator*(const OperatorSeries& a, const OperatorSeries& b) {
  require_same(a.ctx_, b.ctx_);
  Order wa = weight_order(a), wb = weight_order(b);
  Order o = min(min(wa + b.order_, a.order_ + wb), a.order_ + b.order_);
  OperatorSeries out(a.ctx_, o);
  int td = 0;
  if (!b.is_exact()) td = std::max(td, a.max_deriv() + b.tail_deriv_);
  if (!a.is_exact()) td = std::max(td, a.tail_deriv_ + b.max_deriv() + (b.is_exact() ? 0 : b.tail_deriv_));
  out.tail_deriv_ = td;
  for (const auto& [ka, ca] : a.t_) {
    Rational weight_a = ka.weight();
    for (const auto& [kb, cb] : b.t_) {
      if (!o.covers(weight_a + kb.weight())) continue;
      RatFunc prod = ca * cb;
      Word w = ka.word + kb.word;
      // d_r^b1 o r^a2 = sum_k C(b1,k) a2(a2-1)...(a2-k+1) r^(a2-k) d_r^(b1-k)
      Rational f(1);
      for (int k = 0; k <= ka.deriv; ++k) {
        if (k > 0) f = f * ratio(ka.deriv - k + 1, k) * (kb.exp - (k - 1));
        if (f == 0) break;
        out.add(TermKey{ka.exp + kb.exp - k, ka.deriv + kb.deriv - k, w}, prod * RatFunc(f));
      }
    }
  }
  return out;
}

OperatorSeries operator*(const OperatorSeries& a, const RatFunc& s) {
  OperatorSeries out(a.ctx_, a.order_);
  out.tail_deriv_ = a.tail_deriv_;
  for (const auto& [k, c] : a.t_) out.add(k, c * s);
  return out;
}

OperatorSeries OperatorSeries::truncated(const Order& order) const {
  OperatorSeries out(ctx_, min(order_, order));
  out.tail_deriv_ = tail_deriv_;
  for (const auto& [k, c] : t_) {
    if (!out.order_.covers(k.weight())) out.tail_deriv_ = std::max(out.tail_deriv_, k.deriv);
    out.add(k, c);
  }
  return out;
}

OperatorSeries OperatorSeries::r_left(const Rational& c) const {
  OperatorSeries out(ctx_, order_.is_infinite() ? order_ : Order(order_.value() + c));
  out.tail_deriv_ = tail_deriv_;
  for (const auto& [k, v] : t_) out.add(TermKey{k.exp + c, k.deriv, k.word}, v);
  return out;
}

OperatorSeries OperatorSeries::r_right(const Rational& c) const { return *this * r_power(ctx_, c); }

OperatorSeries OperatorSeries::conjugate_by_power(const Rational& alpha) const {
  OperatorSeries out(ctx_, order_);
  out.tail_deriv_ = tail_deriv_;
  for (const auto& [k, c] : t_) {
    Rational f(1);
    for (int j = 0; j <= k.deriv; ++j) {
      if (j > 0) f = f * ratio(k.deriv - j + 1, j) * (alpha - (j - 1));
      if (f == 0) break;
      out.add(TermKey{k.exp - j, k.deriv - j, k.word}, c * RatFunc(f));
    }
  }
  return out;
}

OperatorSeries OperatorSeries::map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const {
  OperatorSeries out(ctx_, order_);
  out.tail_deriv_ = tail_deriv_;
  for (const auto& [k, c] : t_) out.add(k, f(c));
  return out;
}

OperatorSeries OperatorSeries::evaluated(const Rational& lam) const {
  return map_coeffs([&](const RatFunc& c) { return RatFunc(c.eval(lam)); });
}

OperatorSeries OperatorSeries::substitute(const Rational& slope, const Rational& offset) const {
  return map_coeffs([&](const RatFunc& c) { return c.substitute_affine(slope, offset); });
}

OperatorSeries OperatorSeries::lambda_diff(int k) const {
  return map_coeffs([&](const RatFunc& c) {
    if (!c.is_polynomial()) throw std::domain_error("lambda derivative of a non-polynomial coefficient " + c.str());
    RatFunc d = c;
    for (int i = 0; i < k; ++i) d = d.derivative();
    return d;
  });
}

OperatorSeries OperatorSeries::reduce_einstein(const Rational& mu) const {
  Context ectx{ctx_.n, TangentialMode::Einstein, mu};
  OperatorSeries out(ectx, order_);
  out.tail_deriv_ = tail_deriv_;
  for (const auto& [k, c] : t_) {
    TangentialElement t = TangentialElement::word(ctx_.mode, k.word, c).reduce_einstein(ctx_.n, mu);
    for (const auto& [w, v] : t.terms()) out.add(TermKey{k.exp, k.deriv, w}, v);
  }
  return out;
}

OperatorSeries OperatorSeries::leibniz_normal() const {
  if (ctx_.mode == TangentialMode::Einstein) return *this;
  OperatorSeries out(ctx_, order_);
  out.tail_deriv_ = tail_deriv_;
  for (const auto& [k, c] : t_) {
    TangentialElement t = TangentialElement::word(ctx_.mode, k.word, c).leibniz_normal();
    for (const auto& [w, v] : t.terms()) out.add(TermKey{k.exp, k.deriv, w}, v);
  }
  return out;
}

BoundaryOperator OperatorSeries::restrict_boundary() const {
  if (!order_.is_infinite() && order_.value() <= 0)
    throw TruncationInsufficient("tail of weight >= " + order_.str() + " may reach the boundary");
  BoundaryOperator b(ctx_);
  for (const auto& [k, c] : t_) {
    if (k.exp < 0) throw std::domain_error("restriction of a term singular at r = 0: r^" + k.exp.get_str());
    if (k.exp == 0) b.add(k.deriv, k.word, c);
  }
  return b;
}

ScalarSeries OperatorSeries::apply(const ScalarSeries& f) const {
  Order o = min(weight_order(*this) + f.order(), order_ + f.order());
  if (auto m = f.min_exponent()) o = min(o, order_ + Order(*m));
  ScalarSeries out(o);
  for (const auto& [k, c] : t_) {
    Rational cv = c.constant_value();
    for (const auto& [e, p] : f.terms()) {
      Rational ff = falling(e, static_cast<unsigned>(k.deriv));
      if (ff == 0) continue;
      ScalarPoly applied = apply_word(k.word, p, ctx_.mode, ctx_.n, ctx_.mu);
      out.add(e + k.weight(), applied * (cv * ff));
    }
  }
  return out;
}

std::string OperatorSeries::serialize() const {
  std::ostringstream os;
  for (const auto& [k, c] : t_) os << c.str() << "\t" << k.exp.get_str() << "\t" << k.deriv << "\t" << word_str(k.word) << "\n";
  os << "# order " << order_.str() << "\n";
  return os.str();
}

Comparison equal_to_order(const OperatorSeries& a, const OperatorSeries& b, const Order& limit, bool leibniz) {
  Order o = min(min(a.order(), b.order()), limit);
  OperatorSeries d = (a - b).truncated(o);
  if (leibniz) d = d.leibniz_normal();
  return Comparison{d.is_zero(), o, d};
}

TangentialElement adjoint(const TangentialElement& t, const AdjointRules& rules) {
  TangentialElement out(t.mode());
  for (const auto& [w, c] : t.terms()) {
    TangentialElement acc = TangentialElement::scalar(t.mode(), c);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      auto rule = rules.find(*it);
      if (rule != rules.end()) {
        acc = acc * rule->second;
        continue;
      }
      if (Alphabet::info(*it).adjoint != AdjointKind::SelfAdjoint)
        throw AdjointRuleUnavailable("no adjoint rule for " + Alphabet::name(*it));
      acc = acc * TangentialElement::word(t.mode(), Word(1, *it));
    }
    out += acc;
  }
  return out;
}

OperatorSeries adjoint(const OperatorSeries& e, const ScalarSeries& v, const Rational& cap, const AdjointRules& rules) {
  const Context& ctx = e.context();
  // dagger for dr dvol(h): (c r^a d^b w)^dagger = w^* (-d)^b r^a c
  OperatorSeries dagger(ctx, e.order());
  for (const auto& [k, c] : e.terms()) {
    TangentialElement ws = adjoint(TangentialElement::word(ctx.mode, k.word, c), rules);
    OperatorSeries term = OperatorSeries::tangential(ctx, ws) * OperatorSeries::d_r(ctx, k.deriv) *
                          OperatorSeries::r_power(ctx, k.exp, RatFunc(k.deriv % 2 ? -1 : 1));
    dagger = dagger + term;
  }
  OperatorSeries vop = OperatorSeries::multiplication(ctx, v.truncated(Order(cap)));
  OperatorSeries vinv = OperatorSeries::multiplication(ctx, v.reciprocal(cap));
  OperatorSeries out = vinv * dagger * vop;
  if (!e.is_exact()) out = out.truncated(e.order());
  return out;
}

BoundaryOperator BoundaryOperator::derivative(const Context& ctx, int b, const RatFunc& c) {
  BoundaryOperator d(ctx);
  d.add(b, Word(), c);
  return d;
}

void BoundaryOperator::add(int deriv, const Word& w, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(Key{deriv, w}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

TangentialElement BoundaryOperator::coefficient(int deriv) const {
  TangentialElement t(ctx_.mode);
  for (const auto& [k, c] : t_)
    if (k.first == deriv) t.add(k.second, c);
  return t;
}

int BoundaryOperator::max_deriv() const {
  int m = 0;
  for (const auto& [k, c] : t_) m = std::max(m, k.first);
  return m;
}

BoundaryOperator BoundaryOperator::operator-() const {
  BoundaryOperator r = *this;
  for (auto& [k, c] : r.t_) c = -c;
  return r;
}

BoundaryOperator operator+(const BoundaryOperator& a, const BoundaryOperator& b) {
  require_same(a.ctx_, b.ctx_);
  BoundaryOperator out = a;
  for (const auto& [k, c] : b.t_) out.add(k.first, k.second, c);
  return out;
}

BoundaryOperator operator*(const BoundaryOperator& a, const RatFunc& s) {
  BoundaryOperator out(a.ctx_);
  for (const auto& [k, c] : a.t_) out.add(k.first, k.second, c * s);
  return out;
}

BoundaryOperator operator*(const TangentialElement& t, const BoundaryOperator& a) {
  if (t.mode() != a.ctx_.mode) throw ContextMismatch("tangential element in the wrong mode");
  BoundaryOperator out(a.ctx_);
  for (const auto& [w, c] : t.terms())
    for (const auto& [k, v] : a.t_) out.add(k.first, w + k.second, c * v);
  return out;
}

BoundaryOperator operator*(const BoundaryOperator& a, const OperatorSeries& e) {
  return (a.lift() * e).restrict_boundary();
}

OperatorSeries BoundaryOperator::lift() const {
  OperatorSeries e(ctx_);
  for (const auto& [k, c] : t_) e.add(Rational(0), k.first, k.second, c);
  return e;
}

BoundaryOperator BoundaryOperator::map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const {
  BoundaryOperator out(ctx_);
  for (const auto& [k, c] : t_) out.add(k.first, k.second, f(c));
  return out;
}

BoundaryOperator BoundaryOperator::evaluated(const Rational& lam) const {
  return map_coeffs([&](const RatFunc& c) { return RatFunc(c.eval(lam)); });
}

BoundaryOperator BoundaryOperator::substitute(const Rational& slope, const Rational& offset) const {
  return map_coeffs([&](const RatFunc& c) { return c.substitute_affine(slope, offset); });
}

BoundaryOperator BoundaryOperator::divide_exact(const Poly& d) const {
  return map_coeffs([&](const RatFunc& c) { return RatFunc(c.divide_exact(d)); });
}

int BoundaryOperator::lambda_degree() const {
  int deg = -1;
  for (const auto& [k, c] : t_) {
    if (!c.is_polynomial()) throw std::domain_error("non-polynomial coefficient " + c.str());
    deg = std::max(deg, c.num().degree());
  }
  return deg;
}

BoundaryOperator BoundaryOperator::lambda_coefficient(int k) const {
  return map_coeffs([&](const RatFunc& c) {
    if (!c.is_polynomial()) throw std::domain_error("non-polynomial coefficient " + c.str());
    return RatFunc(c.num().coeff(k));
  });
}

BoundaryOperator BoundaryOperator::reduce_einstein(const Rational& mu) const {
  return lift().reduce_einstein(mu).restrict_boundary();
}

BoundaryOperator BoundaryOperator::leibniz_normal() const { return lift().leibniz_normal().restrict_boundary(); }

ScalarPoly BoundaryOperator::apply(const ScalarSeries& f) const {
  if (!t_.empty() && !f.order().covers(Rational(max_deriv())))
    throw TruncationInsufficient("function known only below r^" + f.order().str());
  ScalarPoly out;
  for (const auto& [k, c] : t_) {
    ScalarPoly fb = f.coeff(Rational(k.first));
    if (fb.is_zero()) continue;
    out += apply_word(k.second, fb, ctx_.mode, ctx_.n, ctx_.mu) * (c.constant_value() * factorial(k.first));
  }
  return out;
}

std::string BoundaryOperator::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")*" << word_str(k.second) << "*i*d^" << k.first;
    first = false;
  }
  return os.str();
}

}  // namespace shiftop
