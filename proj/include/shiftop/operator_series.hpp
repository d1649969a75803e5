#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "shiftop/order.hpp"
#include "shiftop/scalar_series.hpp"
#include "shiftop/tangential.hpp"

namespace shiftop {

struct TruncationInsufficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything an operator needs to know about where it lives.
struct Context {
  Rational n;
  TangentialMode mode = TangentialMode::Free;
  Rational mu;  // only meaningful in Einstein mode
  friend bool operator==(const Context& a, const Context& b) {
    return a.n == b.n && a.mode == b.mode && (a.mode == TangentialMode::Free || a.mu == b.mu);
  }
  friend bool operator!=(const Context& a, const Context& b) { return !(a == b); }
};

// Normal-ordered monomial r^exp d_r^deriv word. Tangential words commute with
// r and d_r, so their position is immaterial.
struct TermKey {
  Rational exp;
  int deriv = 0;
  Word word;
  Rational weight() const { return exp - deriv; }
  friend bool operator<(const TermKey& a, const TermKey& b);
  friend bool operator==(const TermKey& a, const TermKey& b) {
    return a.deriv == b.deriv && a.exp == b.exp && a.word == b.word;
  }
};

class BoundaryOperator;

// Truncated element of the algebra generated by r^a, d_r and tangential words,
// with coefficients in Q(lambda).
//
// Truncation is tracked through the weight exp - deriv, which is additive
// under composition and unchanged by normal ordering or conjugation by powers
// of r. Every unknown term has weight >= order() (hence exponent >= order())
// and d_r-degree <= tail_deriv(); stored terms all have weight < order().
class OperatorSeries {
 public:
  using Terms = std::map<TermKey, RatFunc>;

  OperatorSeries() : OperatorSeries(Context{}) {}
  explicit OperatorSeries(Context ctx, Order order = Order::infinite()) : ctx_(std::move(ctx)), order_(std::move(order)) {}
  static OperatorSeries identity(const Context& ctx);
  static OperatorSeries r_power(const Context& ctx, const Rational& a, const RatFunc& c = RatFunc(1));
  static OperatorSeries d_r(const Context& ctx, int b = 1);
  static OperatorSeries tangential(const Context& ctx, const TangentialElement& t);
  static OperatorSeries multiplication(const Context& ctx, const ScalarSeries& s);

  const Context& context() const { return ctx_; }
  const Terms& terms() const { return t_; }
  const Order& order() const { return order_; }
  int tail_deriv() const { return tail_deriv_; }
  bool is_zero() const { return t_.empty(); }
  bool is_exact() const { return order_.is_infinite(); }

  void add(const TermKey& k, const RatFunc& c);
  void add(const Rational& exp, int deriv, const Word& w, const RatFunc& c) { add(TermKey{exp, deriv, w}, c); }
  RatFunc coeff(const TermKey& k) const;
  TangentialElement coefficient(const Rational& exp, int deriv) const;

  Order min_weight() const;  // infinite for the zero series
  std::optional<Rational> min_exponent() const;
  int max_deriv() const;

  OperatorSeries operator-() const;
  friend OperatorSeries operator+(const OperatorSeries& a, const OperatorSeries& b);
  friend OperatorSeries operator-(const OperatorSeries& a, const OperatorSeries& b) { return a + (-b); }
  friend OperatorSeries operator*(const OperatorSeries& a, const OperatorSeries& b);  // composition
  friend OperatorSeries operator*(const OperatorSeries& a, const RatFunc& s);
  friend OperatorSeries operator*(const RatFunc& s, const OperatorSeries& a) { return a * s; }

  OperatorSeries truncated(const Order& order) const;
  OperatorSeries r_left(const Rational& c) const;                 // r^c o E
  OperatorSeries r_right(const Rational& c) const;                // E o r^c
  OperatorSeries conjugate_by_power(const Rational& alpha) const;  // r^-alpha o E o r^alpha

  OperatorSeries map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const;
  OperatorSeries evaluated(const Rational& lam) const;
  OperatorSeries substitute(const Rational& slope, const Rational& offset) const;  // lam -> slope*lam + offset
  OperatorSeries lambda_diff(int k = 1) const;  // needs polynomial coefficients
  OperatorSeries reduce_einstein(const Rational& mu) const;
  OperatorSeries leibniz_normal() const;  // see TangentialElement::leibniz_normal

  // Keeps the exponent-0 part; TruncationInsufficient if the tail could reach it.
  BoundaryOperator restrict_boundary() const;
  // Needs lambda-free coefficients.
  ScalarSeries apply(const ScalarSeries& f) const;

  std::string serialize() const;  // one normal-ordered term per line

 private:
  Context ctx_;
  Terms t_;
  Order order_;
  int tail_deriv_ = 0;
};

struct Comparison {
  bool equal = true;
  Order compared;  // weights below this were compared
  OperatorSeries difference;
};

// Compares all coefficients of weight below min(limit, a.order(), b.order()).
// With `leibniz`, free-mode words are compared modulo the product rule.
Comparison equal_to_order(const OperatorSeries& a, const OperatorSeries& b, const Order& limit = Order::infinite(),
                          bool leibniz = false);

// Caller-supplied adjoints for letters the alphabet does not know how to adjoin.
using AdjointRules = std::map<Letter, TangentialElement>;

// Formal adjoint for the measure v dr dvol(h): v^-1 o E^dagger o v.
OperatorSeries adjoint(const OperatorSeries& e, const ScalarSeries& v, const Rational& cap,
                       const AdjointRules& rules = {});
TangentialElement adjoint(const TangentialElement& t, const AdjointRules& rules = {});

// iota^* o sum c d_r^b word.
class BoundaryOperator {
 public:
  using Key = std::pair<int, Word>;
  using Terms = std::map<Key, RatFunc>;

  BoundaryOperator() : BoundaryOperator(Context{}) {}
  explicit BoundaryOperator(Context ctx) : ctx_(std::move(ctx)) {}
  static BoundaryOperator derivative(const Context& ctx, int b, const RatFunc& c = RatFunc(1));

  const Context& context() const { return ctx_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add(int deriv, const Word& w, const RatFunc& c);
  TangentialElement coefficient(int deriv) const;
  int max_deriv() const;

  BoundaryOperator operator-() const;
  friend BoundaryOperator operator+(const BoundaryOperator& a, const BoundaryOperator& b);
  friend BoundaryOperator operator-(const BoundaryOperator& a, const BoundaryOperator& b) { return a + (-b); }
  friend BoundaryOperator operator*(const BoundaryOperator& a, const RatFunc& s);
  friend BoundaryOperator operator*(const TangentialElement& t, const BoundaryOperator& a);
  friend BoundaryOperator operator*(const BoundaryOperator& a, const OperatorSeries& e);
  friend bool operator==(const BoundaryOperator& a, const BoundaryOperator& b) {
    return a.ctx_ == b.ctx_ && a.t_ == b.t_;
  }
  friend bool operator!=(const BoundaryOperator& a, const BoundaryOperator& b) { return !(a == b); }

  OperatorSeries lift() const;  // the same sum, as an operator series with exponent 0
  BoundaryOperator map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const;
  BoundaryOperator evaluated(const Rational& lam) const;
  BoundaryOperator substitute(const Rational& slope, const Rational& offset) const;
  BoundaryOperator divide_exact(const Poly& d) const;  // NonCancellingPole
  int lambda_degree() const;
  BoundaryOperator lambda_coefficient(int k) const;  // needs polynomial coefficients
  BoundaryOperator reduce_einstein(const Rational& mu) const;
  BoundaryOperator leibniz_normal() const;
  // iota^* (sum c d_r^b word)(f); coefficients must be lambda-free.
  ScalarPoly apply(const ScalarSeries& f) const;

  std::string str() const;

 private:
  Context ctx_;
  Terms t_;
};

}  // namespace shiftop
