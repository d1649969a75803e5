#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shiftop/ratfunc.hpp"
#include "shiftop/scalar_poly.hpp"

namespace shiftop {

struct UnreducibleApplication : std::domain_error {
  using std::domain_error::domain_error;
};
struct AdjointRuleUnavailable : std::domain_error {
  using std::domain_error::domain_error;
};
struct ContextMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

// Letters of the tangential alphabet. The first six are built in; further
// letters can be registered from jet extension files.
using Letter = char16_t;
namespace letters {
inline constexpr Letter LAP = 0;       // Laplacian of h
inline constexpr Letter MULT_J = 1;    // multiplication by J
inline constexpr Letter MULT_Psq = 2;  // multiplication by |P|^2
inline constexpr Letter MULT_DJ = 3;   // multiplication by Delta J
inline constexpr Letter DPD = 4;       // f -> delta(P # df)
inline constexpr Letter GJD = 5;       // f -> (dJ, df)
inline constexpr Letter kBuiltinCount = 6;
}  // namespace letters

enum class AdjointKind { SelfAdjoint, Unavailable };

struct LetterInfo {
  std::string name;
  AdjointKind adjoint = AdjointKind::Unavailable;
  bool kills_constants = false;           // letter(1) = 0
  std::optional<Atom> multiplies;         // multiplication by an atom
};

// Process-wide, append-only alphabet.
class Alphabet {
 public:
  static Letter intern(std::string_view name);  // registers with default info if new
  static std::optional<Letter> find(std::string_view name);
  static void declare(std::string_view name, AdjointKind adjoint, bool kills_constants);
  static LetterInfo info(Letter l);
  static std::string name(Letter l);
};

using Word = std::u16string;
std::string word_str(const Word& w);

// Free keeps words apart; Einstein only ever holds powers of LAP.
enum class TangentialMode { Free, Einstein };
const char* mode_name(TangentialMode m);

// Linear combination of tangential words with coefficients in Q(lambda).
class TangentialElement {
 public:
  using Terms = std::map<Word, RatFunc>;

  explicit TangentialElement(TangentialMode mode = TangentialMode::Free) : mode_(mode) {}
  static TangentialElement word(TangentialMode mode, const Word& w, const RatFunc& c = RatFunc(1));
  static TangentialElement scalar(TangentialMode mode, const RatFunc& c);
  static TangentialElement lap_power(TangentialMode mode, int k, const RatFunc& c = RatFunc(1));
  // Multiplication operator by a scalar polynomial (free) or its Einstein value.
  static TangentialElement multiplication(TangentialMode mode, const ScalarPoly& p, const Rational& n,
                                          const Rational& mu);

  TangentialMode mode() const { return mode_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  RatFunc coeff(const Word& w) const;
  void add(const Word& w, const RatFunc& c);

  TangentialElement operator-() const;
  TangentialElement& operator+=(const TangentialElement& o);
  TangentialElement& operator-=(const TangentialElement& o);
  friend TangentialElement operator+(TangentialElement a, const TangentialElement& b) { return a += b; }
  friend TangentialElement operator-(TangentialElement a, const TangentialElement& b) { return a -= b; }
  friend TangentialElement operator*(const TangentialElement& a, const TangentialElement& b);
  friend TangentialElement operator*(const TangentialElement& a, const RatFunc& s);
  friend bool operator==(const TangentialElement& a, const TangentialElement& b) {
    return a.mode_ == b.mode_ && a.t_ == b.t_;
  }

  TangentialElement map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const;
  TangentialElement evaluated(const Rational& lam) const;
  // Einstein specialisation: J -> n mu, |P|^2 -> n mu^2, Delta J -> 0,
  // delta(P # d) -> -mu LAP, (dJ, d) -> 0.
  TangentialElement reduce_einstein(const Rational& n, const Rational& mu) const;
  // Apply to a scalar polynomial (coefficients must be constants).
  ScalarPoly apply(const ScalarPoly& f, const Rational& n, const Rational& mu) const;
  // Rewrites with the product rule LAP.MULT_J = MULT_J.LAP + MULT_DJ + 2 GJD and
  // lets multiplication letters commute. Stored words are never rewritten;
  // this is only used to compare free-mode results.
  TangentialElement leibniz_normal() const;
  std::string str() const;

 private:
  TangentialMode mode_;
  Terms t_;
};

// Scalar application rules: LAP(const) = 0, LAP(J) = DJ, letters that kill
// constants, and multiplication by atoms. Anything else throws.
ScalarPoly apply_word(const Word& w, const ScalarPoly& f, TangentialMode mode, const Rational& n,
                      const Rational& mu);

}  // namespace shiftop
