#pragma once

#include <string>
#include <vector>

#include "builder.hpp"

namespace shiftop::verify {

inline RatFunc L() { return RatFunc::lambda(); }
inline RatFunc R(const Rational& q) { return RatFunc(q); }

// One point of the geometry grid; jets are created lazily inside the check.
struct Geo {
  Backend backend;
  Rational n, mu;

  JetsPtr jets(Workspace& ws, int K) const {
    switch (backend) {
      case Backend::Flat:
        return ws.flat(n, K);
      case Backend::Einstein:
        return ws.einstein(n, mu, K);
      case Backend::Generic:
        break;
    }
    return ws.generic(n);
  }
  bool generic() const { return backend == Backend::Generic; }
  Params params() const {
    Params p{{"geom", backend_name(backend)}, {"n", to_string(n)}};
    if (backend == Backend::Einstein) p.emplace_back("mu", to_string(mu));
    return p;
  }
};

// Einstein grid (mu = 0 is the flat backend).
inline std::vector<Geo> einstein_grid(const SuiteConfig& cfg, bool with_flat = true) {
  std::vector<Geo> out;
  for (const auto& n : cfg.ns)
    for (const auto& mu : cfg.mus) {
      if (mu == 0 && !with_flat) continue;
      out.push_back(Geo{mu == 0 ? Backend::Flat : Backend::Einstein, n, mu});
    }
  return out;
}

inline std::vector<Geo> generic_grid(const SuiteConfig& cfg) {
  std::vector<Geo> out;
  for (const auto& n : cfg.ns) out.push_back(Geo{Backend::Generic, n, Rational(0)});
  return out;
}

inline std::vector<Geo> all_grid(const SuiteConfig& cfg) {
  auto out = einstein_grid(cfg);
  for (auto& g : generic_grid(cfg)) out.push_back(g);
  return out;
}

inline Params with(Params p, const std::string& k, const std::string& v) {
  p.emplace_back(k, v);
  return p;
}
inline Params with(Params p, const std::string& k, int v) { return with(std::move(p), k, std::to_string(v)); }

// Critical-case strictness: for even n only 2N <= n is checked.
inline bool even_excluded(const Rational& n, int N) { return is_integer(n) && to_long(n) % 2 == 0 && 2 * N > n; }
inline std::string even_reason(const Rational& n, int N) {
  return "even n = " + to_string(n) + " with 2N = " + std::to_string(2 * N) + " > n";
}

// K versus K+2: coefficients below the first guaranteed order must agree, and
// the order must not shrink.
inline Outcome stable(const OperatorSeries& a, const OperatorSeries& b) {
  if (b.order() < a.order())
    return Outcome::fail("order decreased from " + a.order().str() + " to " + b.order().str());
  Outcome o = compare(a, b, a.order(), false, Order(Rational(1)));
  o.details.emplace_back("order_K", a.order().str());
  o.details.emplace_back("order_K+2", b.order().str());
  return o;
}

}  // namespace shiftop::verify
