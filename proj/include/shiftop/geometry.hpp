#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftop/operator_series.hpp"

namespace shiftop {

enum class Backend { Flat, Einstein, Generic };
const char* backend_name(Backend b);

struct JetExtensionTerm {
  Word word;
  int deriv = 0;
  Rational coeff;
};

// Extra Taylor data for the generic backend: full r^k coefficients of the
// Laplacian of gbar and of v, for k above the built-in order.
struct JetExtension {
  std::map<int, std::vector<JetExtensionTerm>> lap_bar;
  std::map<int, ScalarPoly> v;
  bool empty() const { return lap_bar.empty() && v.empty(); }
};

// Taylor data of gbar = dr^2 + h_r near r = 0.
struct GeometryJets {
  Backend backend = Backend::Flat;
  Context ctx;
  int truncation = 0;    // requested series cut for the Einstein backend
  OperatorSeries lap_h;     // Laplacian of h_r, expanded in r
  OperatorSeries lap_bar;   // Laplacian of gbar
  OperatorSeries lap_gplus; // Laplacian of g+ = r^-2 gbar
  ScalarSeries trace;   // (1/2) tr(h_r^-1 dh_r/dr)
  ScalarSeries v;       // vol(h_r)/vol(h)
  ScalarSeries w;       // sqrt(v)
  ScalarSeries dlogv;   // d_r log v
  ScalarSeries dlogw;   // d_r log w
  std::optional<ScalarSeries> j_bar;  // J of gbar where it is available
  ScalarPoly j_boundary;              // J of h

  const Rational& n() const { return ctx.n; }
  const Rational& mu() const { return ctx.mu; }
  std::string label() const;
  // m such that m - 1 is the critical shift parameter: (n+1)/2
  Rational m() const { return (ctx.n + 1) / 2; }
};

GeometryJets flat_jets(const Rational& n, int truncation);
GeometryJets einstein_jets(const Rational& n, const Rational& mu, int truncation);
GeometryJets generic_jets(const Rational& n, const JetExtension& ext = {});

// Einstein specialisation of a generic jet, truncated to the generic order.
GeometryJets reduce_to_einstein(const GeometryJets& generic, const Rational& mu);

}  // namespace shiftop
