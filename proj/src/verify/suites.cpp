#include <algorithm>
#include <stdexcept>

#include "builder.hpp"

namespace shiftop::verify {

const std::vector<std::pair<std::string, std::string>>& anchor_table() {
  static const std::vector<std::pair<std::string, std::string>> t{
      {"weyl.heisenberg", "normal-order/heisenberg"},
      {"weyl.normal-order-examples", "normal-order/examples"},
      {"weyl.associativity", "normal-order/associativity"},
      {"weyl.jets-laplacian", "jets/laplacian-consistency"},
      {"weyl.jets-volume", "jets/volume-series"},
      {"weyl.jets-jbar", "jets/j-bar-from-shift"},
      {"weyl.jets-generic-einstein", "jets/generic-einstein-agreement"},
      {"weyl.flat-shift", "flat/shift-operator"},
      {"weyl.shift-examples", "shift/definition-examples"},
      {"weyl.sl2", "shift/sl2-commutation"},
      {"weyl.comm-shift", "shift/iterated-commutation-r"},
      {"weyl.binomial-commutation", "shift/binomial-commutation"},
      {"weyl.conjugation-form", "shift/conjugation-form"},
      {"weyl.adjoint", "shift/formal-adjoint"},
      {"weyl.adjoint-gate", "shift/adjoint-rule-gate"},
      {"weyl.leading-lambda", "shift/leading-lambda-coefficient"},
      {"weyl.degenerate-laplacian", "shift/degenerate-laplacian"},
      {"weyl.order-stability", "meta/order-stability"},
      {"delta.restriction", "restriction/delta-N"},
      {"factorization.ladder", "residue-family/ladder"},
      {"factorization.gjms-split", "curved-shift/gjms-factorisation"},
      {"factorization.residue-factor", "residue-family/gjms-factor"},
      {"factorization.second-np", "residue-family/gjms-bar-factor"},
      {"factorization.leading", "residue-family/leading-coefficient"},
      {"factorization.order-stability", "meta/order-stability"},
      {"tangential.gjms", "tangential/gjms-boundary"},
      {"tangential.interpolation", "tangential/gjms-bar"},
      {"tangential.odd-vanish", "tangential/odd-vanishing"},
      {"tangential.odd-interpolation", "tangential/odd-gjms-bar"},
      {"tangential.generic", "tangential/gjms-generic"},
      {"tangential.order-stability", "meta/order-stability"},
      {"bigGJMS.cross-route", "curved-shift/big-gjms"},
      {"bigGJMS.yamabe", "gjms-bar/yamabe"},
      {"bigGJMS.flat", "gjms-bar/flat-powers"},
      {"bigGJMS.order-stability", "meta/order-stability"},
      {"q-holo.generic", "q-curvature/holographic"},
      {"q-holo.einstein", "q-curvature/einstein-consistency"},
      {"q-holo.vanish", "residue-family/vanishing-on-constants"},
      {"q-holo.order-stability", "meta/order-stability"},
      {"solution-ops.generic-closed-form", "solution-operators/closed-forms"},
      {"solution-ops.einstein-closed-form", "solution-operators/einstein-reduction"},
      {"solution-ops.residue", "solution-operators/residues"},
      {"solution-ops.gjms-recursion", "solution-operators/gjms-recursion"},
      {"solution-ops.order-stability", "meta/order-stability"},
      {"building-blocks.sphere", "building-blocks/sphere-closed-form"},
      {"building-blocks.commutator", "building-blocks/commutator"},
      {"building-blocks.flat", "building-blocks/flat"},
      {"building-blocks.order-stability", "meta/order-stability"},
      {"holo-laplacian.routes", "holographic-laplacian/exponential"},
      {"holo-laplacian.r-ad", "holographic-laplacian/first-step"},
      {"holo-laplacian.order-stability", "meta/order-stability"},
      {"numeric-flat.kernel-fd", "kernels/closed-form-derivatives"},
      {"numeric-flat.kernel-trivial", "kernels/degenerate-parameters"},
      {"numeric-flat.kernel-shift", "flat/kernel-shift"},
      {"numeric-flat.poisson-eigen", "hyperbolic/poisson-eigenfunction"},
      {"numeric-flat.hyperbolic-shift", "hyperbolic/eigenfunction-shift"},
      {"numeric-flat.mult-shift", "hyperbolic/multiplication-shift"},
      {"numeric-flat.equivariance", "flat/intertwining"},
      {"numeric-flat.gamma", "numerics/gamma"},
      {"numeric-flat.bridge", "flat/symbolic-numeric-bridge"},
      {"numeric-scattering.residue", "cylinder/scattering-residues"},
      {"exploratory.leading-r-coefficient", "open/leading-r-coefficient"},
  };
  return t;
}

const std::string& anchor_of(const std::string& family) {
  for (const auto& [f, a] : anchor_table())
    if (f == family) return a;
  throw std::logic_error("no anchor for check family " + family);
}

void Builder::add(const std::string& family, const Params& params, std::function<Outcome()> fn, bool gating) {
  std::string id = family;
  for (const auto& [k, v] : params) id += "/" + k + "=" + v;
  std::string suite = family.substr(0, family.find('.'));
  checks.push_back(CheckSpec{id, suite, anchor_of(family), params, gating, std::move(fn)});
}

Outcome compare(const OperatorSeries& a, const OperatorSeries& b, const Order& limit, bool leibniz, const Order& need) {
  Comparison c = equal_to_order(a, b, limit, leibniz);
  Params d{{"compared_below", c.compared.str()}};
  if (leibniz) d.emplace_back("comparison", "leibniz-normal");
  if (!c.equal) return Outcome::fail(c.difference.serialize(), d);
  if (c.compared < need)
    return Outcome::fail("comparison window too small: weights below " + c.compared.str() + ", needed " + need.str(), d);
  return Outcome::pass("0", d);
}

Outcome compare(const BoundaryOperator& a, const BoundaryOperator& b, bool leibniz) {
  BoundaryOperator d = a - b;
  if (leibniz) d = d.leibniz_normal();
  Params det;
  if (leibniz) det.emplace_back("comparison", "leibniz-normal");
  return Outcome::from(d.is_zero(), d.str(), det);
}

Outcome compare(const TangentialElement& a, const TangentialElement& b) {
  TangentialElement d = a - b;
  return Outcome::from(d.is_zero(), d.str());
}

Outcome compare(const ScalarPoly& a, const ScalarPoly& b) {
  ScalarPoly d = a - b;
  return Outcome::from(d == ScalarPoly(), d.str() + " (lhs " + a.str() + ", rhs " + b.str() + ")");
}

Outcome all_of(const std::vector<std::pair<std::string, std::function<Outcome()>>>& parts) {
  Params details;
  int skipped = 0;
  std::string reasons;
  for (const auto& [name, fn] : parts) {
    Outcome o;
    try {
      o = fn();
    } catch (const TruncationInsufficient& e) {
      o = Outcome::skip(std::string("TruncationInsufficient: ") + e.what());
    }
    if (o.status == Status::Fail) {
      o.residual = name + ": " + o.residual;
      return o;
    }
    if (o.status == Status::Skipped) {
      ++skipped;
      reasons += (reasons.empty() ? "" : "; ") + name + ": " + o.reason;
    }
    for (const auto& [k, v] : o.details)
      if (k == "compared_below") details.emplace_back(name + ".compared_below", v);
  }
  if (skipped == int(parts.size()) && skipped > 0) return Outcome::skip(reasons);
  if (skipped) details.emplace_back("partially_skipped", reasons);
  return Outcome::pass("0", details);
}

std::vector<CheckSpec> build_checks(const SuiteConfig& cfg) {
  std::string err = validate(cfg);
  if (!err.empty()) throw std::invalid_argument(err);
  std::optional<Rational> ext_n = cfg.jets_n;
  auto ws = std::make_shared<Workspace>(cfg.jets ? &*cfg.jets : nullptr, ext_n);
  Builder b{cfg, ws, {}};
  using Adder = void (*)(Builder&);
  static const std::vector<std::pair<std::string, Adder>> table{
      {"weyl", add_weyl},
      {"delta", add_delta},
      {"factorization", add_factorization},
      {"tangential", add_tangential},
      {"bigGJMS", add_big_gjms},
      {"q-holo", add_q_holo},
      {"solution-ops", add_solution_ops},
      {"building-blocks", add_building_blocks},
      {"holo-laplacian", add_holo_laplacian},
      {"numeric-flat", add_numeric_flat},
      {"numeric-scattering", add_numeric_scattering},
      {"exploratory", add_exploratory},
  };
  for (const auto& [name, fn] : table)
    if (std::find(cfg.suites.begin(), cfg.suites.end(), name) != cfg.suites.end()) fn(b);
  // The pool sorts results anyway; sorting the work list keeps scheduling reproducible.
  std::sort(b.checks.begin(), b.checks.end(), [](const CheckSpec& x, const CheckSpec& y) { return x.id < y.id; });
  return std::move(b.checks);
}

}  // namespace shiftop::verify
