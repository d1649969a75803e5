#include "workspace.hpp"

namespace shiftop::verify {

JetsPtr Workspace::flat(const Rational& n, int K) {
  return jets_.get("flat/" + to_string(n) + "/" + std::to_string(K),
                   [&] { return std::make_shared<const GeometryJets>(flat_jets(n, K)); });
}

JetsPtr Workspace::einstein(const Rational& n, const Rational& mu, int K) {
  if (mu == 0) return flat(n, K);
  return jets_.get("einstein/" + to_string(n) + "/" + to_string(mu) + "/" + std::to_string(K),
                   [&] { return std::make_shared<const GeometryJets>(einstein_jets(n, mu, K)); });
}

JetsPtr Workspace::generic(const Rational& n) {
  bool extended = ext_ && (!ext_n_ || *ext_n_ == n);
  return jets_.get("generic/" + to_string(n) + (extended ? "/ext" : ""), [&] {
    return std::make_shared<const GeometryJets>(extended ? generic_jets(n, *ext_) : generic_jets(n));
  });
}

JetsPtr Workspace::generic_with(const Rational& n, const JetExtension& ext, const std::string& tag) {
  return jets_.get("generic/" + to_string(n) + "/" + tag,
                   [&] { return std::make_shared<const GeometryJets>(generic_jets(n, ext)); });
}

OperatorSeries Workspace::shift_N(const JetsPtr& g, int N) {
  return shift_.get({key(g), N}, [&] { return iterated_shift(*g, RatFunc::lambda(), N); });
}

BoundaryOperator Workspace::residue(const JetsPtr& g, int N) {
  return residue_.get({key(g), N}, [&] { return residue_family(*g, N); });
}

OperatorSeries Workspace::gjms_bar(const JetsPtr& g, int N) {
  return gjms_.get({key(g), N}, [&] { return shiftop::gjms_bar(*g, N); });
}

std::vector<TangentialElement> Workspace::solution_ops(const JetsPtr& g, int Nmax) {
  return sol_.get({key(g), Nmax}, [&] { return solution_operators(*g, Nmax); });
}

}  // namespace shiftop::verify
