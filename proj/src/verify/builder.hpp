#pragma once

#include <memory>
#include <string>
#include <vector>

#include "shiftop/verify.hpp"
#include "workspace.hpp"

namespace shiftop::verify {

struct Builder {
  const SuiteConfig& cfg;
  std::shared_ptr<Workspace> ws;
  std::vector<CheckSpec> checks;

  // id = family + "/" + "k=v" params joined by "/"; the anchor comes from the table.
  void add(const std::string& family, const Params& params, std::function<Outcome()> fn, bool gating = true);
};

const std::string& anchor_of(const std::string& family);

// Comparison helpers shared by the suites.
Outcome compare(const OperatorSeries& a, const OperatorSeries& b, const Order& limit = Order::infinite(),
                bool leibniz = false, const Order& need = Order(Rational(1)));
Outcome compare(const BoundaryOperator& a, const BoundaryOperator& b, bool leibniz = false);
Outcome compare(const TangentialElement& a, const TangentialElement& b);
Outcome compare(const ScalarPoly& a, const ScalarPoly& b);
// Folds several sub-outcomes; fails on the first failure, skips if all skipped.
Outcome all_of(const std::vector<std::pair<std::string, std::function<Outcome()>>>& parts);

void add_weyl(Builder& b);
void add_delta(Builder& b);
void add_factorization(Builder& b);
void add_tangential(Builder& b);
void add_big_gjms(Builder& b);
void add_q_holo(Builder& b);
void add_solution_ops(Builder& b);
void add_building_blocks(Builder& b);
void add_holo_laplacian(Builder& b);
void add_numeric_flat(Builder& b);
void add_numeric_scattering(Builder& b);
void add_exploratory(Builder& b);

}  // namespace shiftop::verify
