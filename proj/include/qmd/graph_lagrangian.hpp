#pragma once

// Lagrangian graphs over a chart, represented only through their generating
// functions. The fibrewise flow of the lifted tau translates the graph of df
// to the graph of d(f - t*tau), so everything reduces to generator arithmetic.

#include <cstddef>
#include <vector>

#include "qmd/field.hpp"
#include "qmd/morse.hpp"

namespace qmd {

/// Graph of d(base - sum_k t_k * tau_k). The terms are kept symbolic so that
/// composing flows adds times exactly.
class GraphSection {
public:
  explicit GraphSection(ScalarField base);

  const ScalarField& base() const { return base_; }
  /// Accumulated flow time per distinct tau, in insertion order.
  const std::vector<std::pair<ScalarField, double>>& terms() const { return terms_; }
  ScalarField generator() const;

  friend GraphSection flow_translate(const GraphSection& l, const ScalarField& tau, double t);

private:
  ScalarField base_;
  std::vector<std::pair<ScalarField, double>> terms_;
};

GraphSection flow_translate(const GraphSection& l, const ScalarField& tau, double t);

/// Nodes where the section meets the zero section, i.e. critical nodes of the
/// generator. May be empty.
CriticalSet zero_section_intersection(const GraphSection& l, double grad_tol);

struct IsolationStep {
  double t = 0.0;
  bool isolated = false;
};

struct IsolationReport {
  std::vector<IsolationStep> steps;  // t = k/steps for k = 0 .. steps-1
  bool isolated_before_end = false;
  bool end_within_s = false;  // t = 1
  bool end_equals_c = false;  // informational
  bool passed = false;
};

/// Scans t over [0, 1 - 1/steps]: inside the isolating box the intersection
/// must equal C exactly. At t = 1 it must lie in S. Before t = 1 the gradient
/// tolerance shrinks with the box-wide gradient scale of f - t*tau relative to
/// f (never grows); at t = 1 it is tols.grad_tol as given.
IsolationReport isolation_scan(const ScalarField& f, const ScalarField& tau, const CriticalSet& c,
                               const SubmanifoldChart& s, const Tolerances& tols, std::size_t steps = 64);

}  // namespace qmd
