#include "qmd/graph_lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmd/kernels.hpp"

namespace qmd {

GraphSection::GraphSection(ScalarField base) : base_(std::move(base)) { base_.validate(); }

ScalarField GraphSection::generator() const {
  ScalarField g = base_;
  for (const auto& [tau, t] : terms_)
    for (std::size_t i = 0; i < g.size(); ++i) g.values[i] -= t * tau.values[i];
  return g;
}

GraphSection flow_translate(const GraphSection& l, const ScalarField& tau, double t) {
  if (!l.base_.same_grid(tau)) throw GridMismatchError("flow_translate: tau lives on a different grid");
  GraphSection out = l;
  if (t == 0.0) return out;
  for (auto& [existing, time] : out.terms_)
    if (existing.values == tau.values) {
      time += t;
      return out;
    }
  out.terms_.emplace_back(tau, t);
  return out;
}

CriticalSet zero_section_intersection(const GraphSection& l, double grad_tol) {
  return critical_nodes(l.generator(), grad_tol);
}

namespace {

double max_norm_in(const ScalarField& g, const GridMask& box) {
  const auto norms = kernels::parallel::gradient_norms(g);
  double m = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i)
    if (box.at(i) && !std::isnan(norms[i])) m = std::max(m, norms[i]);
  return m;
}

}  // namespace

IsolationReport isolation_scan(const ScalarField& f, const ScalarField& tau, const CriticalSet& c,
                               const SubmanifoldChart& s, const Tolerances& tols, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("isolation_scan: steps must be positive");
  if (!f.same_grid(tau)) throw GridMismatchError("isolation_scan: f and tau live on different grids");
  const GridMask cmask = c.all();
  const GridMask box = isolating_box(f, c, tols).mask(f.dims, f.periodic);
  const GraphSection l(f);

  auto inside = [&](const CriticalSet& cs) {
    GridMask m = f.empty_mask();
    for (const auto& comp : cs.components)
      for (std::size_t i = 0; i < m.size(); ++i)
        if (comp.at(i) && box.at(i)) m.set(i);
    return m;
  };

  // grad_tol is calibrated on f. Before t = 1 it follows the gradient scale
  // of the generator in the box, so (1-t)*f is judged like f.
  const double base_scale = max_norm_in(f, box);
  IsolationReport rep;
  rep.isolated_before_end = true;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(steps);
    const GraphSection lt = flow_translate(l, tau, t);
    const double scale = base_scale > 0.0 ? max_norm_in(lt.generator(), box) / base_scale : 1.0;
    const double tol = scale > 0.0 ? tols.grad_tol * std::min(1.0, scale) : tols.grad_tol;
    const auto hit = inside(zero_section_intersection(lt, tol));
    const bool iso = hit == mask_intersection(cmask, box);
    rep.steps.push_back({t, iso});
    rep.isolated_before_end = rep.isolated_before_end && iso;
  }
  const auto end = inside(zero_section_intersection(flow_translate(l, tau, 1.0), tols.grad_tol));
  const GridMask smask = chart_mask(f, s);
  rep.end_within_s = true;
  for (std::size_t i = 0; i < end.size(); ++i)
    if (end.at(i) && !smask.at(i)) rep.end_within_s = false;
  rep.end_equals_c = end == mask_intersection(cmask, box);
  rep.passed = rep.isolated_before_end && rep.end_within_s;
  return rep;
}

}  // namespace qmd
