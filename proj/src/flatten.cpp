#include "qmd/flatten.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qmd/kernels.hpp"

namespace qmd {

namespace {

double min_on(const ScalarField& f, const GridMask& m) {
  double v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (m.at(i)) v = std::min(v, f.values[i]);
  return v;
}

bool meets(const GridMask& a, const GridMask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.at(i) && b.at(i)) return true;
  return false;
}

// Union of the components of `m` that touch `seed`.
GridMask components_meeting(const GridMask& m, const GridMask& seed) {
  GridMask out(m.dims, m.periodic);
  if (m.empty()) return out;
  for (const auto& comp : connected_components(m))
    if (meets(comp, seed)) out = mask_union(out, comp);
  return out;
}

GridMask level_mask(const ScalarField& g, double level, bool inclusive) {
  GridMask m = g.empty_mask();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (inclusive ? g.values[i] <= level : g.values[i] < level) m.set(i);
  return m;
}

// Nodes where the level set passes between a node and an axis neighbour must
// have a gradient above grad_tol.
bool level_is_regular(const ScalarField& g, double level, const GridMask& box, double grad_tol) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!box.at(i) || !stencil_ok(g, i)) continue;
    const double here = g.values[i] - level;
    bool crosses = here == 0.0;
    for (std::size_t a = 0; a < g.rank() && !crosses; ++a)
      for (long s : {-1L, 1L})
        if (here * (g.values[g.offset(i, a, s)] - level) <= 0.0) crosses = true;
    if (!crosses) continue;
    double n2 = 0.0;
    for (double d : gradient_at(g, i)) n2 += d * d;
    if (!(std::sqrt(n2) > grad_tol)) return false;
  }
  return true;
}

// Nudges delta upward until delta/2 is a regular level of g inside the box.
double regular_delta(const ScalarField& g, double delta, const GridMask& box, const FlattenOptions& opt,
                     std::size_t& nudges) {
  nudges = 0;
  while (!level_is_regular(g, 0.5 * delta, box, opt.tols.grad_tol)) {
    if (nudges == opt.max_nudges) throw RegularValueError("delta/2 is not a regular value after the allowed nudges");
    delta *= opt.nudge_factor;
    ++nudges;
  }
  return delta;
}

GridMask stencil_domain(const ScalarField& f) {
  GridMask m = f.empty_mask();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (stencil_ok(f, i)) m.set(i);
  return m;
}

bool subset(const GridMask& a, const GridMask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.at(i) && !b.at(i)) return false;
  return true;
}

bool all_true(const std::map<std::string, bool>& d) {
  return std::all_of(d.begin(), d.end(), [](const auto& kv) { return kv.second; });
}

// Checks shared by every flattening: Sigma agrees with the detected critical
// set of f_check up to the slack, and no band node is critical.
void check_critical_structure(FlattenResult& r, const ScalarField& band_source, const FlattenOptions& opt) {
  const GridMask box = r.box.mask(r.f_check.dims, r.f_check.periodic);
  const GridMask valid = stencil_domain(r.f_check);
  const auto norms = kernels::parallel::gradient_norms(r.f_check);
  GridMask crit = r.f_check.empty_mask();
  for (std::size_t i = 0; i < r.f_check.size(); ++i)
    if (box.at(i) && norms[i] < opt.tols.grad_tol) crit.set(i);
  const GridMask inner = mask_intersection(mask_intersection(erode(r.sigma, opt.sigma_slack), valid), box);
  const GridMask outer = dilate(r.sigma, opt.sigma_slack);
  r.details["sigma_matches_critical"] = subset(inner, crit) && subset(crit, outer);

  bool spurious = false;
  const double lo = 0.5 * r.delta, hi = r.delta;
  for (std::size_t i = 0; i < r.f_check.size(); ++i) {
    if (!box.at(i) || !valid.at(i)) continue;
    const double v = band_source.values[i];
    if (v > lo && v < hi && !(norms[i] > 0.0)) spurious = true;
  }
  r.details["no_spurious_critical"] = !spurious;
}

}  // namespace

FlattenResult flatten(const ScalarField& f, double delta, const CriticalSet& c, const FlattenOptions& opt) {
  if (!(delta > 0.0)) throw std::invalid_argument("flatten: delta must be positive");
  if (c.components.empty()) throw std::invalid_argument("flatten: empty critical set");
  const GridMask cmask = c.all();
  ScalarField g = f;
  const double base = min_on(f, cmask);
  for (auto& v : g.values) v -= base;

  FlattenResult r;
  const GridMask reach = components_meeting(level_mask(g, delta * std::pow(opt.nudge_factor, opt.max_nudges), false), cmask);
  r.box = inflate(bounding_box(mask_union(reach, cmask)), opt.tols.inflate, f.dims, f.periodic);
  const GridMask box = r.box.mask(f.dims, f.periodic);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (box.at(i) && g.values[i] < -opt.tols.value_tol)
      throw PreconditionError("flatten: f dips below its value on C inside the isolating box");

  r.delta = regular_delta(g, delta, box, opt, r.nudges);
  const Rho rho(r.delta);
  r.f_check = g;
  kernels::parallel::apply_rho(rho, g.values, r.f_check.values);
  r.shifted = g;
  r.sigma = components_meeting(level_mask(g, 0.5 * r.delta, true), cmask);

  bool zero_ok = true, identity_ok = true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!box.at(i)) continue;
    if ((r.f_check.values[i] == 0.0) != (g.values[i] <= 0.5 * r.delta)) zero_ok = false;
    if (g.values[i] >= r.delta && r.f_check.values[i] != g.values[i]) identity_ok = false;
  }
  r.details["zero_set_is_sublevel"] = zero_ok;
  r.details["identity_above_delta"] = identity_ok;
  r.details["sigma_contains_c"] = subset(cmask, r.sigma);
  check_critical_structure(r, g, opt);
  r.passed = all_true(r.details);
  return r;
}

FlattenResult flatten_qmd(const ScalarField& f, const ScalarField& tau, double delta, const CriticalSet& c,
                          const SubmanifoldChart& s, const FlattenOptions& opt) {
  if (!(delta > 0.0)) throw std::invalid_argument("flatten: delta must be positive");
  if (!f.same_grid(tau)) throw GridMismatchError("flatten_qmd: f and tau live on different grids");
  if (c.components.empty()) throw std::invalid_argument("flatten: empty critical set");
  const GridMask cmask = c.all();

  FlattenResult r;
  r.box = isolating_box(f, c, opt.tols);
  const GridMask box = r.box.mask(f.dims, f.periodic);
  r.delta = regular_delta(tau, delta, box, opt, r.nudges);
  const Rho rho(r.delta);
  ScalarField rt = tau;
  kernels::parallel::apply_rho(rho, tau.values, rt.values);
  r.f_check = f - tau + rt;
  r.shifted = f;
  const GridMask smask = chart_mask(f, s);
  r.sigma = components_meeting(mask_intersection(smask, level_mask(tau, 0.5 * r.delta, true)), cmask);
  r.details["sigma_contains_c"] = subset(cmask, r.sigma);
  bool agree = true;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (box.at(i) && tau.values[i] <= 0.5 * r.delta && r.f_check.values[i] != f.values[i] - tau.values[i])
      agree = false;
  r.details["equals_difference_near_c"] = agree;
  r.passed = all_true(r.details);
  return r;
}

FlattenResult flatten_along_chart(const ScalarField& f, double delta, const CriticalSet& c, const SubmanifoldChart& s,
                                  const FlattenOptions& opt) {
  if (!(delta > 0.0)) throw std::invalid_argument("flatten: delta must be positive");
  if (c.components.empty()) throw std::invalid_argument("flatten: empty critical set");
  const GridMask cmask = c.all();
  const GridMask smask = chart_mask(f, s);
  const double base_value = min_on(f, cmask);
  const auto off = s.off_axes(f.rank());

  // Pinned indices of S on the off-chart axes.
  std::vector<std::size_t> pin(f.rank(), 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (smask.at(i)) {
      pin = f.unflatten(i);
      break;
    }

  ScalarField restricted = f;  // g(proj_S x)
  std::vector<double> r4(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto idx = f.unflatten(i);
    double r2 = 0.0;
    for (auto a : off) {
      const long n = static_cast<long>(f.dims[a]);
      long di = std::labs(static_cast<long>(idx[a]) - static_cast<long>(pin[a]));
      if (f.periodic[a]) di = std::min(di, n - di);
      const double dx = static_cast<double>(di) * f.spacing[a];
      r2 += dx * dx;
      idx[a] = pin[a];
    }
    restricted.values[i] = f.values[f.flat_index(idx)] - base_value;
    r4[i] = r2 * r2;
  }

  FlattenResult r;
  r.box = isolating_box(f, c, opt.tols);
  const GridMask box = r.box.mask(f.dims, f.periodic);
  r.delta = regular_delta(restricted, delta, mask_intersection(box, smask), opt, r.nudges);
  const Rho rho(r.delta);
  r.f_check = restricted;
  kernels::parallel::apply_rho(rho, restricted.values, r.f_check.values);
  for (std::size_t i = 0; i < f.size(); ++i) r.f_check.values[i] *= 1.0 + r4[i];
  r.shifted = restricted;
  r.sigma = components_meeting(mask_intersection(smask, level_mask(restricted, 0.5 * r.delta, true)), cmask);
  r.details["sigma_contains_c"] = subset(cmask, r.sigma);

  // The critical set is the tube over Sigma; it must carry Sigma's homology.
  const auto crit = critical_nodes(r.f_check, opt.tols.grad_tol);
  GridMask tube = f.empty_mask();
  for (const auto& comp : crit.components)
    if (meets(comp, cmask)) tube = mask_union(tube, comp);
  tube = mask_intersection(tube, box);
  r.details["tube_homology_matches"] =
      !tube.empty() && trim(betti(build_complex(tube))) == trim(betti(build_complex(r.sigma)));
  r.passed = all_true(r.details);
  return r;
}

ThickeningReport verify_thickening(const ScalarField& f, const CriticalSet& c, const GridMask& sigma, const Box& box,
                                   std::size_t step_budget) {
  if (c.components.empty()) throw std::invalid_argument("verify_thickening: empty critical set");
  const GridMask cmask = c.all();
  if (!subset(cmask, sigma)) throw std::invalid_argument("verify_thickening: C is not contained in Sigma");
  ThickeningReport rep;
  rep.betti_c = trim(betti(build_complex(cmask)));
  rep.betti_sigma = trim(betti(build_complex(sigma)));
  rep.betti_equal = rep.betti_c == rep.betti_sigma;

  // Neighbour offsets in {-1,0,1}^d without the origin.
  const std::size_t d = f.rank();
  std::size_t combos = 1;
  for (std::size_t a = 0; a < d; ++a) combos *= 3;
  std::vector<std::vector<long>> offsets;
  for (std::size_t k = 0; k < combos; ++k) {
    std::vector<long> o(d);
    std::size_t r = k;
    bool zero = true;
    for (std::size_t a = 0; a < d; ++a) {
      o[a] = static_cast<long>(r % 3) - 1;
      r /= 3;
      zero = zero && o[a] == 0;
    }
    if (!zero) offsets.push_back(std::move(o));
  }

  // Decreases below this are treated as ties; it stops walks along flat
  // valleys driven by rounding noise.
  constexpr double kTie = 1e-12;
  rep.descent_ok = true;
  for (std::size_t start = 0; start < f.size(); ++start) {
    if (!sigma.at(start) || !stencil_ok(f, start)) continue;
    ++rep.descent_starts;
    std::size_t cur = start, steps = 0;
    while (true) {
      const auto idx = f.unflatten(cur);
      if (!box.contains(f.dims, idx)) throw DescentEscapeError("descent left the isolating box");
      std::size_t best = cur;
      double best_v = f.values[cur] - kTie;
      std::vector<std::size_t> nb(d);
      for (const auto& o : offsets) {
        bool ok = true;
        for (std::size_t a = 0; a < d && ok; ++a) {
          const long n = static_cast<long>(f.dims[a]);
          long j = static_cast<long>(idx[a]) + o[a];
          if (f.periodic[a])
            j = (j % n + n) % n;
          else if (j < 0 || j >= n)
            ok = false;
          nb[a] = static_cast<std::size_t>(j);
        }
        if (!ok) continue;
        const std::size_t fl = f.flat_index(nb);
        // C is only defined where the stencil fits, so walks stay there too.
        if (!stencil_ok(f, fl)) continue;
        if (f.values[fl] < best_v) {
          best_v = f.values[fl];
          best = fl;
        }
      }
      if (best == cur) break;
      cur = best;
      if (++steps > step_budget) break;
    }
    rep.max_steps_used = std::max(rep.max_steps_used, steps);
    if (steps > step_budget || !cmask.at(cur)) rep.descent_ok = false;
  }
  rep.passed = rep.betti_equal && rep.descent_ok;
  return rep;
}

bool index_preserved(const ScalarField& f, const ScalarField& f_check, const CriticalSet& c, const SubmanifoldChart& s,
                     const Tolerances& tols) {
  for (auto node : sample_nodes(c.all(), tols.max_samples))
    if (transverse_negative_index(f, node, s, tols.eig_tol) != transverse_negative_index(f_check, node, s, tols.eig_tol))
      return false;
  return true;
}

double c1_distance(const ScalarField& f, const ScalarField& g) {
  if (!f.same_grid(g)) throw GridMismatchError("c1_distance: grids differ");
  return kernels::parallel::max_abs_diff(f.values, g.values) + kernels::parallel::max_gradient_diff(f, g);
}

}  // namespace qmd
