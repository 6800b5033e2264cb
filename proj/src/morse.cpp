#include "qmd/morse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qmd {

EigenSystem eig_sym_system(const SymMatrix& m, double eig_tol) {
  const std::size_t n = m.n;
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double asym = std::abs(m(i, j) - m(j, i));
      if (asym > 1e-12 * std::max(1.0, std::abs(m(i, j)))) throw NotSymmetricError("eig_sym: matrix is not symmetric");
      norm += m(i, j) * m(i, j);
    }
  norm = std::sqrt(norm);
  const double target = eig_tol * std::max(1.0, norm);

  SymMatrix a = m;
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() >= target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  EigenSystem es;
  for (auto i : order) {
    es.values.push_back(a(i, i));
    std::vector<double> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k][i];
    es.vectors.push_back(std::move(col));
  }
  return es;
}

std::vector<double> eig_sym(const SymMatrix& m, double eig_tol) { return eig_sym_system(m, eig_tol).values; }

SubmanifoldChart SubmanifoldChart::full(std::size_t rank) {
  SubmanifoldChart s;
  s.axes.resize(rank);
  std::iota(s.axes.begin(), s.axes.end(), 0);
  s.base.assign(rank, 0.0);
  return s;
}

std::vector<std::size_t> SubmanifoldChart::off_axes(std::size_t rank) const {
  std::vector<std::size_t> off;
  for (std::size_t a = 0; a < rank; ++a)
    if (std::find(axes.begin(), axes.end(), a) == axes.end()) off.push_back(a);
  return off;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::morse: return "morse";
    case Classification::morse_bott: return "morse_bott";
    case Classification::flattened_degenerate: return "flattened_degenerate";
    case Classification::qmd: return "qmd";
    case Classification::minimally_degenerate: return "minimally_degenerate";
    case Classification::unclassified: return "unclassified";
  }
  return "unclassified";
}

namespace {

// Node index on each off-chart axis (other entries unused).
std::vector<std::size_t> chart_base_nodes(const ScalarField& f, const SubmanifoldChart& s) {
  const std::size_t d = f.rank();
  std::vector<bool> seen(d, false);
  for (auto a : s.axes) {
    if (a >= d) throw ChartError("chart axis " + std::to_string(a) + " outside the grid");
    if (seen[a]) throw ChartError("chart axis listed twice");
    seen[a] = true;
  }
  const auto off = s.off_axes(d);
  if (!off.empty() && s.base.size() != d) throw ChartError("chart base needs one coordinate per grid axis");
  std::vector<std::size_t> nodes(d, 0);
  for (auto a : off) {
    const double rel = (s.base[a] - f.origin[a]) / f.spacing[a];
    long k = std::lround(rel);
    const long n = static_cast<long>(f.dims[a]);
    if (f.periodic[a]) {
      k = ((k % n) + n) % n;
    } else if (rel < -0.5 || rel > static_cast<double>(n) - 0.5) {
      throw ChartError("chart base outside the grid on axis " + std::to_string(a));
    }
    nodes[a] = static_cast<std::size_t>(k);
  }
  return nodes;
}

double kernel_threshold(const std::vector<double>& eig, double eig_tol) {
  double radius = 0.0;
  for (double l : eig) radius = std::max(radius, std::abs(l));
  return eig_tol * std::max(1.0, radius);
}

bool contains_mask(const GridMask& big, const GridMask& small) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small.at(i) && !big.at(i)) return false;
  return true;
}

struct MinimumCheck {
  bool attained = false;
  bool strict = true;
  double minimum = 0.0;
};

// Minimum of f over S inside the isolating box, and whether C attains it.
MinimumCheck check_minimum(const ScalarField& f, const GridMask& cmask, const GridMask& smask, const Box& box,
                           const Tolerances& tols) {
  const GridMask nbhd = mask_intersection(smask, box.mask(f.dims, f.periodic));
  MinimumCheck mc;
  mc.minimum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (nbhd.at(i)) mc.minimum = std::min(mc.minimum, f.values[i]);
  mc.attained = true;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (cmask.at(i) && f.values[i] > mc.minimum + tols.value_tol) mc.attained = false;
  if (tols.mode == MinimumMode::guarded) {
    const GridMask guard = dilate(cmask, tols.guard);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (nbhd.at(i) && !guard.at(i) && !(f.values[i] > mc.minimum + tols.value_tol)) mc.strict = false;
  }
  return mc;
}

std::size_t count_negative(const std::vector<double>& eig, double thr) {
  return static_cast<std::size_t>(std::count_if(eig.begin(), eig.end(), [&](double l) { return l < -thr; }));
}

void require_nonempty(const CriticalSet& c) {
  if (c.components.empty()) throw std::invalid_argument("critical set is empty");
}

void note_uniform_index(DegeneracyReport& r, const std::vector<std::size_t>& counts) {
  if (!counts.empty() && std::all_of(counts.begin(), counts.end(), [&](std::size_t k) { return k == counts.front(); }))
    r.negative_index = counts.front();
}

bool all_details(const DegeneracyReport& r) {
  return std::all_of(r.details.begin(), r.details.end(), [](const auto& kv) { return kv.second; });
}

}  // namespace

GridMask chart_mask(const ScalarField& f, const SubmanifoldChart& s) {
  const auto base = chart_base_nodes(f, s);
  const auto off = s.off_axes(f.rank());
  GridMask m = f.empty_mask();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto idx = f.unflatten(i);
    bool in = true;
    for (auto a : off) in = in && idx[a] == base[a];
    if (in) m.set(i);
  }
  return m;
}

std::vector<std::size_t> sample_nodes(const GridMask& m, std::size_t max_samples) {
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.at(i)) all.push_back(i);
  if (max_samples == 0 || all.size() <= max_samples) return all;
  std::vector<std::size_t> out;
  const double step = static_cast<double>(all.size()) / static_cast<double>(max_samples);
  for (std::size_t k = 0; k < max_samples; ++k) out.push_back(all[static_cast<std::size_t>(k * step)]);
  return out;
}

Box isolating_box(const ScalarField& f, const CriticalSet& c, const Tolerances& tols) {
  require_nonempty(c);
  return inflate(bounding_box(c.all()), tols.inflate, f.dims, f.periodic);
}

std::size_t negative_index(const ScalarField& f, std::size_t node, double eig_tol) {
  const auto eig = eig_sym(hessian_at(f, node), eig_tol);
  return count_negative(eig, kernel_threshold(eig, eig_tol));
}

std::size_t transverse_negative_index(const ScalarField& f, std::size_t node, const SubmanifoldChart& s,
                                      double eig_tol) {
  const auto off = s.off_axes(f.rank());
  if (off.empty()) return 0;
  const auto eig = eig_sym(hessian_at(f, node).restrict_to(off), eig_tol);
  return count_negative(eig, kernel_threshold(eig, eig_tol));
}

DegeneracyReport check_flattened_degenerate(const ScalarField& f, const CriticalSet& c, const SubmanifoldChart& s,
                                            const Tolerances& tols) {
  require_nonempty(c);
  const GridMask cmask = c.all();
  const GridMask smask = chart_mask(f, s);
  if (!contains_mask(smask, cmask)) throw ChartError("C is not contained in S");

  DegeneracyReport r;
  const auto mc = check_minimum(f, cmask, smask, isolating_box(f, c, tols), tols);
  r.details["minimum_on_c"] = mc.attained;
  if (tols.mode == MinimumMode::guarded) r.details["strict_off_c"] = mc.strict;

  const auto off = s.off_axes(f.rank());
  const double max_off = std::sin(tols.angle_tol);
  bool dim_ok = true, aligned = true;
  std::vector<std::size_t> neg;
  for (auto node : sample_nodes(cmask, tols.max_samples)) {
    const auto es = eig_sym_system(hessian_at(f, node), tols.eig_tol * 1e-3);
    const double thr = kernel_threshold(es.values, tols.eig_tol);
    std::size_t kdim = 0;
    for (std::size_t i = 0; i < es.values.size(); ++i) {
      if (std::abs(es.values[i]) >= thr) continue;
      ++kdim;
      double o = 0.0;
      for (auto a : off) o += es.vectors[i][a] * es.vectors[i][a];
      if (std::sqrt(o) > max_off) aligned = false;
    }
    if (kdim != s.axes.size()) dim_ok = false;
    neg.push_back(count_negative(es.values, thr));
    r.hessian_spectra.push_back({f.unflatten(node), es.values});
  }
  r.details["kernel_dimension"] = dim_ok;
  r.details["kernel_aligned"] = aligned;
  note_uniform_index(r, neg);
  r.passed = all_details(r);
  r.classification = r.passed ? Classification::flattened_degenerate : Classification::unclassified;
  return r;
}

DegeneracyReport check_qmd(const ScalarField& f, const ScalarField& tau, const CriticalSet& c,
                           const SubmanifoldChart& s, const Tolerances& tols) {
  if (!f.same_grid(tau)) throw GridMismatchError("check_qmd: f and tau live on different grids");
  require_nonempty(c);
  for (double v : tau.values)
    if (v < -tols.value_tol) throw PreconditionError("check_qmd: tau is negative somewhere");

  DegeneracyReport r;
  r.details["tau_nonnegative"] = true;
  const GridMask cmask = c.all();
  const GridMask box = isolating_box(f, c, tols).mask(f.dims, f.periodic);
  bool zero_ok = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!box.at(i) || !stencil_ok(f, i)) continue;
    const bool zero = std::abs(tau.values[i]) <= tols.value_tol;
    if (zero != cmask.at(i)) zero_ok = false;
  }
  r.details["tau_zero_set"] = zero_ok;

  // Near-kernel of Hess tau must span the directions transverse to S.
  const auto off = s.off_axes(f.rank());
  bool transverse = true;
  const double min_gram = std::pow(std::sin(tols.angle_tol), 2);
  for (auto node : sample_nodes(cmask, tols.max_samples)) {
    if (off.empty()) break;
    const auto es = eig_sym_system(hessian_at(tau, node), tols.eig_tol * 1e-3);
    const double thr = kernel_threshold(es.values, tols.eig_tol);
    SymMatrix gram(off.size());
    for (std::size_t i = 0; i < es.values.size(); ++i) {
      if (std::abs(es.values[i]) >= thr) continue;
      for (std::size_t p = 0; p < off.size(); ++p)
        for (std::size_t q = 0; q < off.size(); ++q) gram(p, q) += es.vectors[i][off[p]] * es.vectors[i][off[q]];
    }
    const auto ge = eig_sym(gram, 1e-12);
    if (ge.front() < min_gram) transverse = false;
  }
  r.details["tau_kernel_transverse"] = transverse;

  // The constructed f - tau is constant along S, so C cannot be a strict
  // minimum there; the inner check only asks that C attains it.
  Tolerances inner = tols;
  inner.mode = MinimumMode::non_strict;
  const auto flat = check_flattened_degenerate(f - tau, c, s, inner);
  r.details["difference_flattened"] = flat.passed;
  r.hessian_spectra = flat.hessian_spectra;
  r.negative_index = flat.negative_index;
  r.passed = all_details(r);
  r.classification = r.passed ? Classification::qmd : Classification::unclassified;
  return r;
}

DegeneracyReport check_minimally_degenerate(const ScalarField& f, const CriticalSet& c, const SubmanifoldChart& s,
                                            const Tolerances& tols) {
  require_nonempty(c);
  const GridMask cmask = c.all();
  const GridMask smask = chart_mask(f, s);
  if (!contains_mask(smask, cmask)) throw ChartError("C is not contained in S");

  DegeneracyReport r;
  const auto mc = check_minimum(f, cmask, smask, isolating_box(f, c, tols), tols);
  r.details["minimum_on_c"] = mc.attained;
  if (tols.mode == MinimumMode::guarded) r.details["strict_off_c"] = mc.strict;

  bool psd = true, maximal = true;
  std::vector<std::size_t> neg;
  for (auto node : sample_nodes(cmask, tols.max_samples)) {
    const SymMatrix h = hessian_at(f, node);
    const auto eig = eig_sym(h, tols.eig_tol * 1e-3);
    const double thr = kernel_threshold(eig, tols.eig_tol);
    const std::size_t k = count_negative(eig, thr);
    neg.push_back(k);
    if (!s.axes.empty()) {
      const auto restricted = eig_sym(h.restrict_to(s.axes), tols.eig_tol * 1e-3);
      if (restricted.front() < -thr) psd = false;
    }
    if (s.axes.size() + k != f.rank()) maximal = false;
    r.hessian_spectra.push_back({f.unflatten(node), eig});
  }
  r.details["chart_hessian_psd"] = psd;
  r.details["chart_maximal"] = maximal;
  note_uniform_index(r, neg);
  r.passed = all_details(r);
  r.classification = r.passed ? Classification::minimally_degenerate : Classification::unclassified;
  return r;
}

DegeneracyReport classify(const ScalarField& f, const CriticalSet& c, const Tolerances& tols) {
  if (c.components.size() != 1) throw std::invalid_argument("classify expects a single component");
  const GridMask& comp = c.components.front();
  const Box& box = c.boxes.front();
  std::vector<std::size_t> extended, fixed;
  for (std::size_t a = 0; a < f.rank(); ++a) (box.length[a] > 1 ? extended : fixed).push_back(a);

  DegeneracyReport r;
  const double max_off = std::sin(tols.angle_tol);
  bool constant_kernel = true, aligned = true;
  std::vector<std::size_t> neg;
  for (auto node : sample_nodes(comp, tols.max_samples)) {
    const auto es = eig_sym_system(hessian_at(f, node), tols.eig_tol * 1e-3);
    const double thr = kernel_threshold(es.values, tols.eig_tol);
    std::size_t kdim = 0;
    for (std::size_t i = 0; i < es.values.size(); ++i) {
      if (std::abs(es.values[i]) >= thr) continue;
      ++kdim;
      double o = 0.0;
      for (auto a : fixed) o += es.vectors[i][a] * es.vectors[i][a];
      if (std::sqrt(o) > max_off) aligned = false;
    }
    if (kdim != extended.size()) constant_kernel = false;
    neg.push_back(count_negative(es.values, thr));
    r.hessian_spectra.push_back({f.unflatten(node), es.values});
  }
  note_uniform_index(r, neg);
  r.details["kernel_matches_extent"] = constant_kernel;
  r.details["kernel_aligned"] = aligned;
  if (constant_kernel && aligned) {
    r.classification = comp.count() == 1 ? Classification::morse : Classification::morse_bott;
    r.passed = true;
  }
  return r;
}

ScalarField construct_tau(const ScalarField& f, const CriticalSet& c, const SubmanifoldChart& s,
                          const Tolerances& tols) {
  require_nonempty(c);
  const GridMask cmask = c.all();
  const GridMask smask = chart_mask(f, s);
  if (!contains_mask(smask, cmask)) throw ChartError("C is not contained in S");
  const Box box = isolating_box(f, c, tols);
  const auto mc = check_minimum(f, cmask, smask, box, tols);
  if (!mc.attained || !mc.strict) throw PreconditionError("construct_tau: f|_S is not minimal along C");
  for (auto node : sample_nodes(cmask, tols.max_samples)) {
    if (s.axes.empty()) break;
    const auto eig = eig_sym(hessian_at(f, node).restrict_to(s.axes), tols.eig_tol * 1e-3);
    if (eig.front() < -kernel_threshold(eig, tols.eig_tol))
      throw PreconditionError("construct_tau: Hessian is not nonnegative along S");
  }

  double min_c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (cmask.at(i)) min_c = std::min(min_c, f.values[i]);

  const auto base = chart_base_nodes(f, s);
  const auto off = s.off_axes(f.rank());
  ScalarField formula = f;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto idx = f.unflatten(i);
    double r2 = 0.0;
    for (auto a : off) {
      const long n = static_cast<long>(f.dims[a]);
      long di = std::labs(static_cast<long>(idx[a]) - static_cast<long>(base[a]));
      if (f.periodic[a]) di = std::min(di, n - di);
      const double dx = static_cast<double>(di) * f.spacing[a];
      r2 += dx * dx;
      idx[a] = base[a];
    }
    formula.values[i] = r2 * r2 + f.values[f.flat_index(idx)] - min_c;
  }

  // Smooth cutoff to a positive constant outside the box.
  double level = 1.0;
  const GridMask inside = box.mask(f.dims, f.periodic);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (inside.at(i)) level = std::max(level, 1.0 + std::abs(formula.values[i]));
  const double margin = static_cast<double>(std::max<std::size_t>(tols.inflate, 1));
  ScalarField tau = formula;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (inside.at(i)) continue;
    const auto idx = f.unflatten(i);
    std::size_t dist = 0;
    for (std::size_t a = 0; a < f.rank(); ++a) {
      const std::size_t n = f.dims[a];
      const std::size_t rel = (idx[a] + n - box.start[a]) % n;
      if (rel < box.length[a]) continue;
      std::size_t da;
      if (f.periodic[a])
        da = std::min(rel - (box.length[a] - 1), n - rel);
      else
        da = idx[a] < box.start[a] ? box.start[a] - idx[a] : idx[a] - (box.start[a] + box.length[a] - 1);
      dist = std::max(dist, da);
    }
    const double u = std::min(1.0, static_cast<double>(dist) / margin);
    const double w = 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
    tau.values[i] = w * std::max(formula.values[i], 0.0) + (1.0 - w) * level;
  }
  return tau;
}

}  // namespace qmd
