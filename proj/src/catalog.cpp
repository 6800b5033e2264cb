#include "qmd/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qmd/cubical.hpp"
#include "qmd/fixtures.hpp"
#include "qmd/graph_lagrangian.hpp"
#include "qmd/spectral.hpp"

namespace qmd::catalog {

namespace {

constexpr double kPi = std::numbers::pi;

IntMatrix2 mul(const IntMatrix2& a, const IntMatrix2& b) {
  IntMatrix2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

std::string str(const Betti& b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + ")";
}

std::string str(bool b) { return b ? "true" : "false"; }

std::string str(const std::map<Bidegree, std::size_t>& dims) {
  std::string s = "{";
  bool first = true;
  for (const auto& [pq, d] : dims) {
    if (!first) s += ",";
    first = false;
    s += "(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + "):" + std::to_string(d);
  }
  return s + "}";
}

Betti mask_betti(const GridMask& m) { return trim(betti(build_complex(m))); }

class Builder {
public:
  explicit Builder(std::string name) { r_.name = std::move(name); }
  void input(std::string s) { r_.inputs.push_back(std::move(s)); }
  void add(std::string name, Origin o, std::string expected, std::string actual) {
    const bool ok = expected == actual;
    r_.checks.push_back({std::move(name), o, std::move(expected), std::move(actual), ok});
  }
  void flag(std::string name, Origin o, bool actual) { add(std::move(name), o, "true", str(actual)); }
  // Runs fn; any exception counts as a failed check with its message as the actual value.
  void guarded(const std::string& name, Origin o, const std::function<bool()>& fn) {
    try {
      flag(name, o, fn());
    } catch (const std::exception& e) {
      add(name, o, "true", std::string("error: ") + e.what());
    }
  }
  CaseReport finish() {
    r_.passed = !r_.checks.empty() &&
                std::all_of(r_.checks.begin(), r_.checks.end(), [](const Check& c) { return c.passed; });
    return std::move(r_);
  }

private:
  CaseReport r_;
};

double value_at_component(const ScalarField& f, const GridMask& m) {
  for (std::size_t i = 0; i < m.cells.size(); ++i)
    if (m.cells[i]) return f.values[i];
  return 0.0;
}

// Torus components ordered (min circle, max circle).
std::pair<CriticalSet, CriticalSet> torus_components(const ScalarField& f, double grad_tol) {
  const CriticalSet all = detect_critical_set(f, grad_tol);
  if (all.size() != 2) throw std::runtime_error("torus height: expected two critical circles");
  CriticalSet a = single(all, 0), b = single(all, 1);
  if (value_at_component(f, a.components[0]) > value_at_component(f, b.components[0])) std::swap(a, b);
  return {a, b};
}

Tolerances figure_eight_tols() {
  Tolerances t;
  t.grad_tol = 1e-4;
  return t;
}

CaseReport run_monodromy() {
  Builder b("monodromy");
  const IntMatrix2 m = monodromy();
  b.add("literal_product", Origin::derived, "[[0,-1],[1,2]]", to_string(m));
  b.add("determinant", Origin::elementary, "1", std::to_string(m[0][0] * m[1][1] - m[0][1] * m[1][0]));
  b.add("trace", Origin::derived, "2", std::to_string(m[0][0] + m[1][1]));
  b.add("swapped_basis_form", Origin::reported, "[[2,1],[-1,0]]", to_string(monodromy_swapped()));
  return b.finish();
}

CaseReport run_reeb() {
  Builder b("reeb-chords");
  std::size_t cases = 0, agree = 0;
  for (long p = 1; p <= 25; ++p)
    for (long q = 1; q <= 25; ++q) {
      if (std::gcd(p, q) != 1) continue;
      ++cases;
      if (reeb_chords(p, q) == reeb_oracle(p, q)) ++agree;
    }
  b.add("coprime_sweep_agreement", Origin::derived, std::to_string(cases), std::to_string(agree));
  b.flag("slope_5_3_origin_to_center", Origin::reported, reeb_chords(5, 3).connects[0][3]);
  b.flag("slope_1_2_origin_to_0_half", Origin::reported, reeb_chords(1, 2).connects[0][2]);
  b.flag("slope_2_1_origin_to_half_0", Origin::reported, reeb_chords(2, 1).connects[0][1]);
  return b.finish();
}

CaseReport run_torus() {
  Builder b("torus-height");
  b.input("torus_height");
  const ScalarField f = fixtures::torus_height();
  Tolerances t;
  const CriticalSet all = detect_critical_set(f, t.grad_tol);
  b.add("components", Origin::derived, "2", std::to_string(all.size()));
  if (all.size() != 2) return b.finish();
  const auto [cmin, cmax] = torus_components(f, t.grad_tol);
  for (const auto& [label, c] : {std::pair{"min", cmin}, std::pair{"max", cmax}}) {
    const std::string l = label;
    b.add(l + "_betti", Origin::derived, "(1,1)", str(mask_betti(c.all())));
    const DegeneracyReport r = classify(f, c, t);
    b.add(l + "_classification", Origin::derived, "morse_bott", to_string(r.classification));
  }
  const SubmanifoldChart full = SubmanifoldChart::full(2);
  b.guarded("min_minimally_degenerate", Origin::derived,
            [&] { return check_minimally_degenerate(f, cmin, full, t).passed; });
  b.guarded("min_tau_is_qmd", Origin::derived,
            [&] { return check_qmd(f, construct_tau(f, cmin, full, t), cmin, full, t).passed; });
  const SubmanifoldChart circle = fixtures::torus_circle(kPi / 2);
  b.guarded("max_minimally_degenerate", Origin::derived,
            [&] { return check_minimally_degenerate(f, cmax, circle, t).passed; });
  b.guarded("max_tau_is_qmd", Origin::derived,
            [&] { return check_qmd(f, construct_tau(f, cmax, circle, t), cmax, circle, t).passed; });
  return b.finish();
}

CaseReport run_genus2() {
  Builder b("genus2-figure8");
  b.input("figure_eight_min");
  b.input("figure_eight_max");
  const Tolerances t = figure_eight_tols();
  const ScalarField e1 = fixtures::figure_eight(1), e2 = fixtures::figure_eight(-1);
  const CriticalSet c1 = detect_critical_set(e1, t.grad_tol), c2 = detect_critical_set(e2, t.grad_tol);
  b.add("e1_betti", Origin::derived, "(1)", str(mask_betti(c1.all())));
  const SubmanifoldChart full = SubmanifoldChart::full(2);
  b.guarded("e1_minimally_degenerate", Origin::reported,
            [&] { return check_minimally_degenerate(e1, c1, full, t).passed; });
  b.guarded("e1_tau_is_qmd", Origin::derived,
            [&] { return check_qmd(e1, construct_tau(e1, c1, full, t), c1, full, t).passed; });
  const std::vector<std::pair<std::string, SubmanifoldChart>> charts{
      {"full", full},
      {"x_axis", fixtures::x_axis()},
      {"y_axis", SubmanifoldChart{{1}, {0.0, 0.0}}},
      {"point", fixtures::origin_point(2)}};
  for (const auto& [name, s] : charts) {
    bool passed = false;
    try {
      passed = check_minimally_degenerate(e2, c2, s, t).passed;
    } catch (const ChartError&) {
      passed = false;
    }
    b.add("e2_fails_on_" + name, Origin::reported, "false", str(passed));
  }
  return b.finish();
}

CaseReport run_flattened_mask() {
  Builder b("flattened-mask");
  b.input("flattened_mask");
  const ScalarField f = fixtures::flattened_mask();
  Tolerances t;
  // The face is flat to all orders; C and the Hessian are pure rounding noise
  // there, while positive values just outside are tiny.
  t.grad_tol = 1e-12;
  t.value_tol = 1e-15;
  const CriticalSet all = detect_critical_set(f, t.grad_tol);
  // The face plus one maximum inside each eye.
  b.add("components", Origin::derived, "3", std::to_string(all.size()));
  std::size_t face = 0;
  for (std::size_t i = 1; i < all.size(); ++i)
    if (value_at_component(f, all.components[i]) < value_at_component(f, all.components[face])) face = i;
  const CriticalSet c = single(all, face);
  b.add("face_betti", Origin::derived, "(1,2)", str(mask_betti(c.all())));
  b.guarded("face_flattened_degenerate", Origin::derived,
            [&] { return check_flattened_degenerate(f, c, SubmanifoldChart::full(2), t).passed; });
  return b.finish();
}

CaseReport run_kunneth() {
  Builder b("annulus-kunneth");
  b.input("annulus_kunneth_descriptor");
  b.input("kunneth_field");
  const GridMask a = fixtures::annulus_mask(4, 8);
  const Betti ba = mask_betti(a);
  b.add("annulus_betti", Origin::elementary, "(1,1)", str(ba));
  b.add("product_betti", Origin::reported, "(1,2,1)", str(mask_betti(mask_product(a, a))));
  b.add("kunneth_formula", Origin::reported, "(1,2,1)", str(trim(betti_product_check(ba, ba))));
  const ScalarField f = fixtures::kunneth_field();
  const CriticalSet c = detect_critical_set(f, Tolerances{}.grad_tol);
  b.add("field_components", Origin::derived, "1", std::to_string(c.size()));
  b.add("field_critical_betti", Origin::reported, "(1,2,1)", str(mask_betti(c.all())));
  const FilteredComplex fc = build_from_qmd(fixtures::annulus_kunneth_descriptor());
  const auto e1 = page(fc, 1).dims();
  const Convergence conv = converge(fc);
  b.add("e1", Origin::reported, "{(1,-1):1,(1,0):2,(1,1):1}", str(e1));
  b.add("einf_equals_e1", Origin::reported, str(e1), str(conv.einf.dims()));
  return b.finish();
}

CaseReport run_four_lines() {
  Builder b("four-lines-count");
  b.input("four_lines_descriptor");
  const long lines = 4;
  const long intersections = lines * (lines - 1) / 2;
  b.add("intersections", Origin::reported, "6", std::to_string(intersections));
  b.add("nodes_on_lines", Origin::reported, "12", std::to_string(lines * (lines - 1)));
  b.add("nodes_on_exceptional", Origin::reported, "12", std::to_string(intersections * 2));
  b.add("pants_betti", Origin::elementary, "(1,2)", str(mask_betti(fixtures::pants_mask())));
  b.add("annulus_betti", Origin::elementary, "(1,1)", str(mask_betti(fixtures::annulus_mask(2, 4))));
  const QMDDescriptor d = fixtures::four_lines_descriptor();
  b.add("e1_matches_pieces", Origin::reported, str(expected_e1(d)), str(page(build_from_qmd(d), 1).dims()));
  return b.finish();
}

CaseReport run_corner() {
  Builder b("corner");
  b.input("corner");
  const ScalarField f = fixtures::corner();
  const CriticalSet c = detect_critical_set(f, Tolerances{}.grad_tol);
  b.add("components", Origin::derived, "1", std::to_string(c.size()));
  b.add("critical_betti", Origin::derived, "(1)", str(mask_betti(c.all())));
  double prev = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  for (double delta : kFlattenDeltas) {
    const std::string tag = "delta_" + std::to_string(delta).substr(0, 5);
    try {
      const FlattenResult fr = flatten(f, delta, c);
      b.flag(tag + "_contract", Origin::derived, fr.passed);
      b.add(tag + "_sigma_betti", Origin::derived, "(1)", str(mask_betti(fr.sigma)));
      const ThickeningReport th = verify_thickening(f, c, fr.sigma, fr.box);
      b.flag(tag + "_descent", Origin::derived, th.descent_ok);
      const double d = c1_distance(f, fr.f_check);
      decreasing = decreasing && d < prev;
      prev = d;
    } catch (const std::exception& e) {
      b.add(tag, Origin::derived, "ok", std::string("error: ") + e.what());
      decreasing = false;
    }
  }
  b.flag("c1_distance_decreasing", Origin::derived, decreasing);
  return b.finish();
}

CaseReport run_saddle() {
  Builder b("saddle");
  b.input("saddle");
  b.input("saddle_tau");
  const ScalarField f = fixtures::saddle(), tau = fixtures::saddle_tau();
  Tolerances t;
  const CriticalSet c = detect_critical_set(f, t.grad_tol);
  const SubmanifoldChart s = fixtures::x_axis();
  b.add("components", Origin::derived, "1", std::to_string(c.size()));
  b.guarded("minimally_degenerate_on_x_axis", Origin::derived,
            [&] { return check_minimally_degenerate(f, c, s, t).passed; });
  b.guarded("constructed_tau_matches", Origin::derived, [&] {
    const ScalarField built = construct_tau(f, c, s, t);
    const GridMask inside = isolating_box(f, c, t).mask(f.dims, f.periodic);
    double err = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (inside.cells[i]) err = std::max(err, std::abs(built.values[i] - tau.values[i]));
    return err <= 1e-12;
  });
  b.guarded("qmd_with_tau", Origin::derived, [&] { return check_qmd(f, tau, c, s, t).passed; });
  b.guarded("not_qmd_with_zero_tau", Origin::derived,
            [&] { return !check_qmd(f, fixtures::zero_like(f), c, s, t).passed; });
  b.guarded("saddle_not_flattened", Origin::derived,
            [&] { return !check_flattened_degenerate(f, c, s, t).passed; });
  b.guarded("difference_flattened", Origin::derived, [&] {
    const ScalarField g = f - tau;
    const CriticalSet cg = detect_critical_set(g, t.grad_tol);
    return check_flattened_degenerate(g, cg, s, t).passed;
  });
  b.guarded("isolation_scan", Origin::derived, [&] { return isolation_scan(f, tau, c, s, t).passed; });
  b.guarded("index_preserved", Origin::derived, [&] {
    const FlattenResult fr = flatten_qmd(f, tau, 0.1, c, s);
    return index_preserved(f, fr.f_check, c, s, t);
  });
  return b.finish();
}

CaseReport run_qmd_1d() {
  Builder b("qmd-1d");
  b.input("quadric_plus_quartic");
  b.input("quartic");
  b.input("x_squared");
  const ScalarField f = fixtures::quadric_plus_quartic(), tau = fixtures::quartic();
  Tolerances t;
  const CriticalSet c = detect_critical_set(f, t.grad_tol);
  const SubmanifoldChart point = fixtures::origin_point(1);
  b.guarded("qmd_with_point_chart", Origin::derived, [&] { return check_qmd(f, tau, c, point, t).passed; });
  b.guarded("isolation_scan", Origin::derived, [&] { return isolation_scan(f, tau, c, point, t).passed; });
  const ScalarField x2 = fixtures::x_squared();
  const CriticalSet cx = detect_critical_set(x2, t.grad_tol);
  const FlattenResult fr = flatten(x2, 0.08, cx);
  b.flag("flatten_contract", Origin::derived, fr.passed);
  std::size_t lo = x2.size(), hi = 0;
  for (std::size_t i = 0; i < x2.size(); ++i)
    if (fr.sigma.cells[i]) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  const double h = x2.spacing[0];
  const bool ends = lo <= hi && std::abs(x2.coord(0, lo) + 0.2) <= h && std::abs(x2.coord(0, hi) - 0.2) <= h;
  b.flag("sigma_is_minus_0.2_to_0.2", Origin::derived, ends);
  return b.finish();
}

CaseReport run_cancellation() {
  Builder b("cancellation");
  b.input("cancellation_descriptor");
  const Convergence conv = converge(build_from_qmd(fixtures::cancellation_descriptor()));
  b.add("stable_index", Origin::derived, "2", std::to_string(conv.stable_index));
  b.add("einf", Origin::derived, "{}", str(conv.einf.dims()));
  return b.finish();
}

CaseReport run_log_corner() {
  Builder b("log-corner");
  b.input("log_corner_descriptor");
  const QMDDescriptor d = fixtures::log_corner_descriptor();
  const FilteredComplex fc = build_from_qmd(d);
  b.add("e1", Origin::reported, str(expected_e1(d)), str(page(fc, 1).dims()));
  const Convergence conv = converge(fc);
  std::map<int, std::size_t> graded;
  for (const auto& [pq, dim] : conv.einf.dims()) graded[pq.first + pq.second] += dim;
  std::map<int, std::size_t> total;
  for (const auto& [n, dim] : total_homology(fc))
    if (dim) total[n] = dim;
  auto show = [](const std::map<int, std::size_t>& m) {
    std::string s;
    for (const auto& [n, d] : m) s += std::to_string(n) + ":" + std::to_string(d) + " ";
    return s;
  };
  b.add("associated_graded", Origin::elementary, show(total), show(graded));
  return b.finish();
}

const std::map<std::string, std::function<CaseReport()>>& registry() {
  static const std::map<std::string, std::function<CaseReport()>> r{
      {"monodromy", run_monodromy},        {"reeb-chords", run_reeb},
      {"torus-height", run_torus},         {"genus2-figure8", run_genus2},
      {"flattened-mask", run_flattened_mask}, {"annulus-kunneth", run_kunneth},
      {"four-lines-count", run_four_lines}, {"corner", run_corner},
      {"saddle", run_saddle},              {"qmd-1d", run_qmd_1d},
      {"cancellation", run_cancellation},  {"log-corner", run_log_corner},
  };
  return r;
}

}  // namespace

std::string to_string(Origin o) {
  switch (o) {
    case Origin::reported: return "reported";
    case Origin::derived: return "derived";
    case Origin::elementary: return "elementary";
  }
  return "derived";
}

IntMatrix2 monodromy() {
  const IntMatrix2 j{{{0, -1}, {1, 0}}};
  const IntMatrix2 t{{{1, 1}, {0, 1}}};
  const IntMatrix2 tinv{{{1, -1}, {0, 1}}};
  const IntMatrix2 jt = mul(j, tinv);
  const IntMatrix2 m = mul(mul(mul(jt, jt), jt), mul(j, mul(t, t)));
  if (m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1) throw std::logic_error("monodromy: determinant is not 1");
  return m;
}

IntMatrix2 monodromy_swapped() {
  const IntMatrix2 m = monodromy();
  return {{{m[1][1], m[1][0]}, {m[0][1], m[0][0]}}};
}

std::string to_string(const IntMatrix2& m) {
  std::ostringstream os;
  os << "[[" << m[0][0] << "," << m[0][1] << "],[" << m[1][0] << "," << m[1][1] << "]]";
  return os.str();
}

ChordTable reeb_chords(long p, long q) {
  if (p <= 0 || q <= 0) throw std::invalid_argument("reeb_chords: p and q must be positive");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("reeb_chords: p and q must be coprime");
  ChordTable t;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      const int d1 = (kHalfPoints[i][0] + kHalfPoints[j][0]) % 2;
      const int d2 = (kHalfPoints[i][1] + kHalfPoints[j][1]) % 2;
      if (d1 == 0 && d2 == 1) t.connects[i][j] = q % 2 == 0;
      else if (d1 == 1 && d2 == 0) t.connects[i][j] = p % 2 == 0;
      else t.connects[i][j] = p % 2 == 1 && q % 2 == 1;
    }
  return t;
}

ChordTable reeb_oracle(long p, long q) {
  if (p <= 0 || q <= 0 || std::gcd(p, q) != 1) throw std::invalid_argument("reeb_oracle: need coprime positive p, q");
  // Work in units of 1/(2pq): a half-integer point a/2 becomes a*p*q, the
  // flow after s = k/(2pq) moves by (k*q, k*p).
  const long n = 2 * p * q;
  ChordTable t;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      for (long k = 1; k < n && !t.connects[i][j]; ++k) {
        const long x = kHalfPoints[i][0] * p * q + k * q - kHalfPoints[j][0] * p * q;
        const long y = kHalfPoints[i][1] * p * q + k * p - kHalfPoints[j][1] * p * q;
        if (((x % n) + n) % n == 0 && ((y % n) + n) % n == 0) t.connects[i][j] = true;
      }
    }
  return t;
}

std::vector<std::string> list_examples() {
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

CaseReport run_example(const std::string& name) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) throw UnknownExampleError("unknown example: " + name);
  return it->second();
}

CriticalSet single(const CriticalSet& c, std::size_t i) {
  CriticalSet out;
  out.components = {c.components.at(i)};
  out.boxes = {c.boxes.at(i)};
  out.grad_tol = c.grad_tol;
  return out;
}

std::vector<Triple> minimally_degenerate_triples() {
  std::vector<Triple> out;
  const Tolerances t;
  {
    const ScalarField f = fixtures::x_squared();
    out.push_back({"x_squared/full", f, detect_critical_set(f, t.grad_tol), SubmanifoldChart::full(1), t});
  }
  {
    const ScalarField f = fixtures::torus_height();
    const auto [cmin, cmax] = torus_components(f, t.grad_tol);
    out.push_back({"torus_min/full", f, cmin, SubmanifoldChart::full(2), t});
    out.push_back({"torus_max/circle", f, cmax, fixtures::torus_circle(kPi / 2), t});
  }
  {
    const Tolerances fe = figure_eight_tols();
    const ScalarField f = fixtures::figure_eight(1);
    out.push_back({"figure_eight_min/full", f, detect_critical_set(f, fe.grad_tol), SubmanifoldChart::full(2), fe});
  }
  {
    const ScalarField f = fixtures::saddle();
    out.push_back({"saddle/x_axis", f, detect_critical_set(f, t.grad_tol), fixtures::x_axis(), t});
  }
  return out;
}

std::vector<QMDPair> qmd_pairs() {
  std::vector<QMDPair> out;
  const Tolerances t;
  {
    const ScalarField f = fixtures::quadric_plus_quartic();
    out.push_back({"quadric_plus_quartic/quartic", f, fixtures::quartic(), detect_critical_set(f, t.grad_tol),
                   fixtures::origin_point(1), t});
  }
  {
    const ScalarField f = fixtures::saddle();
    out.push_back({"saddle/saddle_tau", f, fixtures::saddle_tau(), detect_critical_set(f, t.grad_tol),
                   fixtures::x_axis(), t});
  }
  for (const Triple& tr : minimally_degenerate_triples()) {
    if (tr.name == "saddle/x_axis") continue;  // covered by the explicit tau above
    out.push_back({tr.name + "/constructed", tr.f, construct_tau(tr.f, tr.c, tr.s, tr.tols), tr.c, tr.s, tr.tols});
  }
  return out;
}

std::vector<FlattenCase> flatten_cases() {
  const Tolerances t;
  std::vector<FlattenCase> out;
  {
    const ScalarField f = fixtures::x_squared();
    out.push_back({"x_squared", f, detect_critical_set(f, t.grad_tol)});
  }
  {
    const ScalarField f = fixtures::corner();
    out.push_back({"corner", f, detect_critical_set(f, t.grad_tol)});
  }
  {
    const ScalarField f = fixtures::torus_height();
    out.push_back({"torus_min", f, torus_components(f, t.grad_tol).first});
  }
  return out;
}

std::vector<IndexCase> index_cases() {
  const Tolerances t;
  const double delta = 0.1;
  std::vector<IndexCase> out;
  {
    const ScalarField f = fixtures::x_squared();
    const CriticalSet c = detect_critical_set(f, t.grad_tol);
    out.push_back({"x_squared", f, flatten(f, delta, c).f_check, c, fixtures::origin_point(1), t});
  }
  {
    const ScalarField f = fixtures::corner();
    const CriticalSet c = detect_critical_set(f, t.grad_tol);
    out.push_back({"corner", f, flatten(f, delta, c).f_check, c, SubmanifoldChart::full(2), t});
  }
  const ScalarField torus = fixtures::torus_height();
  const auto [cmin, cmax] = torus_components(torus, t.grad_tol);
  {
    const SubmanifoldChart s = fixtures::torus_circle(3 * kPi / 2);
    out.push_back({"torus_min", torus, flatten(torus, delta, cmin).f_check, cmin, s, t});
  }
  {
    const SubmanifoldChart s = fixtures::torus_circle(kPi / 2);
    const ScalarField tau = construct_tau(torus, cmax, s, t);
    out.push_back({"torus_max", torus, flatten_qmd(torus, tau, delta, cmax, s).f_check, cmax, s, t});
  }
  {
    const ScalarField f = fixtures::saddle();
    const CriticalSet c = detect_critical_set(f, t.grad_tol);
    const SubmanifoldChart s = fixtures::x_axis();
    out.push_back({"saddle", f, flatten_qmd(f, fixtures::saddle_tau(), delta, c, s).f_check, c, s, t});
  }
  return out;
}

}  // namespace qmd::catalog
