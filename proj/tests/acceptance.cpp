// Acceptance driver: `acceptance N` checks criterion N and prints one line;
// with no argument every criterion runs. Exit status 0 iff all selected pass.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "qmd/catalog.hpp"
#include "qmd/cubical.hpp"
#include "qmd/fixtures.hpp"
#include "qmd/flatten.hpp"
#include "qmd/graph_lagrangian.hpp"
#include "qmd/maslov.hpp"
#include "qmd/morse.hpp"
#include "qmd/spectral.hpp"

using namespace qmd;
using namespace qmd::testing;

namespace {

// Pinned tolerances and limits.
constexpr double kLimitMonodromy = 1e-3;  // seconds
constexpr double kLimitReeb = 1.0;
constexpr double kLimitKunneth = 5.0;
constexpr double kLimitFlatten = 10.0;
constexpr double kLimitSpectral = 30.0;
constexpr double kEigTol = 1e-6;  // relative
constexpr int kRandomComplexes = 200;
constexpr std::size_t kMaxGenerators = 40;
constexpr int kRandomPaths = 200;
constexpr std::size_t kKunnethSide = 16;  // 16^2 x 16^2 proxy
constexpr std::size_t kIsolationSteps = 64;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string str(const Betti& b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + ")";
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g s", s);
  return buf;
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1 ----
Outcome monodromy_product() {
  catalog::IntMatrix2 m{};
  const double t = timed([&] { m = catalog::monodromy(); });
  const catalog::IntMatrix2 stated{{{2, 1}, {-1, 0}}};
  const bool swapped = catalog::monodromy_swapped() == stated;
  Outcome o;
  o.passed = m == stated && t < kLimitMonodromy;
  o.detail = "literal product " + catalog::to_string(m) + ", stated " + catalog::to_string(stated) +
             (swapped ? "; equal after swapping the basis order" : "") + " (" + secs(t) + ")";
  return o;
}

// ---- 2 ----
Outcome reeb_parity() {
  std::size_t pairs = 0, mismatches = 0;
  const double t = timed([&] {
    for (long p = 1; p <= 25; ++p)
      for (long q = 1; q <= 25; ++q) {
        if (std::gcd(p, q) != 1) continue;
        ++pairs;
        const auto rules = catalog::reeb_chords(p, q);
        for (std::size_t a = 0; a < 4; ++a)
          for (std::size_t b = 0; b < 4; ++b) {
            const bool want = a != b && chord_exists(p, q, catalog::kHalfPoints[a], catalog::kHalfPoints[b]);
            if (rules.connects[a][b] != want) ++mismatches;
          }
      }
  });
  return {mismatches == 0 && t < kLimitReeb,
          std::to_string(pairs) + " coprime pairs, " + std::to_string(mismatches) + " mismatches (" + secs(t) + ")"};
}

// ---- 3 ----
Outcome kunneth() {
  const Betti want{1, 2, 1};
  Betti mask_b, field_b, small_b;
  bool e1_ok = false, e1_mask_ok = false;
  const double t = timed([&] {
    const GridMask a = fixtures::annulus_mask(kKunnethSide, kKunnethSide);
    mask_b = trim(betti(build_complex(mask_product(a, a))));
    // The critical set of the product field is annulus x annulus as well.
    const ScalarField f = fixtures::kunneth_field();
    field_b = trim(betti(build_complex(detect_critical_set(f, 1e-6).all())));

    QMDDescriptor d;
    d.pieces.push_back({"A1xA2", 0.0, 0, mask_b, std::nullopt, std::nullopt});
    const auto conv = converge(build_from_qmd(d));
    std::vector<std::size_t> ranks;
    for (const auto& [pq, dim] : conv.einf.dims()) ranks.push_back(dim);
    e1_ok = conv.stable_index == 1 && page(build_from_qmd(d), 1).dims() == conv.einf.dims() &&
            ranks == std::vector<std::size_t>{1, 2, 1};

    // Same piece given by its cubical chains on a small product.
    const GridMask s = fixtures::annulus_mask(2, 4);
    QMDDescriptor dm;
    dm.pieces.push_back({"A1xA2", 0.0, 0, std::nullopt, std::nullopt, mask_product(s, s)});
    const auto fc = build_from_qmd(dm);
    const auto cm = converge(fc);
    small_b.clear();
    for (const auto& [pq, dim] : cm.einf.dims()) small_b.push_back(dim);
    e1_mask_ok = page(fc, 1).dims() == cm.einf.dims();
  });
  const Betti product = trim(betti_product_check({1, 1}, {1, 1}));
  const bool ok = mask_b == want && product == want && field_b == want && e1_ok && e1_mask_ok && small_b == want &&
                  t < kLimitKunneth;
  return {ok, "16^2x16^2 mask " + str(mask_b) + ", product formula " + str(product) + ", field critical set " +
                  str(field_b) + ", E1=Einf " + (e1_ok && e1_mask_ok ? "yes" : "no") + " (" + secs(t) + ")"};
}

// ---- 4 ----
Outcome flattening() {
  bool ok = true;
  std::ostringstream why;
  const double t = timed([&] {
    for (const auto& fc : catalog::flatten_cases()) {
      std::vector<double> dist;
      for (double delta : catalog::kFlattenDeltas) {
        const FlattenResult r = flatten(fc.f, delta, fc.c);
        const Rho rho(r.delta);
        bool clauses = true, sigma_ok = true;
        GridMask sub = fc.f.empty_mask();
        for (std::size_t i = 0; i < fc.f.size(); ++i) {
          const double g = r.shifted.values[i];
          if (r.f_check.values[i] != rho(g)) clauses = false;
          if (g <= r.delta / 2 && r.f_check.values[i] != 0.0) clauses = false;
          if (g >= r.delta && r.f_check.values[i] != g) clauses = false;
          if (g <= r.delta / 2) sub.set(i);
        }
        if (!(r.sigma == sub)) sigma_ok = false;
        const ThickeningReport th = verify_thickening(fc.f, fc.c, r.sigma, r.box);
        dist.push_back(c1_distance(r.shifted, r.f_check));
        if (!(r.passed && clauses && sigma_ok && th.betti_equal && th.descent_ok)) {
          ok = false;
          why << " " << fc.name << "@" << delta << (clauses ? "" : " rho") << (sigma_ok ? "" : " sigma")
              << (th.betti_equal ? "" : " betti") << (th.descent_ok ? "" : " descent") << (r.passed ? "" : " contract");
        }
      }
      for (std::size_t k = 1; k < dist.size(); ++k)
        if (!(dist[k] < dist[k - 1])) {
          ok = false;
          why << " " << fc.name << " c1 not decreasing";
        }
    }
  });
  ok = ok && t < kLimitFlatten;
  return {ok, "x_squared, corner, torus_min at 4 deltas" + why.str() + " (" + secs(t) + ")"};
}

// ---- 5 ----
Outcome tau_equivalence() {
  bool ok = true;
  std::ostringstream why;
  std::size_t triples = 0, nodes = 0;
  for (const auto& tr : catalog::minimally_degenerate_triples()) {
    ++triples;
    try {
      const bool md = check_minimally_degenerate(tr.f, tr.c, tr.s, tr.tols).passed;
      const ScalarField tau = construct_tau(tr.f, tr.c, tr.s, tr.tols);
      const bool qmd = check_qmd(tr.f, tau, tr.c, tr.s, tr.tols).passed;
      const ScalarField g = tr.f - tau;
      bool hess = true;
      for (std::size_t node : sample_nodes(tr.c.all(), tr.tols.max_samples)) {
        ++nodes;
        const auto ev = eig_sym(hessian_at(g, node), 1e-12);
        double radius = 1.0;
        for (double v : ev) radius = std::max(radius, std::abs(v));
        if (ev.back() > kEigTol * radius) hess = false;
      }
      if (!(md && qmd && hess)) {
        ok = false;
        why << " " << tr.name;
      }
    } catch (const std::exception& e) {
      ok = false;
      why << " " << tr.name << " threw " << e.what();
    }
  }
  // Stated classifications of the local models.
  Tolerances ft;
  ft.grad_tol = 1e-4;
  const auto e1 = fixtures::figure_eight(1), e2 = fixtures::figure_eight(-1);
  const auto c1 = detect_critical_set(e1, ft.grad_tol), c2 = detect_critical_set(e2, ft.grad_tol);
  const bool e1_passes = check_minimally_degenerate(e1, c1, SubmanifoldChart::full(2), ft).passed;
  bool e2_fails = true;
  for (const auto& s : {SubmanifoldChart::full(2), fixtures::x_axis(), SubmanifoldChart{{1}, {0.0, 0.0}},
                        fixtures::origin_point(2)}) {
    try {
      if (check_minimally_degenerate(e2, c2, s, ft).passed) e2_fails = false;
    } catch (const ChartError&) {
    }
  }
  const Tolerances t;
  const auto sf = fixtures::saddle();
  const auto sc = detect_critical_set(sf, t.grad_tol);
  const bool saddle_ok = check_minimally_degenerate(sf, sc, fixtures::x_axis(), t).passed &&
                         check_qmd(sf, fixtures::saddle_tau(), sc, fixtures::x_axis(), t).passed;
  ok = ok && e1_passes && e2_fails && saddle_ok;
  return {ok, std::to_string(triples) + " triples, " + std::to_string(nodes) + " Hessians at eig_tol 1e-6; E1 " +
                  (e1_passes ? "passes" : "FAILS") + ", E2 " + (e2_fails ? "fails" : "PASSES") + ", saddle " +
                  (saddle_ok ? "qmd" : "NOT qmd") + why.str()};
}

// ---- 6 ----
Outcome index_lemma() {
  bool ok = true;
  std::size_t nodes = 0;
  std::ostringstream why;
  const auto cases = catalog::index_cases();
  for (const auto& ic : cases)
    for (std::size_t node : sample_nodes(ic.c.all(), ic.tols.max_samples)) {
      ++nodes;
      const auto a = transverse_negative_index(ic.f, node, ic.s, ic.tols.eig_tol);
      const auto b = transverse_negative_index(ic.f_check, node, ic.s, ic.tols.eig_tol);
      if (a != b) {
        ok = false;
        why << " " << ic.name << "@" << node << ":" << a << "!=" << b;
        break;
      }
    }
  return {ok, std::to_string(cases.size()) + " fixtures, " + std::to_string(nodes) + " nodes" + why.str()};
}

// ---- 7 ----
Outcome spectral_soundness() {
  std::size_t bad_bidegree = 0, bad_square = 0, bad_total = 0, max_gens = 0;
  const double t = timed([&] {
    for (int trial = 0; trial < kRandomComplexes; ++trial) {
      const Complex c = random_simplicial(kMaxGenerators);
      max_gens = std::max(max_gens, c.degree.size());
      const FilteredComplex fc = to_filtered(c);
      const int span = fc.max_filtration() - fc.min_filtration() + 1;
      for (int k = 1; k <= span + 1; ++k) {
        const Page pg = page(fc, k);
        for (const auto& [pq, e] : pg.entries) {
          // Representatives sit in F_p and their boundaries in F_{p-k}.
          const int n = pq.first + pq.second;
          const auto& basis = fc.basis(n);
          for (const auto& rep : e.representatives) {
            std::vector<int> bd(fc.size(), 0);
            int top = fc.min_filtration() - 1;
            for (std::size_t pos = 0; pos < basis.size(); ++pos)
              if (rep.get(pos)) {
                top = std::max(top, fc.generator(basis[pos]).filtration);
                for (auto j : fc.boundary(basis[pos])) bd[j] ^= 1;
              }
            // An empty boundary lies in every filtration level.
            bool bd_ok = true;
            for (std::size_t j = 0; j < bd.size(); ++j)
              if (bd[j] && fc.generator(j).filtration > pq.first - k) bd_ok = false;
            if (top > pq.first || !bd_ok) ++bad_bidegree;
          }
        }
        for (const auto& [src, d] : pg.differentials) {
          const Bidegree tgt{src.first - k, src.second + k - 1};
          if (pg.target(src) != tgt) ++bad_bidegree;
          if (d.cols() != pg.dim(src.first, src.second)) ++bad_bidegree;
          if (d.cols() > 0 && pg.dim(tgt.first, tgt.second) > 0 && d.rows() != pg.dim(tgt.first, tgt.second)) ++bad_bidegree;
          const auto next = pg.differentials.find(tgt);
          if (next != pg.differentials.end() && d.rows() > 0 && next->second.cols() == d.rows() &&
              !next->second.multiply(d).is_zero())
            ++bad_square;
        }
      }
      const Convergence conv = converge(fc);
      for (int n : fc.degrees()) {
        std::size_t sum = 0;
        for (int p = fc.min_filtration(); p <= fc.max_filtration(); ++p) sum += conv.einf.dim(p, n - p);
        if (sum != homology_dim(c, n, [](std::size_t) { return true; })) ++bad_total;
      }
    }
  });
  const bool ok = bad_bidegree == 0 && bad_square == 0 && bad_total == 0 && t < kLimitSpectral;
  return {ok, std::to_string(kRandomComplexes) + " complexes (max " + std::to_string(max_gens) +
                  " generators): bidegree faults " + std::to_string(bad_bidegree) + ", d^2 faults " +
                  std::to_string(bad_square) + ", total homology faults " + std::to_string(bad_total) + " (" +
                  secs(t) + ")"};
}

// ---- 8 ----
std::map<int, std::size_t> local_homology_oracle(const Piece& pc) {
  std::map<int, std::size_t> out;
  if (pc.betti) {
    for (std::size_t m = 0; m < pc.betti->size(); ++m) out[static_cast<int>(m)] = (*pc.betti)[m];
  } else if (pc.mask) {
    const Betti b = betti_dense(build_complex(*pc.mask));
    for (std::size_t m = 0; m < b.size(); ++m) out[static_cast<int>(m)] = b[m];
  } else if (pc.complex) {
    Complex c;
    std::map<std::string, std::size_t> idx;
    for (const auto& [name, deg] : pc.complex->generators) {
      idx[name] = c.degree.size();
      c.degree.push_back(deg);
      c.filt.push_back(0);
      c.bd.emplace_back();
    }
    for (const auto& [from, to] : pc.complex->differential) c.bd[idx.at(from)].push_back(idx.at(to));
    std::set<int> degs(c.degree.begin(), c.degree.end());
    for (int m : degs) out[m] = homology_dim(c, m, [](std::size_t) { return true; });
  }
  return out;
}

Outcome e1_formula() {
  bool ok = true;
  std::ostringstream why;
  const std::vector<std::pair<std::string, QMDDescriptor>> all{
      {"annulus_kunneth", fixtures::annulus_kunneth_descriptor()}, {"cancellation", fixtures::cancellation_descriptor()},
      {"length_two", fixtures::length_two_descriptor()},           {"five_piece", fixtures::five_piece_descriptor()},
      {"log_corner", fixtures::log_corner_descriptor()},           {"four_lines", fixtures::four_lines_descriptor()}};
  for (const auto& [name, d] : all) {
    std::vector<std::size_t> order(d.pieces.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d.pieces[a].action < d.pieces[b].action; });
    std::map<Bidegree, std::size_t> want;
    for (std::size_t r = 0; r < order.size(); ++r) {
      const Piece& pc = d.pieces[order[r]];
      const int p = static_cast<int>(r) + 1;
      for (const auto& [m, dim] : local_homology_oracle(pc))
        if (dim) want[{p, m + pc.iota - p}] += dim;
    }
    const auto got = page(build_from_qmd(d), 1).dims();
    double lo = d.pieces.front().action, hi = lo;
    for (const auto& pc : d.pieces) {
      lo = std::min(lo, pc.action);
      hi = std::max(hi, pc.action);
    }
    const std::vector<double> cutoffs{0.5 * (lo + hi) + 1e-3, hi + 0.5, hi + 100.0};
    const bool limit = directed_limit_check(d, cutoffs).ok &&
                       page(build_from_qmd(truncate_by_action(d, cutoffs.back())), 1).dims() == got;
    if (got != want || !limit) {
      ok = false;
      why << " " << name << (got != want ? " E1" : "") << (limit ? "" : " limit");
    }
  }
  return {ok, std::to_string(all.size()) + " descriptors, 3 cutoffs each" + why.str()};
}

// ---- 9 ----
Outcome maslov_axioms() {
  std::size_t concat_bad = 0, parity_bad = 0, constant_bad = 0, conj_bad = 0, reparam_bad = 0, shift_bad = 0;
  for (int trial = 0; trial < kRandomPaths; ++trial) {
    {
      const auto a1 = random_path(uniform(-kPi, kPi)), b1 = random_path(uniform(-kPi, kPi));
      const auto a2 = random_path(own_lift(a1.angles).back());
      const auto b2 = random_path(own_lift(b1.angles).back() + kPi * uniform_int(-1, 1));
      if (!(maslov(concat(a1, a2), concat(b1, b2)) == maslov(a1, b1) + maslov(a2, b2))) ++concat_bad;
    }
    const auto [a, b] = random_pair();
    const HalfInteger mu = maslov(a, b);
    const long dims = intersection_dim(a, b, 0.0) + intersection_dim(a, b, 1.0);
    if (((mu.twice - dims) % 2 + 2) % 2 != 0) ++parity_bad;
    try {
      const long shift = index_shift(mu, dims);
      if (2 * shift != mu.twice - dims) ++shift_bad;
    } catch (const CoherenceError&) {
      ++shift_bad;
    }
    {
      auto c = b;
      const double offset = uniform(0.05, kPi - 0.05);
      for (double& v : c.angles) v += offset;
      auto e = b;
      for (double& v : e.angles) v += kPi * uniform_int(-2, 2);
      if (!(maslov(c, b) == HalfInteger{}) || !(maslov(e, b) == HalfInteger{})) ++constant_bad;
    }
    const Matrix2 m = random_sl2();
    if (!(maslov(conjugate(a, m), conjugate(b, m)) == mu)) ++conj_bad;
    const double gamma = std::exp(uniform(-1.0, 1.0));
    auto warp = [&](LagrangianLinePath p) {
      for (double& tt : p.times) tt = std::pow(tt, gamma);
      return p;
    };
    if (!(maslov(warp(a), warp(b)) == mu)) ++reparam_bad;
  }
  const bool ok = concat_bad + parity_bad + constant_bad + conj_bad + reparam_bad + shift_bad == 0;
  std::ostringstream s;
  s << kRandomPaths << " random pairs per axiom; faults: concat " << concat_bad << ", parity " << parity_bad
    << ", constant " << constant_bad << ", conjugation " << conj_bad << ", reparameterization " << reparam_bad
    << ", index shift " << shift_bad;
  return {ok, s.str()};
}

// ---- 10 ----
Outcome isolation() {
  bool ok = true;
  std::ostringstream why;
  const auto pairs = catalog::qmd_pairs();
  for (const auto& pr : pairs) {
    const IsolationReport r = isolation_scan(pr.f, pr.tau, pr.c, pr.s, pr.tols, kIsolationSteps);
    if (!(r.isolated_before_end && r.end_within_s && r.steps.size() == kIsolationSteps)) {
      ok = false;
      why << " " << pr.name << (r.isolated_before_end ? "" : " not-isolated") << (r.end_within_s ? "" : " end-outside-S");
    }
  }
  return {ok, std::to_string(pairs.size()) + " pairs, t = k/64" + why.str()};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"monodromy", monodromy_product}, {"reeb-parity", reeb_parity},  {"kunneth", kunneth},
      {"flattening", flattening},       {"tau-equivalence", tau_equivalence}, {"index-lemma", index_lemma},
      {"spectral-soundness", spectral_soundness}, {"e1-formula", e1_formula}, {"maslov-axioms", maslov_axioms},
      {"isolation", isolation}};
  return list;
}

bool run_one(std::size_t n) {
  const Criterion& c = criteria().at(n - 1);
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  std::printf("criterion %zu %s: %s: %s\n", n, c.name, o.passed ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
  return o.passed;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t count = criteria().size();
  if (argc > 2) {
    std::fprintf(stderr, "usage: acceptance [1-%zu]\n", count);
    return 2;
  }
  if (argc == 2) {
    const long n = std::strtol(argv[1], nullptr, 10);
    if (n < 1 || static_cast<std::size_t>(n) > count) {
      std::fprintf(stderr, "usage: acceptance [1-%zu]\n", count);
      return 2;
    }
    return run_one(static_cast<std::size_t>(n)) ? 0 : 1;
  }
  bool all = true;
  for (std::size_t n = 1; n <= count; ++n) all = run_one(n) && all;
  return all ? 0 : 1;
}
