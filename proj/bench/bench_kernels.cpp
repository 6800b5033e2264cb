// Serial reference vs OpenMP kernels. Prints one line per kernel with the best
// of several repetitions and whether both versions agree.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "qmd/fixtures.hpp"
#include "qmd/gf2.hpp"
#include "qmd/kernels.hpp"

namespace {

double best_ms(const std::function<void()>& fn, int reps = 5) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

bool same(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i] || (std::isnan(a[i]) && std::isnan(b[i])))) return false;
  return true;
}

void row(const char* name, double serial_ms, double parallel_ms, bool agree) {
  std::printf("%-22s serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx  %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, agree ? "agree" : "MISMATCH");
}

}  // namespace

int main() {
  namespace k = qmd::kernels;
  std::printf("threads: %d\n", omp_get_max_threads());

  const qmd::ScalarField f = qmd::fixtures::kunneth_field();
  std::vector<double> gs, gp;
  const double ts = best_ms([&] { gs = k::serial::gradient_norms(f); });
  const double tp = best_ms([&] { gp = k::parallel::gradient_norms(f); });
  row("gradient_norms 4D", ts, tp, same(gs, gp));

  const qmd::Rho rho(0.1);
  std::vector<double> rs(f.size()), rp(f.size());
  const double rs_ms = best_ms([&] { k::serial::apply_rho(rho, f.values, rs); });
  const double rp_ms = best_ms([&] { k::parallel::apply_rho(rho, f.values, rp); });
  row("apply_rho", rs_ms, rp_ms, same(rs, rp));

  qmd::ScalarField g = f;
  g.values = rs;
  double ds = 0, dp = 0;
  const double gd_s = best_ms([&] { ds = k::serial::max_gradient_diff(f, g); });
  const double gd_p = best_ms([&] { dp = k::parallel::max_gradient_diff(f, g); });
  row("max_gradient_diff", gd_s, gd_p, ds == dp);

  std::mt19937_64 rng(12345);
  qmd::gf2::Matrix m(1500, 1500);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (rng() % 2) m.set(r, c);
  qmd::gf2::Matrix ms = m, mp = m;
  const double es = best_ms([&] { ms = m; qmd::gf2::serial::echelonize(ms); }, 3);
  const double ep = best_ms([&] { mp = m; qmd::gf2::echelonize(mp); }, 3);
  row("gf2 echelonize 1500^2", es, ep, ms == mp);
  return 0;
}
