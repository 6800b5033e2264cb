#include "qmd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qmd::kernels {

namespace {

double gradient_norm(const ScalarField& f, std::size_t flat) {
  if (!stencil_ok(f, flat)) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double g : gradient_at(f, flat)) s += g * g;
  return std::sqrt(s);
}

double gradient_diff(const ScalarField& f, const ScalarField& g, std::size_t flat) {
  if (!stencil_ok(f, flat)) return 0.0;
  const auto a = gradient_at(f, flat);
  const auto b = gradient_at(g, flat);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

void check_same(const ScalarField& f, const ScalarField& g) {
  if (!f.same_grid(g)) throw GridMismatchError("fields live on different grids");
}

}  // namespace

namespace serial {

std::vector<double> gradient_norms(const ScalarField& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = gradient_norm(f, i);
  return out;
}

void apply_rho(const Rho& rho, std::span<const double> in, std::span<double> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = rho(in[i]);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_gradient_diff(const ScalarField& f, const ScalarField& g) {
  check_same(f, g);
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, gradient_diff(f, g, i));
  return m;
}

}  // namespace serial

namespace parallel {

std::vector<double> gradient_norms(const ScalarField& f) {
  std::vector<double> out(f.size());
  const long n = static_cast<long>(f.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = gradient_norm(f, static_cast<std::size_t>(i));
  return out;
}

void apply_rho(const Rho& rho, std::span<const double> in, std::span<double> out) {
  const long n = static_cast<long>(in.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = rho(in[static_cast<std::size_t>(i)]);
}

// max is exact and order independent, so the reductions match the serial loops.
double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  const long n = static_cast<long>(a.size());
#pragma omp parallel for schedule(static) reduction(max : m)
  for (long i = 0; i < n; ++i)
    m = std::max(m, std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]));
  return m;
}

double max_gradient_diff(const ScalarField& f, const ScalarField& g) {
  check_same(f, g);
  double m = 0.0;
  const long n = static_cast<long>(f.size());
#pragma omp parallel for schedule(static) reduction(max : m)
  for (long i = 0; i < n; ++i) m = std::max(m, gradient_diff(f, g, static_cast<std::size_t>(i)));
  return m;
}

}  // namespace parallel

}  // namespace qmd::kernels
