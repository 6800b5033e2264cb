#include "qmd/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qmd::fixtures {

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField square(std::size_t n, double (*fn)(double, double)) {
  return ScalarField::sample({n, n}, {-1.0, -1.0}, {1.0, 1.0}, {false, false},
                             [fn](std::span<const double> p) { return fn(p[0], p[1]); });
}

ScalarField line(std::size_t n, double (*fn)(double)) {
  return ScalarField::sample({n}, {-1.0}, {1.0}, {false}, [fn](std::span<const double> p) { return fn(p[0]); });
}

Piece betti_piece(std::string name, double action, int iota, Betti b) {
  Piece p;
  p.name = std::move(name);
  p.action = action;
  p.iota = iota;
  p.betti = std::move(b);
  return p;
}

Piece mask_piece(std::string name, double action, int iota, GridMask m) {
  Piece p;
  p.name = std::move(name);
  p.action = action;
  p.iota = iota;
  p.mask = std::move(m);
  return p;
}

}  // namespace

ScalarField x_squared() {
  return line(201, [](double x) { return x * x; });
}

ScalarField quadric_plus_quartic() {
  return line(101, [](double x) { return x * x + x * x * x * x; });
}

ScalarField quartic() {
  return line(101, [](double x) { return x * x * x * x; });
}

ScalarField saddle() {
  return square(41, [](double x, double y) { return x * x - y * y; });
}

ScalarField saddle_tau() {
  return square(41, [](double x, double y) { return x * x + y * y * y * y; });
}

ScalarField zero_like(const ScalarField& f) {
  ScalarField z = f;
  std::fill(z.values.begin(), z.values.end(), 0.0);
  return z;
}

ScalarField torus_height(std::size_t n) {
  return ScalarField::sample({n, n}, {0.0, 0.0}, {2 * kPi, 2 * kPi}, {true, true},
                             [](std::span<const double> p) { return std::sin(p[0]); });
}

ScalarField figure_eight(int sign) {
  if (sign >= 0) return square(21, [](double x, double y) { return x * x * y * y; });
  return square(21, [](double x, double y) { return -x * x * y * y; });
}

ScalarField corner(std::size_t n) {
  return ScalarField::sample({n, n}, {-1.0, -1.0}, {1.0, 1.0}, {false, false}, [](std::span<const double> p) {
    const double v = p[0] * p[1];
    return v * v;
  });
}

ScalarField flattened_mask() {
  return square(81, [](double x, double y) {
    // g <= 0 exactly on the face: a disk minus two eyes.
    const double outer = std::hypot(x, y) - 0.6;
    const double eye1 = 0.12 - std::hypot(x + 0.25, y - 0.15);
    const double eye2 = 0.12 - std::hypot(x - 0.25, y - 0.15);
    const double g = std::max({outer, eye1, eye2});
    return g > 0.0 ? std::exp(-2.0 / g) : 0.0;
  });
}

ScalarField kunneth_field() {
  const double h = 1.0 / 23.0;
  const double a = 6 * h, b = 17 * h;
  return ScalarField::sample({24, 16, 24, 16}, {0.0, 0.0, 0.0, 0.0}, {1.0, 2 * kPi, 1.0, 2 * kPi},
                             {false, true, false, true}, [a, b](std::span<const double> p) {
                               auto prof = [a, b](double s) {
                                 const double lo = std::max(0.0, a - s), hi = std::max(0.0, s - b);
                                 return lo * lo + hi * hi;
                               };
                               return prof(p[0]) + prof(p[2]);
                             });
}

GridMask annulus_mask(std::size_t radial, std::size_t angular) {
  return GridMask({radial, angular}, {false, true}, true);
}

GridMask pants_mask() {
  GridMask m({5, 7}, {false, false}, true);
  m.set(m.flat_index(std::vector<std::size_t>{2, 2}), false);
  m.set(m.flat_index(std::vector<std::size_t>{2, 4}), false);
  return m;
}

SubmanifoldChart x_axis() { return {{0}, {0.0, 0.0}}; }

SubmanifoldChart origin_point(std::size_t rank) { return {{}, std::vector<double>(rank, 0.0)}; }

SubmanifoldChart torus_circle(double theta0) { return {{1}, {theta0, 0.0}}; }

QMDDescriptor annulus_kunneth_descriptor() {
  QMDDescriptor d;
  d.pieces.push_back(betti_piece("A1xA2", 0.0, 0, {1, 2, 1}));
  return d;
}

QMDDescriptor cancellation_descriptor() {
  QMDDescriptor d;
  d.pieces.push_back(betti_piece("x", 1.0, 0, {1}));
  d.pieces.push_back(betti_piece("y", 2.0, 1, {1}));
  d.cross_terms.push_back({"y.h0_0", "x.h0_0"});
  return d;
}

QMDDescriptor length_two_descriptor() {
  QMDDescriptor d;
  d.pieces.push_back(betti_piece("x", 1.0, 0, {1}));
  d.pieces.push_back(betti_piece("w", 2.0, 4, {1}));
  d.pieces.push_back(betti_piece("z", 3.0, 1, {1}));
  d.cross_terms.push_back({"z.h0_0", "x.h0_0"});
  return d;
}

QMDDescriptor five_piece_descriptor() {
  QMDDescriptor d;
  d.pieces.push_back(betti_piece("p1", 1.0, 0, {1, 1}));
  d.pieces.push_back(betti_piece("p2", 2.0, 1, {1}));
  d.pieces.push_back(betti_piece("p3", 3.0, 0, {1, 2, 1}));
  d.pieces.push_back(betti_piece("p4", 4.0, 2, {1, 1}));
  d.pieces.push_back(betti_piece("p5", 5.0, 1, {1}));
  d.cross_terms.push_back({"p2.h0_0", "p1.h0_0"});
  d.cross_terms.push_back({"p4.h0_0", "p3.h1_0"});
  d.cross_terms.push_back({"p5.h0_0", "p1.h0_0"});
  return d;
}

QMDDescriptor log_corner_descriptor() {
  QMDDescriptor d;
  d.pieces.push_back(betti_piece("interior", 0.0, 0, {1}));
  d.pieces.push_back(mask_piece("lineband", 1.0, 1, annulus_mask(2, 4)));
  d.pieces.push_back(betti_piece("conicband", 2.0, 1, {1, 1}));
  GridMask torus({4, 4}, {true, true}, true);
  d.pieces.push_back(mask_piece("corner", 3.0, 2, torus));
  return d;
}

QMDDescriptor four_lines_descriptor() {
  QMDDescriptor d;
  for (int i = 0; i < 4; ++i) d.pieces.push_back(mask_piece("line" + std::to_string(i), 0.0, 0, pants_mask()));
  for (int i = 0; i < 6; ++i) d.pieces.push_back(betti_piece("exc" + std::to_string(i), 1.0, 0, {1, 1}));
  return d;
}

}  // namespace qmd::fixtures
