#pragma once

// Sampled scalar fields on regular grids, finite-difference derivatives and
// critical-set detection.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qmd/cubical.hpp"

namespace qmd {

/// Row-major samples, last axis fastest. Node i on an axis sits at
/// origin + i*spacing. On a periodic axis the node count times the spacing is
/// the period.
struct ScalarField {
  std::vector<std::size_t> dims;
  std::vector<double> spacing;
  std::vector<bool> periodic;
  std::vector<double> origin;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(std::vector<std::size_t> dims_, std::vector<double> spacing_, std::vector<bool> periodic_,
              std::vector<double> origin_ = {});

  /// Samples fn on [lo,hi] per axis: n nodes including both ends on an open
  /// axis, n nodes covering [lo,hi) on a periodic one.
  static ScalarField sample(const std::vector<std::size_t>& dims, const std::vector<double>& lo,
                            const std::vector<double>& hi, const std::vector<bool>& periodic,
                            const std::function<double(std::span<const double>)>& fn);

  std::size_t rank() const { return dims.size(); }
  std::size_t size() const { return values.size(); }
  double coord(std::size_t axis, std::size_t i) const { return origin[axis] + static_cast<double>(i) * spacing[axis]; }
  std::vector<double> point(std::size_t flat) const;
  std::size_t flat_index(std::span<const std::size_t> idx) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  /// Flat index of idx shifted by `step` along `axis`, wrapping on periodic axes.
  /// The caller guarantees the result is inside the grid.
  std::size_t offset(std::size_t flat, std::size_t axis, long step) const;

  bool same_grid(const ScalarField& o) const;
  void validate() const;
  /// Empty mask on the node grid of this field.
  GridMask empty_mask() const { return GridMask(dims, periodic); }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

class GridMismatchError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Half-width of the fourth-order stencils.
inline constexpr std::size_t kStencilRadius = 2;

/// True when the full stencil around the node stays on the grid. Nodes closer
/// than kStencilRadius to an open boundary are never analysed.
bool stencil_ok(const ScalarField& f, std::size_t flat);

std::vector<double> gradient_at(const ScalarField& f, std::size_t flat);

/// Dense symmetric matrix, row-major.
struct SymMatrix {
  std::size_t n = 0;
  std::vector<double> a;
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  SymMatrix restrict_to(std::span<const std::size_t> axes) const;
};

/// Fourth-order central differences; mixed partials compose the first-derivative
/// stencil along both axes, so the result is exact on polynomials of degree at
/// most four in each variable. Throws std::out_of_range off the stencil domain.
SymMatrix hessian_at(const ScalarField& f, std::size_t flat);

/// Axis-aligned index box. On a periodic axis the box may wrap: it covers
/// start, start+1, ..., start+length-1 mod n.
struct Box {
  std::vector<std::size_t> start;
  std::vector<std::size_t> length;

  bool contains(const std::vector<std::size_t>& dims, std::span<const std::size_t> idx) const;
  GridMask mask(const std::vector<std::size_t>& dims, const std::vector<bool>& periodic) const;
};

Box bounding_box(const GridMask& m);
Box inflate(const Box& b, std::size_t cells, const std::vector<std::size_t>& dims, const std::vector<bool>& periodic);

struct CriticalSet {
  std::vector<GridMask> components;
  std::vector<Box> boxes;  // bounding box of each component
  double grad_tol = 0.0;

  GridMask all() const;
  std::size_t size() const { return components.size(); }
};

class NoCriticalPointsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Components of {node : |grad f| < grad_tol} under closed-cell adjacency.
CriticalSet detect_critical_set(const ScalarField& f, double grad_tol);
/// Same, but returns an empty set instead of throwing.
CriticalSet critical_nodes(const ScalarField& f, double grad_tol);

/// Chebyshev dilation and erosion of a node mask, respecting periodic axes.
GridMask dilate(const GridMask& m, std::size_t cells);
GridMask erode(const GridMask& m, std::size_t cells);

}  // namespace qmd
