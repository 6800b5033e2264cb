#pragma once

// Degeneracy classification of critical sets: flattened degenerate,
// quasi-minimally degenerate and minimally degenerate, plus the auxiliary
// function tau that converts the last into the second.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmd/field.hpp"

namespace qmd {

struct EigenSystem {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[i] belongs to values[i]
};

class NotSymmetricError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// eig_tol (scaled by the matrix norm when that exceeds one).
EigenSystem eig_sym_system(const SymMatrix& m, double eig_tol);
std::vector<double> eig_sym(const SymMatrix& m, double eig_tol);

/// Coordinate-aligned local model of S: the listed axes vary freely and every
/// other axis is pinned to the node nearest base[axis]. No axes means S is a
/// point.
struct SubmanifoldChart {
  std::vector<std::size_t> axes;
  std::vector<double> base;

  static SubmanifoldChart full(std::size_t rank);
  std::vector<std::size_t> off_axes(std::size_t rank) const;
};

class ChartError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class MinimumMode {
  guarded,     // strict away from a guard band around C
  non_strict,  // C attains the minimum, nothing more
};

struct Tolerances {
  double grad_tol = 1e-6;
  double eig_tol = 1e-6;    // relative: kernel means |lambda| < eig_tol * max(1, spectral radius)
  double value_tol = 1e-9;  // absolute
  double angle_tol = 1e-4;  // radians
  std::size_t guard = 2;    // guard band width in cells
  std::size_t inflate = 3;  // isolating box margin in cells
  std::size_t max_samples = 4096;
  MinimumMode mode = MinimumMode::guarded;
};

enum class Classification { morse, morse_bott, flattened_degenerate, qmd, minimally_degenerate, unclassified };
std::string to_string(Classification c);

struct NodeSpectrum {
  std::vector<std::size_t> node;
  std::vector<double> eigenvalues;
};

struct DegeneracyReport {
  Classification classification = Classification::unclassified;
  bool passed = false;
  std::vector<NodeSpectrum> hessian_spectra;
  std::optional<std::size_t> negative_index;  // set when uniform over the sampled nodes
  std::map<std::string, bool> details;
  std::vector<std::string> notes;
};

/// Node mask of S on the grid of f. Throws ChartError for bad axes or a base
/// outside the grid.
GridMask chart_mask(const ScalarField& f, const SubmanifoldChart& s);

/// Deterministic subsample (at most tols.max_samples) of the nodes of a mask.
std::vector<std::size_t> sample_nodes(const GridMask& m, std::size_t max_samples);

std::size_t negative_index(const ScalarField& f, std::size_t node, double eig_tol);
/// Index of the Hessian restricted to the axes transverse to S.
std::size_t transverse_negative_index(const ScalarField& f, std::size_t node, const SubmanifoldChart& s, double eig_tol);

DegeneracyReport check_flattened_degenerate(const ScalarField& f, const CriticalSet& c, const SubmanifoldChart& s,
                                            const Tolerances& tols);
DegeneracyReport check_qmd(const ScalarField& f, const ScalarField& tau, const CriticalSet& c,
                           const SubmanifoldChart& s, const Tolerances& tols);
DegeneracyReport check_minimally_degenerate(const ScalarField& f, const CriticalSet& c, const SubmanifoldChart& s,
                                            const Tolerances& tols);
/// Morse (isolated, nondegenerate) or Morse-Bott (kernel of constant dimension
/// along the extended axes of the component) for a single component.
DegeneracyReport classify(const ScalarField& f, const CriticalSet& c, const Tolerances& tols);

class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// tau = dist(x,S)^4 + f(proj_S x) - min_C f inside the isolating box, blended
/// by a smooth cutoff to a positive constant outside it. Requires f|_S to be
/// minimal along C and Hess f to be nonnegative along S.
ScalarField construct_tau(const ScalarField& f, const CriticalSet& c, const SubmanifoldChart& s,
                          const Tolerances& tols);

/// Isolating box of the whole critical set: union bounding box inflated by
/// tols.inflate cells.
Box isolating_box(const ScalarField& f, const CriticalSet& c, const Tolerances& tols);

}  // namespace qmd
