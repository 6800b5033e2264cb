#pragma once

// The rho-flattening perturbation and verification of its thickening.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

#include "qmd/field.hpp"
#include "qmd/morse.hpp"
#include "qmd/rho.hpp"

namespace qmd {

class RegularValueError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct FlattenResult {
  ScalarField f_check;
  ScalarField shifted;  // the field that was flattened: f - min_C f, or f for flatten_qmd
  GridMask sigma;
  Box box;
  double delta = 0.0;     // value actually used after nudging
  std::size_t nudges = 0;
  std::map<std::string, bool> details;
  bool passed = false;
};

struct FlattenOptions {
  Tolerances tols;
  std::size_t max_nudges = 10;
  double nudge_factor = 1.01;
  /// Allowed mismatch, in cells, between Sigma and the detected critical set
  /// of the flattened field. The stencil reaches two cells.
  std::size_t sigma_slack = 2;
};

/// f_check = rho(f - min_C f); Sigma is the union of the components of
/// {f - min_C f <= delta/2} that meet C. Throws RegularValueError when no
/// nudge of delta gives a regular level.
FlattenResult flatten(const ScalarField& f, double delta, const CriticalSet& c, const FlattenOptions& opt = {});

/// Flattening of a QMD pair: f - tau + rho(tau). Near C this equals f - tau,
/// so the Hessian transverse to S is that of f - tau. Sigma is S n {tau <= delta/2}.
FlattenResult flatten_qmd(const ScalarField& f, const ScalarField& tau, double delta, const CriticalSet& c,
                          const SubmanifoldChart& s, const FlattenOptions& opt = {});

/// Case dim S < dim M: (1 + r^4) * rho(f|_S - min) composed with the projection
/// to S, r the distance to S. Its critical set is the tube over Sigma_S, which
/// retracts onto Sigma_S.
FlattenResult flatten_along_chart(const ScalarField& f, double delta, const CriticalSet& c, const SubmanifoldChart& s,
                                  const FlattenOptions& opt = {});

class DescentEscapeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ThickeningReport {
  Betti betti_c;
  Betti betti_sigma;
  bool betti_equal = false;
  bool descent_ok = false;
  std::size_t descent_starts = 0;
  std::size_t max_steps_used = 0;
  bool passed = false;
};

/// Betti numbers of C and Sigma agree, and steepest descent on f from every
/// stencil-valid Sigma node stops inside C. Throws DescentEscapeError if a
/// descent path leaves `box`.
ThickeningReport verify_thickening(const ScalarField& f, const CriticalSet& c, const GridMask& sigma, const Box& box,
                                   std::size_t step_budget = 100000);

/// Negative index transverse to S agrees for f and f_check at every sampled C node.
bool index_preserved(const ScalarField& f, const ScalarField& f_check, const CriticalSet& c, const SubmanifoldChart& s,
                     const Tolerances& tols);

/// max |f - g| + max |grad f - grad g|.
double c1_distance(const ScalarField& f, const ScalarField& g);

}  // namespace qmd
