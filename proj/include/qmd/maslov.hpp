#pragma once

// Relative Maslov index for paths of Lagrangian lines in the symplectic plane.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmd {

/// Exact element of (1/2)Z.
struct HalfInteger {
  long twice = 0;

  static HalfInteger from_int(long n) { return {2 * n}; }
  bool is_integer() const { return twice % 2 == 0; }
  std::string str() const;  // "0", "-2", "1/2", "-3/2"

  friend HalfInteger operator+(HalfInteger a, HalfInteger b) { return {a.twice + b.twice}; }
  friend HalfInteger operator-(HalfInteger a, HalfInteger b) { return {a.twice - b.twice}; }
  friend HalfInteger operator-(HalfInteger a) { return {-a.twice}; }
  friend bool operator==(HalfInteger, HalfInteger) = default;
};

/// Line through the origin at angle theta (mod pi), sampled at increasing
/// times from 0 to 1 and interpolated linearly in the lifted angle. The lift
/// takes, at each sample, the representative nearest the previous lift value;
/// consecutive samples exactly a quarter turn apart are rejected as ambiguous.
struct LagrangianLinePath {
  std::vector<double> times;
  std::vector<double> angles;

  void validate() const;
  std::vector<double> lifted() const;
  double lift_at(double t) const;
};

struct CrossingRecord {
  double time = 0.0;
  bool endpoint = false;
  int sign = 0;  // for breakpoint crossings, the contribution in half units is stored in `half_units`
  int half_units = 0;
};

class NonRegularCrossingError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class PathError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct MaslovResult {
  HalfInteger index;
  std::vector<CrossingRecord> crossings;
  bool identically_crossing = false;  // the lines agree for all t
};

/// Sum of crossing signs from the relative angular velocity; endpoint
/// crossings count one half. A crossing at an interior breakpoint contributes
/// half the sign of each one-sided velocity. Zero velocity at a crossing
/// throws, unless the lines coincide for all t (index 0).
MaslovResult maslov_crossings(const LagrangianLinePath& g, const LagrangianLinePath& g2, double tol = 1e-9);
HalfInteger maslov(const LagrangianLinePath& g, const LagrangianLinePath& g2, double tol = 1e-9);

/// g1 on [0,1/2], g2 on [1/2,1]; the end line of g1 must be the start line of g2.
LagrangianLinePath concat(const LagrangianLinePath& g1, const LagrangianLinePath& g2);
LagrangianLinePath reverse(const LagrangianLinePath& g);

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Image of every line under m (det m = 1). Segments are subdivided so the
/// image lift stays well resolved.
LagrangianLinePath conjugate(const LagrangianLinePath& g, const Matrix2& m, int subdivisions = 16);

class CoherenceError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// i_c - dim_c/2; requires 2 i_c = dim_c mod 2.
long index_shift(HalfInteger i_c, long dim_c);

/// Number of lines common to the two paths at a time (0 or 1 for n = 1).
int intersection_dim(const LagrangianLinePath& g, const LagrangianLinePath& g2, double t, double tol = 1e-9);

}  // namespace qmd
