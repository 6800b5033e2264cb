#pragma once

// Worked examples as executable cases. Every expected value carries an origin
// tag: `reported` values are stated as results of the theory, `derived` ones
// follow from a computation on the fixture, `elementary` ones are immediate.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmd/field.hpp"
#include "qmd/flatten.hpp"
#include "qmd/morse.hpp"

namespace qmd::catalog {

enum class Origin { reported, derived, elementary };
std::string to_string(Origin o);

struct Check {
  std::string name;
  Origin origin = Origin::derived;
  std::string expected;
  std::string actual;
  bool passed = false;
};

struct CaseReport {
  std::string name;
  std::vector<std::string> inputs;  // fixture names
  std::vector<Check> checks;
  bool passed = false;
};

using IntMatrix2 = std::array<std::array<long, 2>, 2>;

/// The literal product J T^-1 J T^-1 J T^-1 J T^2 with J = [[0,-1],[1,0]] and
/// T = [[1,1],[0,1]]. Throws std::logic_error if the determinant is not 1.
IntMatrix2 monodromy();
/// The same map written in the swapped basis (e2, e1).
IntMatrix2 monodromy_swapped();
std::string to_string(const IntMatrix2& m);

/// The half-integer points (0,0), (1/2,0), (0,1/2), (1/2,1/2) of the torus.
inline constexpr std::array<std::array<int, 2>, 4> kHalfPoints{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};  // in halves

/// connects[i][j]: a Reeb chord of velocity (q,p) runs from point i to point j
/// (i != j). The relation is symmetric.
struct ChordTable {
  std::array<std::array<bool, 4>, 4> connects{};
  friend bool operator==(const ChordTable&, const ChordTable&) = default;
};

/// Parity rules. Throws std::invalid_argument unless p, q > 0 and gcd(p,q) = 1.
ChordTable reeb_chords(long p, long q);
/// Direct search of u + s(q,p) = v mod Z^2 over s = k/(2pq), 0 < s < 1.
ChordTable reeb_oracle(long p, long q);

class UnknownExampleError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> list_examples();
/// Throws UnknownExampleError for names not in list_examples().
CaseReport run_example(const std::string& name);

/// A field with one critical component and a chart S through it.
struct Triple {
  std::string name;
  ScalarField f;
  CriticalSet c;
  SubmanifoldChart s;
  Tolerances tols;
};

/// A quasi-minimally degenerate pair (f, tau) with its critical set and chart.
struct QMDPair {
  std::string name;
  ScalarField f;
  ScalarField tau;
  CriticalSet c;
  SubmanifoldChart s;
  Tolerances tols;
};

/// Triples that pass check_minimally_degenerate.
std::vector<Triple> minimally_degenerate_triples();
std::vector<QMDPair> qmd_pairs();

/// Flattening inputs: f and its minimal component C.
struct FlattenCase {
  std::string name;
  ScalarField f;
  CriticalSet c;
};
std::vector<FlattenCase> flatten_cases();

inline const std::vector<double> kFlattenDeltas{0.2, 0.1, 0.05, 0.025};

/// One index comparison: the original field and its flattening, with the chart
/// the transverse index is taken against.
struct IndexCase {
  std::string name;
  ScalarField f;
  ScalarField f_check;
  CriticalSet c;
  SubmanifoldChart s;
  Tolerances tols;
};
std::vector<IndexCase> index_cases();

/// Restricts a critical set to one component.
CriticalSet single(const CriticalSet& c, std::size_t i);

}  // namespace qmd::catalog
