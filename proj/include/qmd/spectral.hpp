#pragma once

// Spectral sequence of a filtered chain complex over GF(2), homological
// indexing. Entries are addressed by (p, q) with total degree n = p + q.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmd/cubical.hpp"
#include "qmd/gf2.hpp"

namespace qmd {

struct Generator {
  std::string name;
  int degree = 0;
  int filtration = 0;
};

class FilteredComplex {
public:
  std::size_t add_generator(std::string name, int degree, int filtration);
  /// Toggles the coefficient of `to` in the boundary of `from`.
  void add_boundary(std::size_t from, std::size_t to);

  std::size_t size() const { return generators_.size(); }
  const std::vector<Generator>& generators() const { return generators_; }
  const Generator& generator(std::size_t i) const { return generators_.at(i); }
  const std::vector<std::size_t>& boundary(std::size_t i) const { return boundary_.at(i); }
  std::optional<std::size_t> find(const std::string& name) const;

  /// Generator indices of degree n, in insertion order; these index the
  /// coordinates of the degree-n chain space.
  const std::vector<std::size_t>& basis(int n) const;
  /// Position of generator i inside basis(degree(i)).
  std::size_t position(std::size_t i) const { return position_.at(i); }
  std::vector<int> degrees() const;
  int min_filtration() const;
  int max_filtration() const;

  /// Matrix of the boundary from degree n to degree n-1 (rows index degree n-1).
  gf2::Matrix differential(int n) const;

  // Optional labels per filtration level, filled by build_from_qmd.
  std::map<int, std::string> level_labels;
  std::map<int, double> level_actions;

private:
  std::vector<Generator> generators_;
  std::vector<std::vector<std::size_t>> boundary_;
  std::vector<std::size_t> position_;
  std::map<int, std::vector<std::size_t>> by_degree_;
};

struct Violation {
  std::string kind;  // "degree", "d_squared", "filtration"
  std::string from;
  std::string to;
  std::string message;
};

/// First violation of: the boundary lowers degree by one, d^2 = 0, and the
/// boundary never raises filtration.
std::optional<Violation> validate(const FilteredComplex& fc);

class FiltrationError : public std::invalid_argument {
public:
  explicit FiltrationError(const Violation& v) : std::invalid_argument(v.message), violation(v) {}
  Violation violation;
};

void require_valid(const FilteredComplex& fc);

using Bidegree = std::pair<int, int>;  // (p, q)

struct PageEntry {
  std::size_t dim = 0;
  // Representatives in the degree-(p+q) chain space, completing the
  // denominator to the numerator of the cycle/boundary quotient.
  std::vector<gf2::BitVector> representatives;
  gf2::Subspace numerator;
  gf2::Subspace denominator;
};

struct Page {
  int k = 0;
  std::map<Bidegree, PageEntry> entries;       // every (p,q) with a nonzero chain group
  std::map<Bidegree, gf2::Matrix> differentials;  // d_k keyed by source, rows index the target
  std::size_t dim(int p, int q) const;
  std::map<Bidegree, std::size_t> dims() const;  // nonzero entries only
  /// Target bidegree of d_k out of (p,q).
  Bidegree target(const Bidegree& src) const { return {src.first - k, src.second + k - 1}; }
};

class PageIndexError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// E^k by the cycle/boundary formula, with d_k induced by the boundary.
Page page(const FilteredComplex& fc, int k);

/// Checks d_k o d_k = 0 on the page.
bool differential_squares_to_zero(const Page& pg);

struct Convergence {
  int stable_index = 1;
  Page einf;
};

/// Smallest k >= 1 after which every page has the same dimensions.
Convergence converge(const FilteredComplex& fc);

/// dim H_n of the unfiltered complex, one entry per degree present.
std::map<int, std::size_t> total_homology(const FilteredComplex& fc);

// ---- descriptors -------------------------------------------------------

struct LocalComplex {
  std::vector<std::pair<std::string, int>> generators;          // (name, degree)
  std::vector<std::pair<std::string, std::string>> differential;  // (from, to)
};

struct Piece {
  std::string name;
  double action = 0.0;
  int iota = 0;
  std::optional<Betti> betti;
  std::optional<LocalComplex> complex;
  std::optional<GridMask> mask;
};

struct CrossTerm {
  std::string from;
  std::string to;
};

struct QMDDescriptor {
  std::vector<Piece> pieces;
  std::vector<CrossTerm> cross_terms;
};

class DescriptorError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Filtration level p is the piece's position after a stable sort by action,
/// counted from 1; a degree-m class of the piece sits in total degree
/// m + iota, so q = m + iota - p. Betti pieces contribute
/// "<piece>.h<m>_<i>" generators with no internal differential; complex pieces
/// contribute "<piece>.<generator>"; mask pieces contribute the cubical chains
/// "<piece>.c<k>_<i>".
FilteredComplex build_from_qmd(const QMDDescriptor& d);

/// Expected E^1 dimensions: local homology of each piece shifted by iota.
std::map<Bidegree, std::size_t> expected_e1(const QMDDescriptor& d);

QMDDescriptor truncate_by_action(const QMDDescriptor& d, double cutoff);

struct DirectedLimitReport {
  bool ok = true;
  std::vector<std::string> mismatches;
};

/// For increasing cutoffs, every E^1 entry present at a cutoff keeps its
/// dimension at every larger cutoff.
DirectedLimitReport directed_limit_check(const QMDDescriptor& d, const std::vector<double>& cutoffs);

}  // namespace qmd
