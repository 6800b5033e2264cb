#pragma once

// Cubical complexes of grid masks and their homology over GF(2).

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qmd/gf2.hpp"

namespace qmd {

using Betti = std::vector<std::size_t>;

/// Membership bit per top-dimensional cell of a rectangular grid. A periodic
/// axis with n cells identifies index n with 0. Storage is row-major with the
/// last axis varying fastest.
struct GridMask {
  std::vector<std::size_t> dims;
  std::vector<bool> periodic;
  std::vector<std::uint8_t> cells;

  GridMask() = default;
  GridMask(std::vector<std::size_t> dims_, std::vector<bool> periodic_, bool fill = false);

  std::size_t rank() const { return dims.size(); }
  std::size_t size() const { return cells.size(); }
  std::size_t count() const;
  bool empty() const { return count() == 0; }

  bool at(std::size_t flat) const { return cells[flat] != 0; }
  void set(std::size_t flat, bool v = true) { cells[flat] = v ? 1 : 0; }
  std::size_t flat_index(std::span<const std::size_t> idx) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;

  bool same_shape(const GridMask& other) const { return dims == other.dims && periodic == other.periodic; }
  void validate() const;

  friend bool operator==(const GridMask&, const GridMask&) = default;
};

GridMask mask_product(const GridMask& a, const GridMask& b);
/// Subdivides every cell into 2^d cells; the realized space is unchanged.
GridMask refine(const GridMask& m);
GridMask mask_union(const GridMask& a, const GridMask& b);
GridMask mask_intersection(const GridMask& a, const GridMask& b);

/// Components under closed-cell adjacency: two cells touch when their closures
/// share a vertex (per-axis index offset at most one, with periodic wrap). This
/// is the adjacency under which the cubical complex of the mask is connected.
std::vector<GridMask> connected_components(const GridMask& m);

class EmptyMaskError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The closure of the selected top cells. Elementary cubes are addressed in
/// combinatorial coordinates: on each axis an even coordinate is a vertex and
/// an odd one an edge, so top cell i sits at 2i+1. Boundaries are stored as
/// sparse columns of face positions; dense matrices are built on request.
class CubicalComplex {
public:
  std::size_t dimension() const { return dim_; }
  std::size_t cell_count(std::size_t k) const { return k < cells_.size() ? cells_[k].size() : 0; }
  std::size_t total_cells() const;
  const std::vector<std::uint64_t>& cells(std::size_t k) const { return cells_.at(k); }

  /// Faces (as positions among the (k-1)-cells) of the i-th k-cell, ascending.
  std::span<const std::uint32_t> boundary_column(std::size_t k, std::size_t i) const;
  /// Dense boundary map from k-cells to (k-1)-cells (rows are (k-1)-cells).
  gf2::Matrix boundary_matrix(std::size_t k) const;

  std::vector<std::size_t> combinatorial_coords(std::uint64_t linear) const;
  std::size_t cube_dimension(std::uint64_t linear) const;

  long long euler_characteristic() const;
  /// Checks that every boundary of a boundary cancels over GF(2).
  bool boundary_squared_zero() const;

  friend CubicalComplex build_complex(const GridMask& mask);

private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> extents_;
  std::vector<bool> periodic_;
  std::vector<std::vector<std::uint64_t>> cells_;
  // CSR layout per dimension: offsets_[k][i]..offsets_[k][i+1] index faces_[k].
  std::vector<std::vector<std::uint32_t>> offsets_;
  std::vector<std::vector<std::uint32_t>> faces_;
};

CubicalComplex build_complex(const GridMask& mask);

/// betti_k = dim ker d_k - rank d_{k+1}; one entry per dimension 0..dim.
/// Uses sparse column reduction with clearing.
Betti betti(const CubicalComplex& c);
/// Same numbers from dense GF(2) ranks of the boundary matrices. Only for small
/// complexes; kept as an independent route for cross-checks.
Betti betti_dense(const CubicalComplex& c);

/// Graded convolution c_n = sum_k a_k b_{n-k} (Kunneth over a field).
Betti betti_product_check(const Betti& a, const Betti& b);

/// Drops trailing zero entries.
Betti trim(Betti b);

long long alternating_sum(const Betti& b);

}  // namespace qmd
