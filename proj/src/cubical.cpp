#include "qmd/cubical.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

namespace qmd {

GridMask::GridMask(std::vector<std::size_t> dims_, std::vector<bool> periodic_, bool fill)
    : dims(std::move(dims_)), periodic(std::move(periodic_)) {
  if (periodic.size() != dims.size()) throw std::invalid_argument("mask: periodic flags do not match dims");
  std::size_t n = 1;
  for (auto d : dims) {
    if (d == 0) throw std::invalid_argument("mask: every axis needs at least one cell");
    n *= d;
  }
  cells.assign(dims.empty() ? 0 : n, fill ? 1 : 0);
}

std::size_t GridMask::count() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](std::uint8_t c) { return c != 0; }));
}

std::size_t GridMask::flat_index(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < dims.size(); ++a) flat = flat * dims[a] + idx[a];
  return flat;
}

std::vector<std::size_t> GridMask::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(dims.size());
  for (std::size_t a = dims.size(); a-- > 0;) {
    idx[a] = flat % dims[a];
    flat /= dims[a];
  }
  return idx;
}

void GridMask::validate() const {
  if (dims.empty()) throw std::invalid_argument("mask: no axes");
  if (periodic.size() != dims.size()) throw std::invalid_argument("mask: periodic flags do not match dims");
  std::size_t n = 1;
  for (auto d : dims) {
    if (d == 0) throw std::invalid_argument("mask: every axis needs at least one cell");
    n *= d;
  }
  if (cells.size() != n) throw std::invalid_argument("mask: cell count does not match dims");
}

GridMask mask_product(const GridMask& a, const GridMask& b) {
  std::vector<std::size_t> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  std::vector<bool> periodic = a.periodic;
  periodic.insert(periodic.end(), b.periodic.begin(), b.periodic.end());
  GridMask out(dims, periodic);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a.at(i)) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b.at(j)) out.set(i * b.size() + j);
  }
  return out;
}

GridMask refine(const GridMask& m) {
  std::vector<std::size_t> dims = m.dims;
  for (auto& d : dims) d *= 2;
  GridMask out(dims, m.periodic);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    auto idx = out.unflatten(flat);
    for (auto& i : idx) i /= 2;
    if (m.at(m.flat_index(idx))) out.set(flat);
  }
  return out;
}

GridMask mask_union(const GridMask& a, const GridMask& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("mask union: shape mismatch");
  GridMask out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.cells[i] = a.cells[i] | b.cells[i];
  return out;
}

GridMask mask_intersection(const GridMask& a, const GridMask& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("mask intersection: shape mismatch");
  GridMask out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.cells[i] = a.cells[i] & b.cells[i];
  return out;
}

std::vector<GridMask> connected_components(const GridMask& m) {
  m.validate();
  const std::size_t d = m.rank();
  std::vector<int> label(m.size(), -1);
  std::vector<GridMask> out;
  // Offsets in {-1,0,1}^d minus the origin.
  std::vector<std::vector<int>> offsets;
  std::size_t combos = 1;
  for (std::size_t a = 0; a < d; ++a) combos *= 3;
  for (std::size_t c = 0; c < combos; ++c) {
    std::vector<int> off(d);
    std::size_t r = c;
    bool zero = true;
    for (std::size_t a = 0; a < d; ++a) {
      off[a] = static_cast<int>(r % 3) - 1;
      r /= 3;
      zero = zero && off[a] == 0;
    }
    if (!zero) offsets.push_back(std::move(off));
  }
  for (std::size_t seed = 0; seed < m.size(); ++seed) {
    if (!m.at(seed) || label[seed] >= 0) continue;
    const int id = static_cast<int>(out.size());
    GridMask comp(m.dims, m.periodic);
    std::queue<std::size_t> q;
    q.push(seed);
    label[seed] = id;
    std::vector<std::size_t> nb(d);
    while (!q.empty()) {
      const std::size_t cur = q.front();
      q.pop();
      comp.set(cur);
      const auto idx = m.unflatten(cur);
      for (const auto& off : offsets) {
        bool ok = true;
        for (std::size_t a = 0; a < d && ok; ++a) {
          const long long v = static_cast<long long>(idx[a]) + off[a];
          const long long n = static_cast<long long>(m.dims[a]);
          if (m.periodic[a])
            nb[a] = static_cast<std::size_t>((v % n + n) % n);
          else if (v < 0 || v >= n)
            ok = false;
          else
            nb[a] = static_cast<std::size_t>(v);
        }
        if (!ok) continue;
        const std::size_t f = m.flat_index(nb);
        if (m.at(f) && label[f] < 0) {
          label[f] = id;
          q.push(f);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::size_t CubicalComplex::total_cells() const {
  std::size_t n = 0;
  for (const auto& c : cells_) n += c.size();
  return n;
}

std::span<const std::uint32_t> CubicalComplex::boundary_column(std::size_t k, std::size_t i) const {
  if (k == 0) return {};
  const auto& off = offsets_[k];
  return {faces_[k].data() + off[i], off[i + 1] - off[i]};
}

gf2::Matrix CubicalComplex::boundary_matrix(std::size_t k) const {
  if (k == 0 || k > dim_) return gf2::Matrix(k == 0 ? 0 : cell_count(k - 1), cell_count(k));
  gf2::Matrix m(cell_count(k - 1), cell_count(k));
  for (std::size_t j = 0; j < cell_count(k); ++j)
    for (auto r : boundary_column(k, j)) m.flip(r, j);
  return m;
}

std::vector<std::size_t> CubicalComplex::combinatorial_coords(std::uint64_t linear) const {
  std::vector<std::size_t> c(dim_);
  for (std::size_t a = dim_; a-- > 0;) {
    c[a] = static_cast<std::size_t>(linear % extents_[a]);
    linear /= extents_[a];
  }
  return c;
}

std::size_t CubicalComplex::cube_dimension(std::uint64_t linear) const {
  std::size_t k = 0;
  for (auto c : combinatorial_coords(linear)) k += c & 1u;
  return k;
}

long long CubicalComplex::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t k = 0; k < cells_.size(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(cells_[k].size());
  return chi;
}

bool CubicalComplex::boundary_squared_zero() const {
  for (std::size_t k = 2; k <= dim_; ++k) {
    std::vector<std::uint8_t> acc(cell_count(k - 2), 0);
    for (std::size_t j = 0; j < cell_count(k); ++j) {
      std::vector<std::uint32_t> touched;
      for (auto f : boundary_column(k, j))
        for (auto g : boundary_column(k - 1, f)) {
          acc[g] ^= 1u;
          touched.push_back(g);
        }
      for (auto g : touched) {
        if (acc[g]) return false;
      }
    }
  }
  return true;
}

CubicalComplex build_complex(const GridMask& mask) {
  mask.validate();
  if (mask.empty()) throw EmptyMaskError("build_complex: mask selects no cells");
  const std::size_t d = mask.rank();
  CubicalComplex cx;
  cx.dim_ = d;
  cx.periodic_ = mask.periodic;
  cx.extents_.resize(d);
  std::uint64_t total = 1;
  for (std::size_t a = 0; a < d; ++a) {
    cx.extents_[a] = mask.periodic[a] ? 2 * mask.dims[a] : 2 * mask.dims[a] + 1;
    total *= cx.extents_[a];
  }

  auto linear_of = [&](const std::vector<std::size_t>& c) {
    std::uint64_t l = 0;
    for (std::size_t a = 0; a < d; ++a) l = l * cx.extents_[a] + c[a];
    return l;
  };

  // Mark the closure of every selected top cell.
  std::vector<std::uint8_t> present(total, 0);
  std::size_t combos = 1;
  for (std::size_t a = 0; a < d; ++a) combos *= 3;
  std::vector<std::size_t> c(d);
  for (std::size_t flat = 0; flat < mask.size(); ++flat) {
    if (!mask.at(flat)) continue;
    const auto idx = mask.unflatten(flat);
    for (std::size_t s = 0; s < combos; ++s) {
      std::size_t r = s;
      for (std::size_t a = 0; a < d; ++a) {
        std::size_t v = 2 * idx[a] + (r % 3);
        r /= 3;
        if (mask.periodic[a]) v %= cx.extents_[a];
        c[a] = v;
      }
      present[linear_of(c)] = 1;
    }
  }

  cx.cells_.assign(d + 1, {});
  std::vector<std::uint32_t> position(total, 0);
  for (std::uint64_t l = 0; l < total; ++l) {
    if (!present[l]) continue;
    const std::size_t k = cx.cube_dimension(l);
    position[l] = static_cast<std::uint32_t>(cx.cells_[k].size());
    cx.cells_[k].push_back(l);
  }

  cx.offsets_.assign(d + 1, {});
  cx.faces_.assign(d + 1, {});
  for (std::size_t k = 1; k <= d; ++k) {
    auto& off = cx.offsets_[k];
    auto& faces = cx.faces_[k];
    off.reserve(cx.cells_[k].size() + 1);
    off.push_back(0);
    std::vector<std::uint32_t> col;
    for (auto l : cx.cells_[k]) {
      col.clear();
      auto cc = cx.combinatorial_coords(l);
      for (std::size_t a = 0; a < d; ++a) {
        if (!(cc[a] & 1u)) continue;
        const std::size_t orig = cc[a];
        for (int side : {-1, 1}) {
          std::size_t v = static_cast<std::size_t>(static_cast<long long>(orig) + side);
          if (cx.periodic_[a]) v %= cx.extents_[a];
          cc[a] = v;
          col.push_back(position[linear_of(cc)]);
        }
        cc[a] = orig;
      }
      // A one-cell periodic axis glues both ends of an edge to the same
      // vertex; identical faces cancel in pairs.
      std::sort(col.begin(), col.end());
      std::size_t w = 0;
      for (std::size_t i = 0; i < col.size();) {
        std::size_t j = i;
        while (j < col.size() && col[j] == col[i]) ++j;
        if ((j - i) % 2 == 1) col[w++] = col[i];
        i = j;
      }
      col.resize(w);
      faces.insert(faces.end(), col.begin(), col.end());
      off.push_back(static_cast<std::uint32_t>(faces.size()));
    }
  }
  return cx;
}

namespace {

void symmetric_difference_into(std::vector<std::uint32_t>& col, const std::vector<std::uint32_t>& other,
                               std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(scratch));
  col.swap(scratch);
}

}  // namespace

Betti betti(const CubicalComplex& c) {
  const std::size_t d = c.dimension();
  std::vector<std::size_t> ranks(d + 2, 0);
  std::vector<std::uint8_t> cleared;  // k-cells known to reduce to zero in d_k
  std::vector<std::uint32_t> scratch;
  for (std::size_t k = d; k >= 1; --k) {
    const std::size_t ncols = c.cell_count(k);
    const std::size_t nrows = c.cell_count(k - 1);
    if (cleared.size() != ncols) cleared.assign(ncols, 0);
    std::vector<std::int64_t> pivot_of(nrows, -1);
    std::vector<std::vector<std::uint32_t>> reduced(ncols);
    std::vector<std::uint8_t> next_cleared(nrows, 0);
    std::size_t r = 0;
    std::vector<std::uint32_t> col;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (cleared[j]) continue;
      auto b = c.boundary_column(k, j);
      col.assign(b.begin(), b.end());
      while (!col.empty()) {
        const auto low = col.back();
        const auto p = pivot_of[low];
        if (p < 0) break;
        symmetric_difference_into(col, reduced[static_cast<std::size_t>(p)], scratch);
      }
      if (col.empty()) continue;
      pivot_of[col.back()] = static_cast<std::int64_t>(j);
      next_cleared[col.back()] = 1;
      reduced[j] = col;
      ++r;
    }
    ranks[k] = r;
    cleared.swap(next_cleared);
  }
  Betti b(d + 1);
  for (std::size_t k = 0; k <= d; ++k) b[k] = c.cell_count(k) - ranks[k] - ranks[k + 1];
  return b;
}

Betti betti_dense(const CubicalComplex& c) {
  const std::size_t d = c.dimension();
  std::vector<std::size_t> ranks(d + 2, 0);
  for (std::size_t k = 1; k <= d; ++k) ranks[k] = gf2::rank(c.boundary_matrix(k));
  Betti b(d + 1);
  for (std::size_t k = 0; k <= d; ++k) b[k] = c.cell_count(k) - ranks[k] - ranks[k + 1];
  return b;
}

Betti betti_product_check(const Betti& a, const Betti& b) {
  if (a.empty() || b.empty()) return {};
  Betti out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Betti trim(Betti b) {
  while (b.size() > 1 && b.back() == 0) b.pop_back();
  return b;
}

long long alternating_sum(const Betti& b) {
  long long s = 0;
  for (std::size_t k = 0; k < b.size(); ++k) s += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(b[k]);
  return s;
}

}  // namespace qmd
