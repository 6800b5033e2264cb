#include "qmd/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmd/kernels.hpp"

namespace qmd {

ScalarField::ScalarField(std::vector<std::size_t> dims_, std::vector<double> spacing_, std::vector<bool> periodic_,
                         std::vector<double> origin_)
    : dims(std::move(dims_)), spacing(std::move(spacing_)), periodic(std::move(periodic_)), origin(std::move(origin_)) {
  if (origin.empty()) origin.assign(dims.size(), 0.0);
  std::size_t n = dims.empty() ? 0 : 1;
  for (auto d : dims) n *= d;
  values.assign(n, 0.0);
  validate();
}

ScalarField ScalarField::sample(const std::vector<std::size_t>& dims, const std::vector<double>& lo,
                                const std::vector<double>& hi, const std::vector<bool>& periodic,
                                const std::function<double(std::span<const double>)>& fn) {
  if (lo.size() != dims.size() || hi.size() != dims.size() || periodic.size() != dims.size())
    throw std::invalid_argument("sample: axis data lengths differ");
  std::vector<double> spacing(dims.size());
  for (std::size_t a = 0; a < dims.size(); ++a) {
    if (dims[a] < 2) throw std::invalid_argument("sample: need at least two nodes per axis");
    const double n = static_cast<double>(periodic[a] ? dims[a] : dims[a] - 1);
    spacing[a] = (hi[a] - lo[a]) / n;
  }
  ScalarField f(dims, spacing, periodic, lo);
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = fn(f.point(i));
  f.validate();
  return f;
}

std::vector<double> ScalarField::point(std::size_t flat) const {
  std::vector<double> p(dims.size());
  for (std::size_t a = dims.size(); a-- > 0;) {
    p[a] = coord(a, flat % dims[a]);
    flat /= dims[a];
  }
  return p;
}

std::size_t ScalarField::flat_index(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < dims.size(); ++a) flat = flat * dims[a] + idx[a];
  return flat;
}

std::vector<std::size_t> ScalarField::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(dims.size());
  for (std::size_t a = dims.size(); a-- > 0;) {
    idx[a] = flat % dims[a];
    flat /= dims[a];
  }
  return idx;
}

std::size_t ScalarField::offset(std::size_t flat, std::size_t axis, long step) const {
  std::size_t stride = 1;
  for (std::size_t a = dims.size(); a-- > axis + 1;) stride *= dims[a];
  const long n = static_cast<long>(dims[axis]);
  const long i = static_cast<long>((flat / stride) % dims[axis]);
  long j = i + step;
  if (periodic[axis]) j = ((j % n) + n) % n;
  return flat + static_cast<std::size_t>(j - i) * stride;
}

bool ScalarField::same_grid(const ScalarField& o) const {
  if (dims != o.dims || periodic != o.periodic) return false;
  for (std::size_t a = 0; a < dims.size(); ++a) {
    const double tol = 1e-12 * std::max(1.0, std::abs(spacing[a]));
    if (std::abs(spacing[a] - o.spacing[a]) > tol || std::abs(origin[a] - o.origin[a]) > tol) return false;
  }
  return true;
}

void ScalarField::validate() const {
  if (dims.empty()) throw std::invalid_argument("field: no axes");
  if (spacing.size() != dims.size() || periodic.size() != dims.size() || origin.size() != dims.size())
    throw std::invalid_argument("field: axis data lengths differ");
  std::size_t n = 1;
  for (std::size_t a = 0; a < dims.size(); ++a) {
    if (dims[a] == 0) throw std::invalid_argument("field: empty axis");
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a])) throw std::invalid_argument("field: spacing must be positive");
    n *= dims[a];
  }
  if (values.size() != n) throw std::invalid_argument("field: value count does not match dims");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("field: non-finite sample");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  if (!same_grid(o)) throw GridMismatchError("field addition: grids differ");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  if (!same_grid(o)) throw GridMismatchError("field subtraction: grids differ");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (auto& v : values) v *= s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

bool stencil_ok(const ScalarField& f, std::size_t flat) {
  for (std::size_t a = f.dims.size(); a-- > 0;) {
    const std::size_t i = flat % f.dims[a];
    flat /= f.dims[a];
    if (f.periodic[a]) {
      if (f.dims[a] < 2 * kStencilRadius + 1) return false;
    } else if (i < kStencilRadius || i + kStencilRadius >= f.dims[a]) {
      return false;
    }
  }
  return true;
}

namespace {

// First-derivative weights for offsets -2..2, to be divided by h.
constexpr double kD1[5] = {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};
// Second-derivative weights for offsets -2..2, to be divided by h^2.
constexpr double kD2[5] = {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0};

void require_stencil(const ScalarField& f, std::size_t flat) {
  if (flat >= f.size()) throw std::out_of_range("node index outside the grid");
  if (!stencil_ok(f, flat)) throw std::out_of_range("node " + std::to_string(flat) + " is too close to an open boundary");
}

}  // namespace

std::vector<double> gradient_at(const ScalarField& f, std::size_t flat) {
  require_stencil(f, flat);
  std::vector<double> g(f.rank());
  for (std::size_t a = 0; a < f.rank(); ++a) {
    double s = 0.0;
    for (int k = -2; k <= 2; ++k) {
      if (k == 0) continue;
      s += kD1[k + 2] * f.values[f.offset(flat, a, k)];
    }
    g[a] = s / f.spacing[a];
  }
  return g;
}

SymMatrix SymMatrix::restrict_to(std::span<const std::size_t> axes) const {
  SymMatrix r(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i)
    for (std::size_t j = 0; j < axes.size(); ++j) r(i, j) = (*this)(axes[i], axes[j]);
  return r;
}

SymMatrix hessian_at(const ScalarField& f, std::size_t flat) {
  require_stencil(f, flat);
  const std::size_t d = f.rank();
  SymMatrix h(d);
  for (std::size_t a = 0; a < d; ++a) {
    double s = 0.0;
    for (int k = -2; k <= 2; ++k) s += kD2[k + 2] * f.values[f.offset(flat, a, k)];
    h(a, a) = s / (f.spacing[a] * f.spacing[a]);
    for (std::size_t b = a + 1; b < d; ++b) {
      double m = 0.0;
      for (int i = -2; i <= 2; ++i) {
        if (i == 0) continue;
        const std::size_t row = f.offset(flat, a, i);
        for (int j = -2; j <= 2; ++j) {
          if (j == 0) continue;
          m += kD1[i + 2] * kD1[j + 2] * f.values[f.offset(row, b, j)];
        }
      }
      m /= f.spacing[a] * f.spacing[b];
      h(a, b) = m;
      h(b, a) = m;
    }
  }
  return h;
}

bool Box::contains(const std::vector<std::size_t>& dims, std::span<const std::size_t> idx) const {
  for (std::size_t a = 0; a < dims.size(); ++a) {
    const std::size_t rel = (idx[a] + dims[a] - start[a]) % dims[a];
    if (rel >= length[a]) return false;
  }
  return true;
}

GridMask Box::mask(const std::vector<std::size_t>& dims, const std::vector<bool>& periodic) const {
  GridMask m(dims, periodic);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (contains(dims, m.unflatten(i))) m.set(i);
  return m;
}

Box bounding_box(const GridMask& m) {
  const std::size_t d = m.rank();
  std::vector<std::vector<std::uint8_t>> occupied(d);
  for (std::size_t a = 0; a < d; ++a) occupied[a].assign(m.dims[a], 0);
  bool any = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m.at(i)) continue;
    any = true;
    const auto idx = m.unflatten(i);
    for (std::size_t a = 0; a < d; ++a) occupied[a][idx[a]] = 1;
  }
  if (!any) throw EmptyMaskError("bounding box of an empty mask");
  Box b;
  b.start.resize(d);
  b.length.resize(d);
  for (std::size_t a = 0; a < d; ++a) {
    const std::size_t n = m.dims[a];
    const auto& occ = occupied[a];
    if (!m.periodic[a]) {
      std::size_t lo = 0, hi = n - 1;
      while (!occ[lo]) ++lo;
      while (!occ[hi]) --hi;
      b.start[a] = lo;
      b.length[a] = hi - lo + 1;
      continue;
    }
    // Smallest arc covering the occupied indices: the complement of the
    // longest circular run of empty indices.
    std::size_t best_len = 0, best_end = 0;
    std::size_t run = 0;
    for (std::size_t k = 0; k < 2 * n; ++k) {
      if (occ[k % n]) {
        run = 0;
      } else {
        run = std::min(run + 1, n);
        if (run > best_len) {
          best_len = run;
          best_end = k % n;
        }
      }
    }
    if (best_len == 0) {
      b.start[a] = 0;
      b.length[a] = n;
    } else {
      b.start[a] = (best_end + 1) % n;
      b.length[a] = n - best_len;
    }
  }
  return b;
}

Box inflate(const Box& b, std::size_t cells, const std::vector<std::size_t>& dims, const std::vector<bool>& periodic) {
  Box out = b;
  for (std::size_t a = 0; a < dims.size(); ++a) {
    const std::size_t n = dims[a];
    if (periodic[a]) {
      if (b.length[a] + 2 * cells >= n) {
        out.start[a] = 0;
        out.length[a] = n;
      } else {
        out.start[a] = (b.start[a] + n - cells % n) % n;
        out.length[a] = b.length[a] + 2 * cells;
      }
    } else {
      const std::size_t lo = b.start[a] >= cells ? b.start[a] - cells : 0;
      const std::size_t hi = std::min(n - 1, b.start[a] + b.length[a] - 1 + cells);
      out.start[a] = lo;
      out.length[a] = hi - lo + 1;
    }
  }
  return out;
}

GridMask CriticalSet::all() const {
  if (components.empty()) return {};
  GridMask out = components.front();
  for (std::size_t i = 1; i < components.size(); ++i) out = mask_union(out, components[i]);
  return out;
}

CriticalSet critical_nodes(const ScalarField& f, double grad_tol) {
  if (!(grad_tol > 0.0)) throw std::invalid_argument("grad_tol must be positive");
  f.validate();
  const auto norms = kernels::parallel::gradient_norms(f);
  GridMask m = f.empty_mask();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (norms[i] < grad_tol) m.set(i);  // NaN (off-stencil) compares false
  CriticalSet cs;
  cs.grad_tol = grad_tol;
  if (m.empty()) return cs;
  cs.components = connected_components(m);
  for (const auto& c : cs.components) cs.boxes.push_back(bounding_box(c));
  return cs;
}

CriticalSet detect_critical_set(const ScalarField& f, double grad_tol) {
  auto cs = critical_nodes(f, grad_tol);
  if (cs.components.empty()) throw NoCriticalPointsError("no node has gradient below grad_tol");
  return cs;
}

GridMask dilate(const GridMask& m, std::size_t cells) {
  GridMask cur = m;
  for (std::size_t step = 0; step < cells; ++step) {
    GridMask next = cur;
    for (std::size_t a = 0; a < m.rank(); ++a) {
      GridMask pass = next;
      std::size_t stride = 1;
      for (std::size_t b = m.rank(); b-- > a + 1;) stride *= m.dims[b];
      const std::size_t n = m.dims[a];
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (!next.at(i)) continue;
        const std::size_t k = (i / stride) % n;
        for (int s : {-1, 1}) {
          long j = static_cast<long>(k) + s;
          if (m.periodic[a])
            j = (j + static_cast<long>(n)) % static_cast<long>(n);
          else if (j < 0 || j >= static_cast<long>(n))
            continue;
          pass.set(i + (static_cast<std::size_t>(j) - k) * stride);
        }
      }
      next = std::move(pass);
    }
    cur = std::move(next);
  }
  return cur;
}

GridMask erode(const GridMask& m, std::size_t cells) {
  GridMask complement = m;
  for (auto& c : complement.cells) c = c ? 0 : 1;
  GridMask grown = dilate(complement, cells);
  GridMask out = m;
  for (std::size_t i = 0; i < out.size(); ++i) out.cells[i] = (m.cells[i] && !grown.cells[i]) ? 1 : 0;
  return out;
}

}  // namespace qmd
