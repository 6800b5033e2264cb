#include "qmd/gf2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <utility>

namespace qmd::gf2 {

BitVector BitVector::from_bits(const std::vector<int>& bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] & 1) v.set(i);
  return v;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw DimensionError("bit vector size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

bool BitVector::any() const {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols) {
  if (cols == 0 && !rows.empty()) cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("ragged row in from_rows");
    for (std::size_t c = 0; c < cols; ++c)
      if (rows[r][c] & 1) m.set(r, c);
  }
  return m;
}

Matrix Matrix::from_vectors(std::span<const BitVector> rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BitVector Matrix::row_vector(std::size_t r) const {
  BitVector v(cols_);
  std::copy(row(r).begin(), row(r).end(), v.words().begin());
  return v;
}

void Matrix::set_row(std::size_t r, const BitVector& v) {
  if (v.size() != cols_) throw DimensionError("row length mismatch");
  std::copy(v.words().begin(), v.words().end(), row(r).begin());
}

void Matrix::xor_row_into(std::size_t src, std::size_t dst) {
  const Word* s = bits_.data() + src * stride_;
  Word* d = bits_.data() + dst * stride_;
  for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

void Matrix::append_row(const BitVector& v) {
  if (v.size() != cols_) throw DimensionError("row length mismatch");
  bits_.insert(bits_.end(), v.words().begin(), v.words().end());
  ++rows_;
}

bool Matrix::is_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](Word w) { return w == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r);
  return t;
}

Matrix Matrix::multiply(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionError("matrix product shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Word* dst = out.bits_.data() + r * out.stride_;
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      const Word* src = rhs.bits_.data() + k * rhs.stride_;
      for (std::size_t w = 0; w < out.stride_; ++w) dst[w] ^= src[w];
    }
  }
  return out;
}

BitVector Matrix::apply(const BitVector& x) const {
  if (x.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
  BitVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Word acc = 0;
    auto rw = row(r);
    for (std::size_t w = 0; w < stride_; ++w) acc ^= rw[w] & x.words()[w];
    if (std::popcount(acc) & 1) y.set(r);
  }
  return y;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    std::copy(row(idx[i]).begin(), row(idx[i]).end(), out.row(i).begin());
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix out(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (get(r, idx[j])) out.set(r, j);
  return out;
}

namespace {

// Below this many words of work per pivot the thread start-up dominates.
constexpr std::size_t kParallelWords = 4096;

template <bool Parallel>
std::vector<std::size_t> echelonize_impl(Matrix& m) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t stride = m.stride();
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t pr = lead;
    while (pr < rows && !m.get(pr, c)) ++pr;
    if (pr == rows) continue;
    m.swap_rows(pr, lead);
    const std::size_t word = c / kWordBits;
    const Word mask = Word{1} << (c % kWordBits);
    const Word* pivot_row = m.row(lead).data();
    const auto n = static_cast<std::ptrdiff_t>(rows);
    const std::ptrdiff_t lead_i = static_cast<std::ptrdiff_t>(lead);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static) if (rows * stride > kParallelWords)
      for (std::ptrdiff_t r = 0; r < n; ++r) {
        if (r == lead_i) continue;
        Word* dst = m.row(static_cast<std::size_t>(r)).data();
        if (!(dst[word] & mask)) continue;
        for (std::size_t w = word; w < stride; ++w) dst[w] ^= pivot_row[w];
      }
    } else {
      for (std::ptrdiff_t r = 0; r < n; ++r) {
        if (r == lead_i) continue;
        Word* dst = m.row(static_cast<std::size_t>(r)).data();
        if (!(dst[word] & mask)) continue;
        for (std::size_t w = word; w < stride; ++w) dst[w] ^= pivot_row[w];
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

}  // namespace

std::vector<std::size_t> echelonize(Matrix& m) { return echelonize_impl<true>(m); }

std::size_t rank(const Matrix& m) {
  Matrix copy = m;
  return echelonize(copy).size();
}

namespace serial {
std::vector<std::size_t> echelonize(Matrix& m) { return echelonize_impl<false>(m); }
std::size_t rank(const Matrix& m) {
  Matrix copy = m;
  return serial::echelonize(copy).size();
}
}  // namespace serial

Subspace Subspace::span(Matrix generators) {
  Subspace s;
  s.ambient_dim_ = generators.cols();
  s.pivots_ = echelonize(generators);
  std::vector<std::size_t> keep(s.pivots_.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  s.basis_ = generators.select_rows(keep);
  return s;
}

Subspace Subspace::span(std::span<const BitVector> vectors, std::size_t ambient_dim) {
  return span(Matrix::from_vectors(vectors, ambient_dim));
}

Subspace Subspace::full(std::size_t ambient_dim) { return span(Matrix::identity(ambient_dim)); }

BitVector Subspace::reduce(BitVector v) const {
  if (v.size() != ambient_dim_) throw DimensionError("vector not in the ambient space");
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (!v.get(pivots_[i])) continue;
    auto src = basis_.row(i);
    auto dst = v.words();
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
  }
  return v;
}

bool Subspace::contains(const BitVector& v) const { return !reduce(v).any(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionError("ambient dimension mismatch");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.vector(i))) return false;
  return true;
}

Subspace kernel_basis(const Matrix& m) {
  Matrix r = m;
  const auto pivots = echelonize(r);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis(0, n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(n);
    v.set(f);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (r.get(i, f)) v.set(pivots[i]);
    basis.append_row(v);
  }
  return Subspace::span(std::move(basis));
}

Subspace image(const Matrix& m) { return Subspace::span(m.transpose()); }

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("ambient dimension mismatch");
  Matrix stacked = a.basis();
  for (std::size_t i = 0; i < b.dim(); ++i) stacked.append_row(b.vector(i));
  return Subspace::span(std::move(stacked));
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("ambient dimension mismatch");
  const std::size_t n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return Subspace(n);
  // (alpha, beta) with alpha A + beta B = 0 gives alpha A in both spans.
  Matrix stacked = a.basis();
  for (std::size_t i = 0; i < b.dim(); ++i) stacked.append_row(b.vector(i));
  const Subspace relations = kernel_basis(stacked.transpose());
  Matrix out(0, n);
  for (std::size_t k = 0; k < relations.dim(); ++k) {
    const BitVector coeff = relations.vector(k);
    BitVector x(n);
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (coeff.get(i)) x ^= a.vector(i);
    out.append_row(x);
  }
  return Subspace::span(std::move(out));
}

std::size_t quotient_dim(const Subspace& big, const Subspace& small) {
  if (big.ambient_dim() != small.ambient_dim()) throw DimensionError("ambient dimension mismatch");
  if (!big.contains(small)) throw DimensionError("quotient_dim: small is not contained in big");
  return big.dim() - small.dim();
}

std::optional<BitVector> solve_in_rows(const Matrix& rows, const BitVector& v) {
  // Augment with an identity block tracking which original rows were combined.
  const std::size_t k = rows.rows();
  const std::size_t n = rows.cols();
  if (v.size() != n) throw DimensionError("solve_in_rows: vector length mismatch");
  Matrix aug(k, n + k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < n; ++c)
      if (rows.get(i, c)) aug.set(i, c);
    aug.set(i, n + i);
  }
  const auto pivots = echelonize(aug);
  BitVector residual = v;
  BitVector coeff(k);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const std::size_t c = pivots[i];
    if (c >= n) break;
    if (!residual.get(c)) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (aug.get(i, j)) residual.flip(j);
    for (std::size_t j = 0; j < k; ++j)
      if (aug.get(i, n + j)) coeff.flip(j);
  }
  if (residual.any()) return std::nullopt;
  return coeff;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      if (m.get(r, c)) aug.set(r, c);
    aug.set(r, n + r);
  }
  const auto pivots = echelonize(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  std::vector<std::size_t> right(n);
  for (std::size_t i = 0; i < n; ++i) right[i] = n + i;
  return aug.select_cols(right);
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (m.get(r, c) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

}  // namespace qmd::gf2
