#pragma once

// Dense bit-packed linear algebra over the two-element field.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmd::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

class BitVector {
public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}
  static BitVector from_bits(const std::vector<int>& bits);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const Word mask = Word{1} << (i % kWordBits);
    if (v)
      words_[i / kWordBits] |= mask;
    else
      words_[i / kWordBits] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVector& operator^=(const BitVector& other);
  bool any() const;
  std::size_t count() const;
  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Row-major bit matrix. Each row is padded to a whole number of words so rows
/// can be XORed word by word.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), bits_(rows * stride_, 0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols = 0);
  static Matrix from_vectors(std::span<const BitVector> rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v = true) {
    Word& w = bits_[r * stride_ + c / kWordBits];
    const Word mask = Word{1} << (c % kWordBits);
    if (v)
      w |= mask;
    else
      w &= ~mask;
  }
  void flip(std::size_t r, std::size_t c) {
    bits_[r * stride_ + c / kWordBits] ^= Word{1} << (c % kWordBits);
  }

  std::span<Word> row(std::size_t r) { return {bits_.data() + r * stride_, stride_}; }
  std::span<const Word> row(std::size_t r) const { return {bits_.data() + r * stride_, stride_}; }
  BitVector row_vector(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  void xor_row_into(std::size_t src, std::size_t dst);
  void swap_rows(std::size_t a, std::size_t b);
  void append_row(const BitVector& v);

  bool is_zero() const;
  Matrix transpose() const;
  Matrix multiply(const Matrix& rhs) const;
  BitVector apply(const BitVector& x) const;  // this * x, x has cols() entries
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> bits_;
};

/// Brings m to reduced row echelon form in place and returns the pivot columns.
/// Pivot search is by column, taking the first row at or below the current one
/// with a set bit; rows are swapped in place. Uses the OpenMP elimination kernel.
std::vector<std::size_t> echelonize(Matrix& m);

std::size_t rank(const Matrix& m);

class Subspace {
public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim), basis_(0, ambient_dim) {}

  /// Span of the rows of `generators`; the stored basis is the nonzero rows of
  /// the reduced echelon form, so equal subspaces compare equal.
  static Subspace span(Matrix generators);
  static Subspace span(std::span<const BitVector> vectors, std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  BitVector vector(std::size_t i) const { return basis_.row_vector(i); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const BitVector& v) const;
  bool contains(const Subspace& other) const;
  /// Reduces v against the echelon basis; the result is zero iff v lies in the span.
  BitVector reduce(BitVector v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

private:
  std::size_t ambient_dim_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Basis of {x : m x = 0}, one vector per free column in ascending order.
Subspace kernel_basis(const Matrix& m);
/// Column space of m as a subspace of GF(2)^rows.
Subspace image(const Matrix& m);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersection(const Subspace& a, const Subspace& b);
std::size_t quotient_dim(const Subspace& big, const Subspace& small);

/// Coefficients c with sum_i c_i rows_i = v, when v lies in the row span.
/// Rows need not be independent; the returned solution is one particular one.
std::optional<BitVector> solve_in_rows(const Matrix& rows, const BitVector& v);

std::optional<Matrix> inverse(const Matrix& m);

std::string to_string(const Matrix& m);

namespace serial {
// Reference elimination kept for tests and benchmarks.
std::vector<std::size_t> echelonize(Matrix& m);
std::size_t rank(const Matrix& m);
}  // namespace serial

}  // namespace qmd::gf2
