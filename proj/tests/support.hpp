#pragma once

// Shared helpers for the test drivers: the seeded generator and independent
// oracles that do not reuse library code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace qmd::testing {

/// Seed from QMD_SEED, or a fixed default so plain runs are reproducible.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("QMD_SEED")) return std::stoull(s);
  return 20240611ULL;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(seed());
  return g;
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }
inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

using Dense = std::vector<std::vector<int>>;

/// Rank over GF(2) by textbook elimination on int rows.
inline std::size_t naive_rank(Dense m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c])
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
    ++rank;
  }
  return rank;
}

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) below x,
/// by the Sturm sequence of leading principal minors.
inline std::size_t sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double b2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    q = diag[i] - x - (i == 0 ? 0.0 : b2 / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0) ++count;
  }
  return count;
}

/// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
inline double sturm_eigenvalue(const std::vector<double>& diag, const std::vector<double>& off, std::size_t k) {
  double bound = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double r = std::abs(diag[i]);
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < diag.size()) r += std::abs(off[i]);
    bound = std::max(bound, r);
  }
  double lo = -bound - 1.0, hi = bound + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(diag, off, mid) > k) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qmd::testing
