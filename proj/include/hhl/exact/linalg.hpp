/**
 * Exact linear algebra over Z and Q: ranks, determinants, row echelon
 * forms and null spaces.
 */
#pragma once

#include "hhl/exact/arith.hpp"

#include <map>
#include <optional>
#include <utility>

namespace hhl::exact {

/// Rank over Q by fraction-free (Bareiss) elimination.
inline std::size_t rank_over_rationals(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t rank = 0;
  Integer prev = 1;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && a(piv, col) == 0) ++piv;
    if (piv == m) continue;
    a.swap_rows(piv, rank);
    const Integer pivot = a(rank, col);
    for (std::size_t r = rank + 1; r < m; ++r) {
      const Integer factor = a(r, col);
      for (std::size_t c = col + 1; c < n; ++c) {
        a(r, c) = (pivot * a(r, c) - factor * a(rank, c)) / prev;
      }
      a(r, col) = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

/// Determinant of a square integer matrix (Bareiss).
inline Integer determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant: matrix not square");
  IntMatrix a = input;
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int flips = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      a.swap_rows(piv, k);
      flips = -flips;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c < n; ++c) {
        a(r, c) = (a(k, k) * a(r, c) - a(r, k) * a(k, c)) / prev;
      }
      a(r, k) = 0;
    }
    prev = a(k, k);
  }
  return flips * a(n - 1, n - 1);
}

/// Rational matrix, used for echelon forms and small solves.
using RatMatrix = std::vector<RatVector>;

inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), RatVector(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i][j] = Rational(a(i, j));
  return r;
}

/// Reduced row echelon form in place; returns pivot columns in order.
inline std::vector<std::size_t> rref(RatMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < cols; ++c) a[r][c] -= f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  a.resize(row);
  return pivots;
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
inline IntVector primitive_integer(const RatVector& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, denominator(x));
  IntVector r(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    r[i] = numerator(v[i] * Rational(den));
    g = gcd(g, r[i]);
  }
  if (g > 1)
    for (auto& x : r) x /= g;
  return r;
}

/// Basis of {x in Q^cols : A x = 0}, as the reduced row echelon rows of that
/// space, scaled to primitive integer vectors with positive pivots.
inline std::vector<IntVector> nullspace_basis(const std::vector<IntVector>& rows, std::size_t cols) {
  RatMatrix a;
  for (const auto& r : rows) {
    RatVector q(cols);
    for (std::size_t j = 0; j < cols; ++j) q[j] = Rational(r[j]);
    a.push_back(std::move(q));
  }
  const auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  rref(basis, cols);
  std::vector<IntVector> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(primitive_integer(b));
  return out;
}

/// Inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& a) {
  const std::size_t n = a.rows();
  RatMatrix aug(n, RatVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = Rational(a(i, j));
    aug[i][n + i] = 1;
  }
  const auto pivots = rref(aug, 2 * n);
  if (pivots.size() != n || (n > 0 && pivots.back() != n - 1))
    throw std::invalid_argument("unimodular_inverse: singular matrix");
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_integral(aug[i][n + j])) throw std::invalid_argument("unimodular_inverse: not unimodular");
      inv(i, j) = numerator(aug[i][n + j]);
    }
  return inv;
}

/// Sparse integer matrix: (row, col) -> nonzero value.
struct SparseIntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::map<std::pair<std::size_t, std::size_t>, Integer> entries;

  void add(std::size_t r, std::size_t c, const Integer& v) {
    auto [it, inserted] = entries.try_emplace({r, c}, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) entries.erase(it);
    } else if (v == 0) {
      entries.erase(it);
    }
  }

  Integer at(std::size_t r, std::size_t c) const {
    auto it = entries.find({r, c});
    return it == entries.end() ? Integer(0) : it->second;
  }

  IntMatrix dense() const {
    IntMatrix d(rows, cols);
    for (const auto& [rc, v] : entries) d(rc.first, rc.second) = v;
    return d;
  }

  friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;
};

inline SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("multiply: dimension mismatch");
  std::map<std::size_t, std::vector<std::pair<std::size_t, Integer>>> b_rows;
  for (const auto& [rc, v] : b.entries) b_rows[rc.first].emplace_back(rc.second, v);
  SparseIntMatrix p{a.rows, b.cols, {}};
  for (const auto& [rc, v] : a.entries) {
    auto it = b_rows.find(rc.second);
    if (it == b_rows.end()) continue;
    for (const auto& [c, w] : it->second) p.add(rc.first, c, v * w);
  }
  return p;
}

/// Rank over Q of a sparse matrix by sparse Gaussian elimination, preferring
/// short pivot rows and unit pivots to limit fill-in.
inline std::size_t sparse_rank(const SparseIntMatrix& a) {
  using Row = std::map<std::size_t, Rational>;
  std::vector<Row> rows(a.rows);
  for (const auto& [rc, v] : a.entries) rows[rc.first][rc.second] = Rational(v);
  std::vector<bool> alive(a.rows, true);
  std::size_t rank = 0;
  while (true) {
    // Pick the shortest live nonempty row; within it a unit entry if available.
    std::size_t best = a.rows;
    for (std::size_t r = 0; r < a.rows; ++r) {
      if (!alive[r]) continue;
      if (rows[r].empty()) {
        alive[r] = false;
        continue;
      }
      if (best == a.rows || rows[r].size() < rows[best].size()) best = r;
    }
    if (best == a.rows) break;
    std::size_t pcol = rows[best].begin()->first;
    for (const auto& [c, v] : rows[best])
      if (v == 1 || v == -1) {
        pcol = c;
        break;
      }
    const Row pivot = rows[best];
    const Rational pval = pivot.at(pcol);
    alive[best] = false;
    ++rank;
    for (std::size_t r = 0; r < a.rows; ++r) {
      if (!alive[r]) continue;
      auto it = rows[r].find(pcol);
      if (it == rows[r].end()) continue;
      const Rational f = it->second / pval;
      for (const auto& [c, v] : pivot) {
        Rational& x = rows[r][c];
        x -= f * v;
        if (x == 0) rows[r].erase(c);
      }
    }
  }
  return rank;
}

}  // namespace hhl::exact
