/**
 * Smith normal form with unimodular transforms, and Hermite column echelon
 * bases for canonical coset representatives modulo an integer lattice.
 */
#pragma once

#include "hhl/exact/arith.hpp"

namespace hhl::exact {

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... .
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  /// Nonzero diagonal entries of D in order.
  IntVector invariant_factors() const {
    IntVector f;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
      if (D(i, i) != 0) f.push_back(D(i, i));
    return f;
  }
};

namespace detail {

inline void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) -= q * m(src, c);
}

inline void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= q * m(r, src);
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

}  // namespace detail

inline SnfDecomposition smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  IntMatrix D = A, U = IntMatrix::identity(m), V = IntMatrix::identity(n);
  const std::size_t steps = std::min(m, n);

  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t br = m, bc = n;
      for (std::size_t r = t; r < m; ++r)
        for (std::size_t c = t; c < n; ++c)
          if (D(r, c) != 0 && (br == m || detail::abs(D(r, c)) < detail::abs(D(br, bc)))) {
            br = r;
            bc = c;
          }
      if (br == m) return {U, D, V};
      D.swap_rows(t, br);
      U.swap_rows(t, br);
      D.swap_cols(t, bc);
      V.swap_cols(t, bc);

      bool clean = true;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (D(r, t) == 0) continue;
        const Integer q = floor_div(D(r, t), D(t, t));
        detail::row_axpy(D, r, t, q);
        detail::row_axpy(U, r, t, q);
        if (D(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (D(t, c) == 0) continue;
        const Integer q = floor_div(D(t, c), D(t, t));
        detail::col_axpy(D, c, t, q);
        detail::col_axpy(V, c, t, q);
        if (D(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and retry.
      bool divides = true;
      for (std::size_t r = t + 1; r < m && divides; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (D(r, c) % D(t, t) != 0) {
            detail::row_axpy(D, t, r, Integer(-1));
            detail::row_axpy(U, t, r, Integer(-1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) D(t, c) = -D(t, c);
      for (std::size_t c = 0; c < m; ++c) U(t, c) = -U(t, c);
    }
  }
  return {U, D, V};
}

/// A sublattice of Z^n held as a column echelon basis: basis vector j is zero
/// above its pivot row, has a positive pivot, and pivot rows increase.
class HermiteLattice {
 public:
  HermiteLattice() = default;

  /// Lattice generated by the columns of `generators` (n x r).
  explicit HermiteLattice(const IntMatrix& generators) : dim_(generators.rows()) {
    std::vector<IntVector> cols;
    for (std::size_t c = 0; c < generators.cols(); ++c) {
      IntVector v = generators.col(c);
      if (!is_zero(v)) cols.push_back(std::move(v));
    }
    for (std::size_t row = 0; row < dim_ && !cols.empty(); ++row) {
      // Euclid among the columns nonzero in this row.
      while (true) {
        std::size_t best = cols.size();
        for (std::size_t j = 0; j < cols.size(); ++j)
          if (cols[j][row] != 0 &&
              (best == cols.size() || detail::abs(cols[j][row]) < detail::abs(cols[best][row])))
            best = j;
        if (best == cols.size()) break;
        bool reduced = true;
        for (std::size_t j = 0; j < cols.size(); ++j) {
          if (j == best || cols[j][row] == 0) continue;
          const Integer q = floor_div(cols[j][row], cols[best][row]);
          for (std::size_t i = 0; i < dim_; ++i) cols[j][i] -= q * cols[best][i];
          if (cols[j][row] != 0) reduced = false;
        }
        if (!reduced) continue;
        IntVector piv = std::move(cols[best]);
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(best));
        if (piv[row] < 0)
          for (auto& x : piv) x = -x;
        pivot_rows_.push_back(row);
        basis_.push_back(std::move(piv));
        break;
      }
      std::erase_if(cols, [](const IntVector& v) { return is_zero(v); });
    }
  }

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_rows() const { return pivot_rows_; }

  /// Canonical representative of v + lattice.
  IntVector reduce(IntVector v) const {
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const std::size_t p = pivot_rows_[j];
      const Integer q = floor_div(v[p], basis_[j][p]);
      if (q == 0) continue;
      for (std::size_t i = 0; i < dim_; ++i) v[i] -= q * basis_[j][i];
    }
    return v;
  }

  /// Membership test: v lies in the lattice.
  bool contains(const IntVector& v) const { return is_zero(reduce(v)); }

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> basis_;
  std::vector<std::size_t> pivot_rows_;
};

/// Canonical representative of v modulo the column span of `lattice`.
inline IntVector hermite_coset_reduce(const IntVector& v, const IntMatrix& lattice) {
  return HermiteLattice(lattice).reduce(v);
}

}  // namespace hhl::exact
