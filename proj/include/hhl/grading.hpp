/**
 * Finitely generated abelian groups presented as Z^n / (column span of a
 * relation matrix), with coordinates read off a Smith normal form.
 *
 * The grading group of a lattice map psi is M = Z^n / psi^T(Z^k), where the
 * relation matrix is the n x k matrix whose rows are the psi(v_i).
 */
#pragma once

#include "hhl/exact/linalg.hpp"
#include "hhl/exact/normal_form.hpp"

#include <compare>

namespace hhl {

using exact::Integer;
using exact::IntMatrix;
using exact::IntVector;
using exact::operator+;
using exact::operator-;

/// An element of Z^f + Z/d_1 + ... , torsion residues in [0, d_j).
struct DegreeLabel {
  IntVector free_part;
  IntVector torsion_part;

  friend auto operator<=>(const DegreeLabel&, const DegreeLabel&) = default;
  friend bool operator==(const DegreeLabel&, const DegreeLabel&) = default;
};

inline std::string to_string(const DegreeLabel& l) {
  std::string s = "(";
  for (std::size_t i = 0; i < l.free_part.size(); ++i) s += (i ? "," : "") + l.free_part[i].str();
  s += ")";
  if (!l.torsion_part.empty()) {
    s += "+[";
    for (std::size_t i = 0; i < l.torsion_part.size(); ++i) s += (i ? "," : "") + l.torsion_part[i].str();
    s += "]";
  }
  return s;
}

namespace detail {

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

/// Row Hermite normal form in place (unimodular row operations): echelon with
/// positive pivots and entries above each pivot reduced into [0, pivot).
inline void row_hermite(IntMatrix& a) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    while (true) {
      std::size_t best = a.rows();
      for (std::size_t r = row; r < a.rows(); ++r)
        if (a(r, col) != 0 && (best == a.rows() || abs(a(r, col)) < abs(a(best, col)))) best = r;
      if (best == a.rows()) break;
      a.swap_rows(row, best);
      bool clean = true;
      for (std::size_t r = row + 1; r < a.rows(); ++r) {
        if (a(r, col) == 0) continue;
        const Integer q = exact::floor_div(a(r, col), a(row, col));
        for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= q * a(row, c);
        if (a(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (row < a.rows() && a(row, col) != 0) {
      if (a(row, col) < 0)
        for (std::size_t c = 0; c < a.cols(); ++c) a(row, c) = -a(row, c);
      for (std::size_t r = 0; r < row; ++r) {
        const Integer q = exact::floor_div(a(r, col), a(row, col));
        for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) -= q * a(row, c);
      }
      ++row;
    }
  }
}

}  // namespace detail

class QuotientGroup {
 public:
  QuotientGroup() = default;

  /// Z^n modulo the columns of `relations` (n x r).
  explicit QuotientGroup(IntMatrix relations) : relations_(std::move(relations)), lattice_(relations_) {
    const std::size_t n = relations_.rows();
    const auto snf = exact::smith_normal_form(relations_);
    IntMatrix u = snf.U;
    std::size_t rank = 0;
    for (std::size_t i = 0; i < std::min(snf.D.rows(), snf.D.cols()); ++i)
      if (snf.D(i, i) != 0) ++rank;

    // Canonical free coordinates: row Hermite form of the free block of U.
    IntMatrix free_block(n - rank, n);
    for (std::size_t r = rank; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) free_block(r - rank, c) = u(r, c);
    detail::row_hermite(free_block);
    for (std::size_t r = rank; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) u(r, c) = free_block(r - rank, c);

    for (std::size_t i = 0; i < rank; ++i) {
      if (snf.D(i, i) == 1) continue;
      torsion_rows_.push_back(i);
      torsion_.push_back(snf.D(i, i));
    }
    for (std::size_t r = rank; r < n; ++r) free_rows_.push_back(r);
    transform_ = std::move(u);
    inverse_ = exact::unimodular_inverse(transform_);
  }

  std::size_t ambient_dim() const { return relations_.rows(); }
  std::size_t free_rank() const { return free_rows_.size(); }
  const IntVector& torsion() const { return torsion_; }
  const IntMatrix& relations() const { return relations_; }
  bool is_trivial() const { return free_rows_.empty() && torsion_.empty(); }

  /// Order of the group, or 0 when infinite.
  Integer order() const {
    if (!free_rows_.empty()) return 0;
    Integer o = 1;
    for (const auto& d : torsion_) o *= d;
    return o;
  }

  DegreeLabel project(const IntVector& v) const {
    const IntVector y = transform_ * v;
    DegreeLabel l;
    for (auto r : free_rows_) l.free_part.push_back(y[r]);
    for (std::size_t j = 0; j < torsion_rows_.size(); ++j) {
      Integer t = y[torsion_rows_[j]] % torsion_[j];
      if (t < 0) t += torsion_[j];
      l.torsion_part.push_back(t);
    }
    return l;
  }

  /// Some v in Z^n with project(v) == label.
  IntVector lift(const DegreeLabel& label) const {
    IntVector y(ambient_dim());
    for (std::size_t j = 0; j < free_rows_.size(); ++j) y[free_rows_[j]] = label.free_part.at(j);
    for (std::size_t j = 0; j < torsion_rows_.size(); ++j) y[torsion_rows_[j]] = label.torsion_part.at(j);
    return inverse_ * y;
  }

  /// The identity element.
  DegreeLabel zero() const { return {IntVector(free_rank()), IntVector(torsion_.size())}; }

  DegreeLabel add(const DegreeLabel& a, const DegreeLabel& b) const {
    DegreeLabel s;
    for (std::size_t j = 0; j < a.free_part.size(); ++j) s.free_part.push_back(a.free_part[j] + b.free_part[j]);
    for (std::size_t j = 0; j < a.torsion_part.size(); ++j)
      s.torsion_part.push_back((a.torsion_part[j] + b.torsion_part[j]) % torsion_[j]);
    return s;
  }

  DegreeLabel negate(const DegreeLabel& a) const {
    DegreeLabel s;
    for (const auto& x : a.free_part) s.free_part.push_back(-x);
    for (std::size_t j = 0; j < a.torsion_part.size(); ++j)
      s.torsion_part.push_back((torsion_[j] - a.torsion_part[j]) % torsion_[j]);
    return s;
  }

  /// Whether two vectors of Z^n agree in the quotient.
  bool equivalent(const IntVector& v, const IntVector& w) const { return lattice_.contains(v - w); }

  const exact::HermiteLattice& lattice() const { return lattice_; }

  /// All labels whose free coordinates lie in [-bound, bound], every torsion
  /// residue included, in lexicographic order.
  std::vector<DegreeLabel> window(long bound) const {
    std::vector<DegreeLabel> out;
    DegreeLabel cur = zero();
    for (auto& x : cur.free_part) x = -bound;
    const std::size_t f = free_rank(), t = torsion_.size();
    while (true) {
      out.push_back(cur);
      // Odometer: torsion digits fastest, then free digits.
      std::size_t pos = f + t;
      while (pos-- > 0) {
        if (pos >= f) {
          auto& d = cur.torsion_part[pos - f];
          if (++d < torsion_[pos - f]) break;
          d = 0;
        } else {
          auto& d = cur.free_part[pos];
          if (++d <= bound) break;
          d = -bound;
        }
      }
      if (pos == static_cast<std::size_t>(-1)) break;
    }
    return out;
  }

 private:
  IntMatrix relations_;
  exact::HermiteLattice lattice_;
  IntMatrix transform_;
  IntMatrix inverse_;
  std::vector<std::size_t> free_rows_;
  std::vector<std::size_t> torsion_rows_;
  IntVector torsion_;
};

/// M = L* / Lambda*: the grading group of a lattice map.
using GradingGroup = QuotientGroup;

}  // namespace hhl
