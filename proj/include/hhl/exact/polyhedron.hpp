/**
 * Polyhedral queries built on strict_feasible: affine dimension, implicit
 * equalities, boundedness, relative interior points and facets.
 */
#pragma once

#include "hhl/exact/fourier_motzkin.hpp"
#include "hhl/exact/linalg.hpp"

#include <set>

namespace hhl::exact {

/// Indices of rows that hold with equality on the whole solution set
/// (equality rows included). Empty optional when infeasible.
inline std::optional<std::vector<std::size_t>> implicit_equalities(const LinearSystem& sys) {
  if (!is_feasible(sys)) return std::nullopt;
  std::vector<std::size_t> eq;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    if (sys[i].rel == Relation::Equal) {
      eq.push_back(i);
      continue;
    }
    if (sys[i].rel == Relation::Less) continue;
    LinearSystem probe = sys;
    probe[i].rel = Relation::Less;
    if (!is_feasible(probe)) eq.push_back(i);
  }
  return eq;
}

/// Dimension of the solution set; nullopt when it is empty.
inline std::optional<std::size_t> affine_dimension(const LinearSystem& sys) {
  const auto eq = implicit_equalities(sys);
  if (!eq) return std::nullopt;
  std::vector<IntVector> normals;
  for (auto i : *eq) normals.push_back(sys[i].normal);
  const std::size_t r = rank_over_rationals(IntMatrix::from_rows(normals, sys.dim()));
  return sys.dim() - r;
}

/// True iff {x : A x <= 0} = {0}, i.e. the rows of A positively span R^k.
inline bool is_recession_trivial(const IntMatrix& A) {
  const std::size_t k = A.cols();
  LinearSystem cone(k);
  for (std::size_t r = 0; r < A.rows(); ++r) cone.at_most(A.row(r), 0);
  for (std::size_t j = 0; j < k; ++j) {
    IntVector e(k);
    e[j] = 1;
    LinearSystem up = cone, down = cone;
    up.at_least(e, 1);
    down.at_most(e, -1);
    if (is_feasible(up) || is_feasible(down)) return false;
  }
  return true;
}

/// Recession cone of the closure of sys: homogeneous rows.
inline LinearSystem recession_cone(const LinearSystem& sys) {
  LinearSystem cone(sys.dim());
  for (const auto& c : sys.rows()) cone.add(c.normal, 0, c.rel == Relation::Equal ? Relation::Equal : Relation::LessEqual);
  return cone;
}

/// Boundedness of the closure of a (nonempty) system.
inline bool is_bounded(const LinearSystem& sys) {
  const LinearSystem cone = recession_cone(sys);
  const std::size_t k = sys.dim();
  for (std::size_t j = 0; j < k; ++j) {
    IntVector e(k);
    e[j] = 1;
    LinearSystem up = cone, down = cone;
    up.at_least(e, 1);
    down.at_most(e, -1);
    if (is_feasible(up) || is_feasible(down)) return false;
  }
  return true;
}

/// The system with implicit equalities turned into equalities and every
/// other row made strict; its solutions are the relative interior.
inline LinearSystem relative_interior(const LinearSystem& closed, const std::vector<std::size_t>& eq) {
  LinearSystem ri = closed;
  std::vector<bool> is_eq(closed.size(), false);
  for (auto i : eq) is_eq[i] = true;
  for (std::size_t i = 0; i < ri.size(); ++i) ri[i].rel = is_eq[i] ? Relation::Equal : Relation::Less;
  return ri;
}

/// A point in the relative interior of the closure of sys.
inline std::optional<RatVector> relative_interior_point(const LinearSystem& sys) {
  const LinearSystem closed = sys.closure();
  const auto eq = implicit_equalities(closed);
  if (!eq) return std::nullopt;
  return strict_feasible(relative_interior(closed, *eq)).witness;
}

/// A facet of a closed polyhedron: the rows tight on it and the system with
/// those rows as equalities.
struct Facet {
  std::vector<std::size_t> tight_rows;
  LinearSystem system;
};

/// Facets (faces of dimension one less) of the closure of a bounded system,
/// ordered by their sets of tight rows.
inline std::vector<Facet> polytope_facets(const LinearSystem& sys) {
  const LinearSystem closed = sys.closure();
  const auto base_eq = implicit_equalities(closed);
  if (!base_eq) return {};
  if (!is_bounded(closed)) throw std::invalid_argument("polytope_facets: unbounded polyhedron");
  std::vector<IntVector> normals;
  for (auto i : *base_eq) normals.push_back(closed[i].normal);
  const std::size_t dim = closed.dim() - rank_over_rationals(IntMatrix::from_rows(normals, closed.dim()));
  if (dim == 0) return {};

  std::vector<bool> in_base(closed.size(), false);
  for (auto i : *base_eq) in_base[i] = true;
  std::set<std::vector<std::size_t>> seen;
  std::vector<Facet> facets;
  for (std::size_t j = 0; j < closed.size(); ++j) {
    if (in_base[j]) continue;
    LinearSystem face = closed;
    face[j].rel = Relation::Equal;
    const auto tight = implicit_equalities(face);
    if (!tight || seen.count(*tight)) continue;
    std::vector<IntVector> fn;
    for (auto i : *tight) fn.push_back(face[i].normal);
    if (closed.dim() - rank_over_rationals(IntMatrix::from_rows(fn, closed.dim())) + 1 != dim) continue;
    seen.insert(*tight);
    LinearSystem fs = closed;
    for (auto i : *tight) fs[i].rel = Relation::Equal;
    facets.push_back({*tight, std::move(fs)});
  }
  std::sort(facets.begin(), facets.end(),
            [](const Facet& a, const Facet& b) { return a.tight_rows < b.tight_rows; });
  return facets;
}

}  // namespace hhl::exact
