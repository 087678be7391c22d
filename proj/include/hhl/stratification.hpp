/**
 * The Bondal stratification of the torus T = R^k / Z^k cut out by the
 * periodic hyperplanes H_i(x) = <psi(v_i), x> = a, a in Z.
 *
 * A cell of the arrangement on the universal cover is encoded by its walls
 * (indices with H_i constant and integral on it) and its ceiling vector
 * c_i = ceil(H_i) on the cell:
 *
 *     H_i(x) = c_i            for i in walls,
 *     c_i - 1 < H_i(x) < c_i  otherwise.
 *
 * Translating by t in Z^k shifts the ceilings by P t, where P is the n x k
 * matrix with rows psi(v_i), so torus strata are (walls, ceilings modulo the
 * column lattice of P). The canonical lift of a stratum is the one whose
 * ceilings are the Hermite coset representative.
 */
#pragma once

#include "hhl/error.hpp"
#include "hhl/exact/normal_form.hpp"
#include "hhl/exact/polyhedron.hpp"
#include "hhl/grading.hpp"

#include <map>
#include <optional>

namespace hhl {

using exact::Integer;
using exact::IntMatrix;
using exact::IntVector;
using exact::LinearSystem;
using exact::Rational;
using exact::RatVector;

/// The pair (L = Z^n, psi : L -> Lambda = Z^k), psi given by the images of
/// the basis vectors.
struct LatticeMapInput {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<IntVector> psi;

  static LatticeMapInput from_rows(std::vector<IntVector> rows) {
    LatticeMapInput in;
    in.n = rows.size();
    in.k = rows.empty() ? 0 : rows.front().size();
    in.psi = std::move(rows);
    return in;
  }

  /// n x k matrix with rows psi(v_i).
  IntMatrix matrix() const { return IntMatrix::from_rows(psi, k); }

  friend bool operator==(const LatticeMapInput&, const LatticeMapInput&) = default;
};

inline void validate_input(const LatticeMapInput& in) {
  if (in.k < 1 || in.n < in.k)
    throw Error(ErrorKind::InvalidInput, "need n >= k >= 1 (got n=" + std::to_string(in.n) + ", k=" + std::to_string(in.k) + ")");
  if (in.psi.size() != in.n) throw Error(ErrorKind::InvalidInput, "psi must have n rows");
  for (const auto& r : in.psi)
    if (r.size() != in.k) throw Error(ErrorKind::InvalidInput, "every psi row must have k entries");
  if (exact::rank_over_rationals(in.matrix()) != in.k) throw Error(ErrorKind::CokernelNotFinite, "cokernel not finite");
}

struct StratumType {
  std::vector<std::size_t> walls;  // sorted, 0-based
  IntVector ceilings;
  std::size_t dim = 0;

  friend bool operator<(const StratumType& a, const StratumType& b) {
    return std::tie(a.dim, a.walls, a.ceilings) < std::tie(b.dim, b.walls, b.ceilings);
  }
  friend bool operator==(const StratumType&, const StratumType&) = default;
};

/// Ordered basis of a stratum's direction space together with a global sign;
/// points carry an empty basis and only the sign.
struct Orientation {
  std::vector<IntVector> basis;
  int sign = 1;
};

struct Stratum {
  std::size_t id = 0;
  StratumType type;
  Orientation orientation;
  RatVector interior_point;  // in the canonical lift
};

struct IncidenceRecord {
  std::size_t from = 0;  // stratum of dimension m
  std::size_t to = 0;    // stratum of dimension m - 1
  std::vector<std::size_t> lift_walls;
  IntVector lift_ceilings;  // the facet lift inside the closure of the canonical lift of `from`
  IntVector epsilon;
  int sign = 1;
  RatVector facet_point;
};

/// Relatively open cell on the universal cover.
inline LinearSystem cell_system(const LatticeMapInput& in, const std::vector<std::size_t>& walls, const IntVector& ceilings) {
  LinearSystem s(in.k);
  std::size_t w = 0;
  for (std::size_t i = 0; i < in.n; ++i) {
    if (w < walls.size() && walls[w] == i) {
      s.equal(in.psi[i], Rational(ceilings[i]));
      ++w;
    } else {
      s.below(in.psi[i], Rational(ceilings[i]));
      s.above(in.psi[i], Rational(ceilings[i] - 1));
    }
  }
  return s;
}

inline LinearSystem cell_system(const LatticeMapInput& in, const StratumType& t) { return cell_system(in, t.walls, t.ceilings); }

/// Walls and ceilings of the cell containing x.
inline StratumType cell_type_at(const LatticeMapInput& in, const RatVector& x) {
  StratumType t;
  t.ceilings.resize(in.n);
  std::vector<IntVector> wall_normals;
  for (std::size_t i = 0; i < in.n; ++i) {
    const Rational h = exact::dot(in.psi[i], x);
    t.ceilings[i] = exact::ceil(h);
    if (exact::is_integral(h)) {
      t.walls.push_back(i);
      wall_normals.push_back(in.psi[i]);
    }
  }
  t.dim = in.k - exact::rank_over_rationals(IntMatrix::from_rows(wall_normals, in.k));
  return t;
}

inline std::size_t wall_dimension(const LatticeMapInput& in, const std::vector<std::size_t>& walls) {
  std::vector<IntVector> normals;
  for (auto i : walls) normals.push_back(in.psi[i]);
  return in.k - exact::rank_over_rationals(IntMatrix::from_rows(normals, in.k));
}

/// All arrangement cells meeting `region`, found by fixing one index at a
/// time: the range of H_i over the partial cell determines exactly which
/// walls and open slabs for H_i meet it.
inline std::vector<StratumType> enumerate_cells(const LatticeMapInput& in, const LinearSystem& region) {
  std::vector<StratumType> out;
  std::vector<std::size_t> walls;
  IntVector ceilings(in.n);

  auto recurse = [&](auto&& self, std::size_t i, const LinearSystem& partial) -> void {
    if (i == in.n) {
      out.push_back({walls, ceilings, wall_dimension(in, walls)});
      return;
    }
    const auto range = exact::functional_range(partial, in.psi[i]);
    if (!range.feasible) return;
    if (!range.min || !range.max) throw Error(ErrorKind::UnboundedRegion, "enumerate_cells: region is unbounded");
    const Rational& lo = *range.min;
    const Rational& hi = *range.max;

    // Open slabs (c - 1, c) meeting the range.
    for (Integer c = exact::floor(lo) + 1; Rational(c - 1) < hi; ++c) {
      LinearSystem next = partial;
      next.below(in.psi[i], Rational(c)).above(in.psi[i], Rational(c - 1));
      ceilings[i] = c;
      self(self, i + 1, next);
    }
    // Walls H_i = a inside the range.
    for (Integer a = exact::ceil(lo); Rational(a) <= hi; ++a) {
      if ((Rational(a) == lo && !range.min_attained) || (Rational(a) == hi && !range.max_attained)) continue;
      LinearSystem next = partial;
      next.equal(in.psi[i], Rational(a));
      ceilings[i] = a;
      walls.push_back(i);
      self(self, i + 1, next);
      walls.pop_back();
    }
  };
  recurse(recurse, 0, region);
  std::sort(out.begin(), out.end());
  return out;
}

/// Sign of the orientation of a facet lift relative to the boundary
/// orientation it inherits from sigma (outward vector first).
inline int orientation_sign(const Orientation& sigma, const RatVector& sigma_point, const Orientation& facet,
                            const RatVector& facet_point) {
  const std::size_t d = sigma.basis.size();
  if (facet.basis.size() + 1 != d) throw std::logic_error("orientation_sign: facet dimension mismatch");
  std::vector<std::size_t> pivots;
  for (const auto& b : sigma.basis) {
    std::size_t p = 0;
    while (b[p] == 0) ++p;
    pivots.push_back(p);
  }
  RatVector u(facet_point.size());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = facet_point[j] - sigma_point[j];
  const IntVector ui = exact::primitive_integer(u);
  IntMatrix coords(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    coords(i, 0) = ui[pivots[i]];
    for (std::size_t j = 1; j < d; ++j) coords(i, j) = facet.basis[j - 1][pivots[i]];
  }
  const int s = exact::sign(exact::determinant(coords));
  if (s == 0) throw std::logic_error("orientation_sign: degenerate facet frame");
  return s * sigma.sign * facet.sign;
}

class StrataComplex {
 public:
  LatticeMapInput input;
  std::vector<Stratum> strata;                      // sorted by (dim, walls, ceilings); id = index
  std::vector<std::vector<std::size_t>> by_dim;     // S_0 .. S_k
  std::vector<IncidenceRecord> incidences;          // grouped by `from`

  const exact::HermiteLattice& lattice() const { return lattice_; }

  /// Canonical ceilings of any lift.
  IntVector canonical(const IntVector& ceilings) const { return lattice_.reduce(ceilings); }

  /// Torus stratum of an arbitrary lift.
  std::optional<std::size_t> find(const std::vector<std::size_t>& walls, const IntVector& ceilings) const {
    auto it = index_.find({walls, canonical(ceilings)});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& d : by_dim) f.push_back(d.size());
    return f;
  }

  long euler_characteristic() const {
    long chi = 0;
    for (std::size_t m = 0; m < by_dim.size(); ++m) chi += (m % 2 ? -1L : 1L) * static_cast<long>(by_dim[m].size());
    return chi;
  }

  /// Position of a stratum within S_dim.
  std::size_t position(std::size_t id) const { return position_.at(id); }

  std::vector<const IncidenceRecord*> incidences_from(std::size_t id) const {
    // Records are grouped by `from` in increasing order.
    auto lo = std::lower_bound(incidences.begin(), incidences.end(), id,
                               [](const IncidenceRecord& r, std::size_t v) { return r.from < v; });
    std::vector<const IncidenceRecord*> out;
    for (; lo != incidences.end() && lo->from == id; ++lo) out.push_back(&*lo);
    return out;
  }

  void set_lattice(exact::HermiteLattice lattice) { lattice_ = std::move(lattice); }

  void rebuild_index() {
    index_.clear();
    position_.assign(strata.size(), 0);
    by_dim.assign(input.k + 1, {});
    for (const auto& s : strata) {
      index_[{s.type.walls, s.type.ceilings}] = s.id;
      position_[s.id] = by_dim[s.type.dim].size();
      by_dim[s.type.dim].push_back(s.id);
    }
  }

 private:
  exact::HermiteLattice lattice_;
  std::map<std::pair<std::vector<std::size_t>, IntVector>, std::size_t> index_;
  std::vector<std::size_t> position_;
};

/// The facets of the closure of sigma's canonical lift, each reduced to its
/// torus stratum, with epsilon = ceilings(sigma) - ceilings(facet lift).
inline std::vector<IncidenceRecord> facet_incidences(const StrataComplex& complex, std::size_t sigma_id) {
  const Stratum& sigma = complex.strata.at(sigma_id);
  if (sigma.type.dim == 0) return {};
  const LatticeMapInput& in = complex.input;
  std::vector<IncidenceRecord> out;
  for (const auto& facet : exact::polytope_facets(cell_system(in, sigma.type))) {
    const auto q = exact::relative_interior_point(facet.system);
    if (!q) throw std::logic_error("facet_incidences: empty facet");
    const StratumType lift = cell_type_at(in, *q);
    const auto tau_id = complex.find(lift.walls, lift.ceilings);
    if (!tau_id) throw std::logic_error("facet_incidences: facet stratum not enumerated");
    const Stratum& tau = complex.strata[*tau_id];
    if (tau.type.dim + 1 != sigma.type.dim) throw std::logic_error("facet_incidences: facet has wrong dimension");
    IncidenceRecord rec;
    rec.from = sigma_id;
    rec.to = *tau_id;
    rec.lift_walls = lift.walls;
    rec.lift_ceilings = lift.ceilings;
    rec.epsilon = sigma.type.ceilings - lift.ceilings;
    for (const auto& e : rec.epsilon)
      if (e != 0 && e != 1) throw std::logic_error("facet_incidences: epsilon outside {0,1}");
    rec.sign = orientation_sign(sigma.orientation, sigma.interior_point, tau.orientation, *q);
    rec.facet_point = *q;
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), [](const IncidenceRecord& a, const IncidenceRecord& b) {
    return std::tie(a.to, a.lift_ceilings, a.lift_walls) < std::tie(b.to, b.lift_ceilings, b.lift_walls);
  });
  return out;
}

/// Strata seeded from the cells meeting the closed unit cube (optionally
/// translated by `cube_offset`), canonicalized modulo the translation lattice
/// and deduplicated, with all incidences.
inline StrataComplex enumerate_strata(const LatticeMapInput& in, const IntVector& cube_offset = {}) {
  validate_input(in);
  LinearSystem cube(in.k);
  for (std::size_t j = 0; j < in.k; ++j) {
    IntVector e(in.k);
    e[j] = 1;
    const Integer o = cube_offset.empty() ? Integer(0) : cube_offset.at(j);
    cube.at_least(e, Rational(o)).at_most(e, Rational(o + 1));
  }
  StrataComplex complex;
  complex.input = in;
  complex.set_lattice(exact::HermiteLattice(in.matrix()));

  std::vector<StratumType> types;
  for (auto t : enumerate_cells(in, cube)) {
    t.ceilings = complex.canonical(t.ceilings);
    types.push_back(std::move(t));
  }
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());

  for (auto& t : types) {
    Stratum s;
    s.id = complex.strata.size();
    const auto w = exact::strict_feasible(cell_system(in, t)).witness;
    if (!w) throw std::logic_error("enumerate_strata: canonical lift is empty");
    s.interior_point = *w;
    std::vector<IntVector> normals;
    for (auto i : t.walls) normals.push_back(in.psi[i]);
    s.orientation.basis = exact::nullspace_basis(normals, in.k);
    s.type = std::move(t);
    complex.strata.push_back(std::move(s));
  }
  complex.rebuild_index();
  for (const auto& s : complex.strata)
    for (auto& r : facet_incidences(complex, s.id)) complex.incidences.push_back(std::move(r));
  return complex;
}

/// Flips the stored orientation of every stratum with flips[id] set and
/// updates incidence signs accordingly.
inline StrataComplex reorient(StrataComplex complex, const std::vector<bool>& flips) {
  for (auto& s : complex.strata)
    if (flips.at(s.id)) s.orientation.sign = -s.orientation.sign;
  for (auto& r : complex.incidences) {
    if (flips.at(r.from)) r.sign = -r.sign;
    if (flips.at(r.to)) r.sign = -r.sign;
  }
  return complex;
}

}  // namespace hhl
