/**
 * Degree-by-degree certification that the affine HHL complex resolves
 * C[C cap M].
 *
 * For a degree l in M with lift l~ in Z^n, the l-graded piece has basis the
 * monomials x^a e_sigma (a >= 0) of degree l, and is isomorphic to the
 * cellular chain complex of U = {x : H_i(x) <= l_i} via a = l~ - ceilings.
 * U is empty or contractible, and nonempty exactly when the Farkas system
 * is feasible.
 *
 * When the rows of P do not positively span, U is unbounded and the piece is
 * infinite. We then certify the finite subcomplex of cells inside
 *
 *     V = {x : l_i - D <= H_i(x) <= l_i},
 *
 * a convex polytope bounded by arrangement hyperplanes (hence a union of
 * closed cells, and contractible when nonempty). These exhaust U as D grows,
 * so the homology of the piece is the colimit of theirs. On the monomial side
 * V corresponds to a_i <= D (walls) and a_i <= D - 1 (other indices).
 */
#pragma once

#include "hhl/complex.hpp"

#include <chrono>

namespace hhl {

/// U (or its truncation V when `depth` is set) for the lift l~.
struct Region {
  IntVector lift;
  std::optional<long> depth;

  LinearSystem system(const LatticeMapInput& in) const {
    LinearSystem s(in.k);
    for (std::size_t i = 0; i < in.n; ++i) {
      s.at_most(in.psi[i], Rational(lift[i]));
      if (depth) s.at_least(in.psi[i], Rational(lift[i] - *depth));
    }
    return s;
  }
};

inline bool farkas_member(const LatticeMapInput& in, const IntVector& lift) {
  return exact::is_feasible(Region{lift, std::nullopt}.system(in));
}

inline bool is_bounded_case(const LatticeMapInput& in) { return exact::is_recession_trivial(in.matrix()); }

/// Smallest depth D >= 1 with V nonempty (U must be nonempty).
inline long truncation_depth(const LatticeMapInput& in, const IntVector& lift) {
  for (long d = 1; d <= 4096; d *= 2)
    if (exact::is_feasible(Region{lift, d}.system(in))) {
      long lo = d / 2, hi = d;  // lo infeasible (or 0), hi feasible
      while (hi - lo > 1) {
        const long mid = (lo + hi) / 2;
        (exact::is_feasible(Region{lift, mid}.system(in)) ? hi : lo) = mid;
      }
      return hi;
    }
  throw std::logic_error("truncation_depth: no feasible truncation");
}

/// A translate of a canonical stratum lift.
struct LiftedCell {
  std::size_t stratum = 0;
  std::size_t dim = 0;
  IntVector ceilings;

  friend bool operator<(const LiftedCell& a, const LiftedCell& b) {
    return std::tie(a.dim, a.stratum, a.ceilings) < std::tie(b.dim, b.stratum, b.ceilings);
  }
  friend bool operator==(const LiftedCell&, const LiftedCell&) = default;
};

/// Finite chain complex of Q-vector spaces with integer boundary matrices.
struct GradedPiece {
  DegreeLabel degree;
  Region region;
  std::vector<std::vector<LiftedCell>> cells;    // per dimension, sorted
  std::vector<exact::SparseIntMatrix> boundary;  // [m] : C_m -> C_{m-1}; [0] unused
  bool closed = true;                            // every boundary term landed inside the piece

  std::size_t total_cells() const {
    std::size_t t = 0;
    for (const auto& c : cells) t += c.size();
    return t;
  }
};

using BettiVector = std::vector<std::size_t>;

namespace detail {

inline IntVector apply(const IntMatrix& p, const IntVector& t) { return p * t; }

/// Whether a cell with these walls and ceilings lies in the region.
inline bool cell_in_region(const LatticeMapInput& in, const Region& region, const std::vector<std::size_t>& walls,
                           const IntVector& c) {
  std::size_t w = 0;
  for (std::size_t i = 0; i < in.n; ++i) {
    const bool wall = w < walls.size() && walls[w] == i;
    if (wall) ++w;
    if (c[i] > region.lift[i]) return false;
    if (region.depth && (wall ? c[i] : c[i] - 1) < region.lift[i] - *region.depth) return false;
  }
  return true;
}

inline void require_bounded(const LatticeMapInput& in, const Region& region) {
  if (!region.depth && !is_bounded_case(in))
    throw Error(ErrorKind::UnboundedRegion, "region is unbounded: psi rows do not positively span");
}

inline std::vector<std::vector<LiftedCell>> sorted_by_dim(std::vector<LiftedCell> cells, std::size_t k) {
  std::vector<std::vector<LiftedCell>> out(k + 1);
  std::sort(cells.begin(), cells.end());
  for (auto& c : cells) out[c.dim].push_back(std::move(c));
  return out;
}

inline std::vector<std::map<std::pair<std::size_t, IntVector>, std::size_t>> index_cells(
    const std::vector<std::vector<LiftedCell>>& cells) {
  std::vector<std::map<std::pair<std::size_t, IntVector>, std::size_t>> idx(cells.size());
  for (std::size_t m = 0; m < cells.size(); ++m)
    for (std::size_t j = 0; j < cells[m].size(); ++j) idx[m][{cells[m][j].stratum, cells[m][j].ceilings}] = j;
  return idx;
}

}  // namespace detail

/// Lift route: translate every canonical stratum lift by the t in Z^k that
/// keep it inside the region; boundaries from translated facet lifts.
inline GradedPiece strata_in_region(const StrataComplex& strata, const Region& region) {
  const LatticeMapInput& in = strata.input;
  detail::require_bounded(in, region);
  GradedPiece piece;
  piece.region = region;
  const LinearSystem sys = region.system(in);
  std::vector<LiftedCell> found;
  if (exact::is_feasible(sys)) {
    std::vector<Rational> lo(in.k), hi(in.k);
    for (std::size_t j = 0; j < in.k; ++j) {
      IntVector e(in.k);
      e[j] = 1;
      const auto r = exact::functional_range(sys, e);
      lo[j] = *r.min;
      hi[j] = *r.max;
    }
    const IntMatrix p = in.matrix();
    for (const auto& s : strata.strata) {
      // q + t in the box for the interior point q.
      std::vector<Integer> tlo(in.k), thi(in.k);
      bool empty = false;
      for (std::size_t j = 0; j < in.k; ++j) {
        tlo[j] = exact::ceil(lo[j] - s.interior_point[j]);
        thi[j] = exact::floor(hi[j] - s.interior_point[j]);
        if (tlo[j] > thi[j]) empty = true;
      }
      if (empty) continue;
      IntVector t = tlo;
      while (true) {
        const IntVector c = s.type.ceilings + detail::apply(p, t);
        if (detail::cell_in_region(in, region, s.type.walls, c)) found.push_back({s.id, s.type.dim, c});
        std::size_t j = 0;
        while (j < in.k && ++t[j] > thi[j]) t[j] = tlo[j], ++j;
        if (j == in.k) break;
      }
    }
  }
  piece.cells = detail::sorted_by_dim(std::move(found), in.k);
  piece.boundary.assign(in.k + 1, {});
  const auto idx = detail::index_cells(piece.cells);
  for (std::size_t m = 1; m <= in.k; ++m) {
    auto& b = piece.boundary[m];
    b.rows = piece.cells[m - 1].size();
    b.cols = piece.cells[m].size();
    for (std::size_t j = 0; j < piece.cells[m].size(); ++j) {
      const LiftedCell& cell = piece.cells[m][j];
      const IntVector shift = cell.ceilings - strata.strata[cell.stratum].type.ceilings;
      for (const auto* r : strata.incidences_from(cell.stratum)) {
        auto it = idx[m - 1].find({r->to, r->lift_ceilings + shift});
        if (it == idx[m - 1].end()) {
          piece.closed = false;
          continue;
        }
        b.add(it->second, j, r->sign);
      }
    }
  }
  return piece;
}

/// Monomial route: basis x^a e_sigma of degree l with a >= 0, i.e.
/// a = l~ - c_sigma - P t for integer t. Since c_sigma >= P q_sigma for the
/// interior point q_sigma, a >= 0 forces q_sigma + t into U (V), so t ranges over
/// the bounding box of the region shifted by -q_sigma. Boundary from the HHL
/// differential; cells are reported through the bijection c = l~ - a.
inline GradedPiece graded_piece(const HHLComplex& complex, const Region& region) {
  const LatticeMapInput& in = complex.strata.input;
  detail::require_bounded(in, region);
  GradedPiece piece;
  piece.region = region;
  piece.degree = complex.grading.project(region.lift);
  std::vector<LiftedCell> found;
  std::vector<std::vector<std::pair<std::size_t, IntVector>>> monomials(in.k + 1);  // (generator, a)
  const IntMatrix p = in.matrix();
  const LinearSystem sys = region.system(in);
  std::vector<Rational> lo(in.k), hi(in.k);
  const bool nonempty = exact::is_feasible(sys);
  if (nonempty)
    for (std::size_t j = 0; j < in.k; ++j) {
      IntVector e(in.k);
      e[j] = 1;
      const auto r = exact::functional_range(sys, e);
      lo[j] = *r.min;
      hi[j] = *r.max;
    }
  for (std::size_t m = 0; m <= in.k && nonempty; ++m)
    for (std::size_t g = 0; g < complex.modules[m].size(); ++g) {
      const Stratum& s = complex.strata.strata[complex.modules[m][g].stratum];
      const IntVector base = region.lift - s.type.ceilings;
      IntVector tlo(in.k), thi(in.k);
      bool empty = false;
      for (std::size_t j = 0; j < in.k; ++j) {
        tlo[j] = exact::ceil(lo[j] - s.interior_point[j]);
        thi[j] = exact::floor(hi[j] - s.interior_point[j]);
        if (tlo[j] > thi[j]) empty = true;
      }
      if (empty) continue;
      for (IntVector t = tlo;;) {
        const IntVector a = base - p * t;
        bool keep = std::all_of(a.begin(), a.end(), [](const Integer& x) { return x >= 0; });
        if (keep && region.depth) {
          // a_i <= D on walls, D - 1 elsewhere.
          std::size_t w = 0;
          for (std::size_t i = 0; i < in.n && keep; ++i) {
            const bool wall = w < s.type.walls.size() && s.type.walls[w] == i;
            if (wall) ++w;
            keep = a[i] <= *region.depth - (wall ? 0 : 1);
          }
        }
        if (keep) {
          if (degree_of_monomial(complex, a, s.id) != piece.degree) throw std::logic_error("graded_piece: degree mismatch");
          monomials[m].push_back({g, a});
        }
        std::size_t j = 0;
        while (j < in.k && ++t[j] > thi[j]) t[j] = tlo[j], ++j;
        if (j == in.k) break;
      }
    }
  for (std::size_t m = 0; m <= in.k; ++m)
    for (const auto& [g, a] : monomials[m]) found.push_back({complex.modules[m][g].stratum, m, region.lift - a});
  piece.cells = detail::sorted_by_dim(std::move(found), in.k);
  const auto idx = detail::index_cells(piece.cells);

  std::vector<std::vector<std::vector<std::pair<std::size_t, const Polynomial*>>>> columns(in.k + 1);
  for (std::size_t m = 1; m <= in.k; ++m) {
    columns[m].resize(complex.modules[m].size());
    for (const auto& [rc, poly] : complex.d(m).entries) columns[m][rc.second].push_back({rc.first, &poly});
  }
  piece.boundary.assign(in.k + 1, {});
  for (std::size_t m = 1; m <= in.k; ++m) {
    auto& b = piece.boundary[m];
    b.rows = piece.cells[m - 1].size();
    b.cols = piece.cells[m].size();
    for (const auto& [g, a] : monomials[m]) {
      const std::size_t sigma = complex.modules[m][g].stratum;
      const std::size_t col = idx[m].at({sigma, region.lift - a});
      for (const auto& [row, poly] : columns[m][g]) {
        const std::size_t tau = complex.modules[m - 1][row].stratum;
        for (const auto& term : *poly) {
          auto it = idx[m - 1].find({tau, region.lift - (a + term.exponents)});
          if (it == idx[m - 1].end()) {
            piece.closed = false;
            continue;
          }
          b.add(it->second, col, term.coeff);
        }
      }
    }
  }
  return piece;
}

inline bool boundary_squares_to_zero(const GradedPiece& piece) {
  for (std::size_t m = 2; m < piece.boundary.size(); ++m)
    if (!exact::multiply(piece.boundary[m - 1], piece.boundary[m]).entries.empty()) return false;
  return true;
}

inline BettiVector betti(const GradedPiece& piece) {
  const std::size_t k = piece.cells.size() - 1;
  std::vector<std::size_t> rank(k + 2, 0);
  for (std::size_t m = 1; m <= k; ++m) rank[m] = exact::sparse_rank(piece.boundary[m]);
  BettiVector b(k + 1);
  for (std::size_t m = 0; m <= k; ++m) b[m] = piece.cells[m].size() - rank[m] - rank[m + 1];
  return b;
}

inline BettiVector acyclic_betti(std::size_t k, bool nonempty) {
  BettiVector b(k + 1, 0);
  if (nonempty) b[0] = 1;
  return b;
}

/// Integral homology: per degree, the free rank and the torsion orders.
struct IntegralHomology {
  std::vector<std::size_t> free_rank;
  std::vector<IntVector> torsion;

  bool h0_free_of_rank_one() const { return free_rank.at(0) == 1 && torsion.at(0).empty(); }
};

inline IntegralHomology integral_homology(const GradedPiece& piece) {
  const std::size_t k = piece.cells.size() - 1;
  std::vector<std::size_t> rank(k + 2, 0);
  std::vector<IntVector> factors(k + 2);
  for (std::size_t m = 1; m <= k; ++m) {
    const auto& b = piece.boundary[m];
    if (b.rows == 0 || b.cols == 0) continue;
    const auto snf = exact::smith_normal_form(b.dense());
    for (const auto& d : snf.invariant_factors()) {
      if (d == 0) continue;
      ++rank[m];
      if (d != 1) factors[m].push_back(d);
    }
  }
  IntegralHomology h;
  for (std::size_t m = 0; m <= k; ++m) {
    h.free_rank.push_back(piece.cells[m].size() - rank[m] - rank[m + 1]);
    h.torsion.push_back(factors[m + 1]);
  }
  return h;
}

/// Both enumerations give the same cells under a <-> l~ - a, and the same
/// boundary matrices entry by entry.
inline bool bijection_check(const HHLComplex& complex, const Region& region) {
  const GradedPiece a = graded_piece(complex, region);
  const GradedPiece b = strata_in_region(complex.strata, region);
  return a.closed && b.closed && a.cells == b.cells && a.boundary == b.boundary;
}

/// Independent route: enumerate the arrangement cells inside the region
/// directly and take facets of their closures.
inline GradedPiece geometric_cellular_complex(const LatticeMapInput& in, const Region& region) {
  detail::require_bounded(in, region);
  GradedPiece piece;
  piece.region = region;
  const LinearSystem sys = region.system(in);
  std::vector<StratumType> types = exact::is_feasible(sys) ? enumerate_cells(in, sys) : std::vector<StratumType>{};
  std::vector<std::vector<StratumType>> by_dim(in.k + 1);
  for (auto& t : types) by_dim[t.dim].push_back(std::move(t));
  piece.cells.assign(in.k + 1, {});
  std::vector<std::map<StratumType, std::size_t>> idx(in.k + 1);
  for (std::size_t m = 0; m <= in.k; ++m)
    for (std::size_t j = 0; j < by_dim[m].size(); ++j) {
      idx[m][by_dim[m][j]] = j;
      piece.cells[m].push_back({0, m, by_dim[m][j].ceilings});
    }
  auto orientation_of = [&](const StratumType& t) {
    std::vector<IntVector> normals;
    for (auto i : t.walls) normals.push_back(in.psi[i]);
    return Orientation{exact::nullspace_basis(normals, in.k), 1};
  };
  piece.boundary.assign(in.k + 1, {});
  for (std::size_t m = 1; m <= in.k; ++m) {
    auto& b = piece.boundary[m];
    b.rows = by_dim[m - 1].size();
    b.cols = by_dim[m].size();
    for (std::size_t j = 0; j < by_dim[m].size(); ++j) {
      const StratumType& sigma = by_dim[m][j];
      const LinearSystem cell = cell_system(in, sigma);
      const auto q = exact::strict_feasible(cell).witness;
      const Orientation os = orientation_of(sigma);
      for (const auto& facet : exact::polytope_facets(cell)) {
        const auto fq = exact::relative_interior_point(facet.system);
        const StratumType tau = cell_type_at(in, *fq);
        auto it = idx[m - 1].find(tau);
        if (it == idx[m - 1].end()) {
          piece.closed = false;
          continue;
        }
        b.add(it->second, j, orientation_sign(os, *q, orientation_of(tau), *fq));
      }
    }
  }
  return piece;
}

/// Hilbert function of C[C cap M] on the window: 1 iff the degree is in C cap M.
inline std::map<DegreeLabel, int> hilbert_function(const LatticeMapInput& in, long bound) {
  validate_input(in);
  const GradingGroup g(in.matrix());
  std::map<DegreeLabel, int> h;
  for (const auto& l : g.window(bound)) h[l] = farkas_member(in, g.lift(l)) ? 1 : 0;
  return h;
}

struct VerifyOptions {
  long window = 3;
  bool integral = false;
  bool geometric = false;
};

struct DegreeEntry {
  DegreeLabel degree;
  IntVector lift;
  bool feasible = false;
  std::optional<long> depth;  // truncation depth in the unbounded case
  BettiVector betti;          // from the HHL matrices
  BettiVector betti_lifts;    // from translated stratum lifts
  std::optional<BettiVector> betti_geometric;
  bool bijection_ok = false;
  bool boundary_squared_zero = false;
  std::optional<bool> integral_h0_free_rank_one;
  bool ok = false;
};

struct VerificationReport {
  LatticeMapInput input;
  long window = 0;
  bool bounded = true;  // false: pieces certified through truncations ("windowed")
  bool d_squared = false;
  bool degree_preservation = false;
  std::vector<DegreeEntry> entries;
  bool pass = false;
  double seconds = 0;

  std::string window_description() const {
    std::string s = "free coordinates in [-" + std::to_string(window) + "," + std::to_string(window) + "], all torsion classes";
    if (!bounded) s += "; windowed: unbounded regions truncated to l_i - D <= H_i <= l_i";
    return s;
  }
};

inline DegreeEntry verify_degree(const HHLComplex& complex, const DegreeLabel& l, const VerifyOptions& opt) {
  const LatticeMapInput& in = complex.strata.input;
  DegreeEntry e;
  e.degree = l;
  e.lift = complex.grading.lift(l);
  e.feasible = farkas_member(in, e.lift);
  Region region{e.lift, std::nullopt};
  if (!is_bounded_case(in)) {
    region.depth = e.feasible ? truncation_depth(in, e.lift) : 1;
    e.depth = region.depth;
  }
  const GradedPiece a = graded_piece(complex, region);
  const GradedPiece b = strata_in_region(complex.strata, region);
  e.bijection_ok = a.closed && b.closed && a.cells == b.cells && a.boundary == b.boundary;
  e.boundary_squared_zero = boundary_squares_to_zero(a);
  e.betti = betti(a);
  e.betti_lifts = betti(b);
  const BettiVector expected = acyclic_betti(in.k, e.feasible);
  e.ok = e.bijection_ok && e.boundary_squared_zero && e.betti == expected && e.betti_lifts == expected;
  if (opt.geometric) {
    e.betti_geometric = betti(geometric_cellular_complex(in, region));
    e.ok = e.ok && *e.betti_geometric == e.betti;
  }
  if (opt.integral && e.feasible) {
    e.integral_h0_free_rank_one = integral_homology(a).h0_free_of_rank_one();
    e.ok = e.ok && *e.integral_h0_free_rank_one;
  }
  return e;
}

inline VerificationReport verify_resolution(const HHLComplex& complex, const VerifyOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  r.input = complex.strata.input;
  r.window = opt.window;
  r.bounded = is_bounded_case(r.input);
  r.d_squared = check_d_squared(complex);
  r.degree_preservation = check_degree_preservation(complex);
  r.pass = r.d_squared && r.degree_preservation;
  for (const auto& l : complex.grading.window(opt.window)) {
    r.entries.push_back(verify_degree(complex, l, opt));
    r.pass = r.pass && r.entries.back().ok;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline VerificationReport verify_resolution(const LatticeMapInput& in, const VerifyOptions& opt) {
  return verify_resolution(build_affine_complex(enumerate_strata(in)), opt);
}

/// Multiplication by x_i from the degree-l piece to the degree-(l + [v_i*])
/// piece is nonzero on H_0: the image of a vertex monomial is not a boundary.
inline bool h0_multiplication_check(const HHLComplex& complex, const IntVector& lift, std::size_t i) {
  const LatticeMapInput& in = complex.strata.input;
  if (i >= in.n) throw Error(ErrorKind::IndexOutOfRange, "variable index out of range");
  if (!farkas_member(in, lift)) throw std::invalid_argument("h0_multiplication_check: degree not in C cap M");
  IntVector target = lift;
  target[i] += 1;
  Region src{lift, std::nullopt}, dst{target, std::nullopt};
  if (!is_bounded_case(in)) {
    // One step deeper on the target keeps the source truncation inside it.
    src.depth = truncation_depth(in, lift);
    dst.depth = *src.depth + 1;
  }
  const GradedPiece a = graded_piece(complex, src);
  const GradedPiece b = graded_piece(complex, dst);
  if (a.cells[0].empty()) return false;
  // x_i maps x^a e_sigma to x^(a + e_i) e_sigma: the same cell l~ - a.
  const LiftedCell& v = a.cells[0].front();
  std::size_t row = b.cells[0].size();
  for (std::size_t j = 0; j < b.cells[0].size(); ++j)
    if (b.cells[0][j].stratum == v.stratum && b.cells[0][j].ceilings == v.ceilings) row = j;
  if (row == b.cells[0].size()) return false;
  exact::SparseIntMatrix d1 = in.k >= 1 ? b.boundary[1] : exact::SparseIntMatrix{b.cells[0].size(), 0, {}};
  const std::size_t before = exact::sparse_rank(d1);
  d1.add(row, d1.cols, 1);
  ++d1.cols;
  return exact::sparse_rank(d1) > before;
}

}  // namespace hhl
