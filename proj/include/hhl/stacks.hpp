/**
 * Subfans of the first orthant, chart localizations, group data and
 * line-bundle labels, and conversion from (L_X, Sigma_X, beta_X, phi) input.
 *
 * A group G mapping to Spec C[M] is recorded on the character side: a
 * quotient X = Z^p / (relations) and a map Phi : L* = Z^n -> Z^p that kills
 * the image of psi^T, so it descends to M -> X.
 */
#pragma once

#include "hhl/complex.hpp"

#include <set>

namespace hhl {

/// Downward-closed family of subsets of {0..n-1}, given by maximal cones.
struct Fan {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> maximal_cones;
  std::set<std::vector<std::size_t>> closure;

  bool contains(std::vector<std::size_t> cone) const {
    std::sort(cone.begin(), cone.end());
    return closure.count(cone) > 0;
  }

  static Fan orthant(std::size_t n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    Fan f{n, {all}, {}};
    return f;
  }
};

/// Checks indices and fills in the closure (all faces, the empty cone included).
inline Fan validate_fan(Fan fan, std::size_t n) {
  fan.n = n;
  fan.closure.clear();
  fan.closure.insert({});
  for (auto& cone : fan.maximal_cones) {
    std::sort(cone.begin(), cone.end());
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
      throw Error(ErrorKind::InvalidInput, "fan cone lists an index twice");
    for (auto i : cone)
      if (i >= n) throw Error(ErrorKind::IndexOutOfRange, "cone index " + std::to_string(i + 1) + " exceeds n = " + std::to_string(n));
    if (cone.size() > 20) throw Error(ErrorKind::Unsupported, "cones with more than 20 rays");
    for (std::size_t mask = 0; mask < (std::size_t{1} << cone.size()); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t j = 0; j < cone.size(); ++j)
        if (mask >> j & 1) face.push_back(cone[j]);
      fan.closure.insert(face);
    }
  }
  return fan;
}

class GroupSpec {
 public:
  GroupSpec() = default;
  GroupSpec(QuotientGroup characters, IntMatrix char_map) : characters_(std::move(characters)), map_(std::move(char_map)) {}

  /// G = 1.
  static GroupSpec trivial(std::size_t n) { return {QuotientGroup(IntMatrix{{1}}), IntMatrix(1, n)}; }

  /// G = Spec C[M] itself: X = M.
  static GroupSpec full(const LatticeMapInput& in) { return {QuotientGroup(in.matrix()), IntMatrix::identity(in.n)}; }

  /// X = Z^free + Z/torsion_1 + ..., with char_map sending v_i* to column i of `map`.
  static GroupSpec explicit_group(std::size_t free_rank, const IntVector& torsion, IntMatrix map) {
    const std::size_t p = free_rank + torsion.size();
    if (p == 0) return trivial(map.cols());
    if (map.rows() != p) throw Error(ErrorKind::InvalidInput, "group map must have free_rank + #torsion rows");
    IntMatrix rel(p, std::max<std::size_t>(torsion.size(), 1));
    for (std::size_t j = 0; j < torsion.size(); ++j) {
      if (torsion[j] < 2) throw Error(ErrorKind::InvalidInput, "torsion orders must be at least 2");
      rel(free_rank + j, j) = torsion[j];
    }
    return {QuotientGroup(rel), std::move(map)};
  }

  const QuotientGroup& characters() const { return characters_; }
  const IntMatrix& char_map() const { return map_; }

  /// Class in X of a vector of L*.
  DegreeLabel classify(const IntVector& v) const { return characters_.project(map_ * v); }

  /// The map must kill psi^T(Lambda*) to descend to M.
  void validate(const LatticeMapInput& in) const {
    if (map_.cols() != in.n) throw Error(ErrorKind::InvalidInput, "group map must have n columns");
    const IntMatrix p = in.matrix();
    for (std::size_t c = 0; c < p.cols(); ++c)
      if (!characters_.lattice().contains(map_ * p.col(c)))
        throw Error(ErrorKind::InvalidInput, "group map does not descend to M");
  }

 private:
  QuotientGroup characters_;
  IntMatrix map_;
};

struct LineBundleLabel {
  std::size_t stratum = 0;
  IntVector coefficients;  // -ceilings of the canonical lift
  DegreeLabel cls;
};

inline std::vector<LineBundleLabel> line_bundle_labels(const StrataComplex& strata, const GroupSpec& group) {
  group.validate(strata.input);
  std::vector<LineBundleLabel> out;
  for (const auto& s : strata.strata) {
    IntVector coeff = s.type.ceilings;
    for (auto& x : coeff) x = -x;
    out.push_back({s.id, coeff, group.classify(coeff)});
  }
  return out;
}

/// Distinct line-bundle classes, sorted.
inline std::vector<DegreeLabel> thomsen_bondal_collection(const StrataComplex& strata, const GroupSpec& group) {
  std::set<DegreeLabel> classes;
  for (const auto& l : line_bundle_labels(strata, group)) classes.insert(l.cls);
  return {classes.begin(), classes.end()};
}

/// Generator degrees pushed from M to X.
inline std::map<std::size_t, DegreeLabel> equivariant_degrees(const HHLComplex& complex, const GroupSpec& group) {
  group.validate(complex.strata.input);
  std::map<std::size_t, DegreeLabel> out;
  for (const auto& s : complex.strata.strata) out[s.id] = group.classify(s.type.ceilings);
  return out;
}

/// Whether x^eps e_tau carries the label of e_sigma in X on every incidence.
inline bool equivariant_degrees_preserved(const HHLComplex& complex, const GroupSpec& group) {
  const auto deg = equivariant_degrees(complex, group);
  for (const auto& r : complex.strata.incidences) {
    const IntVector shifted = r.epsilon + complex.strata.strata[r.to].type.ceilings;
    if (group.classify(shifted) != deg.at(r.from)) return false;
  }
  return true;
}

/// The affine complex restricted to the chart of a cone: same matrices, the
/// variables outside the cone inverted.
struct ChartComplex {
  std::vector<std::size_t> cone;
  std::vector<std::size_t> inverted;
  const HHLComplex* complex = nullptr;

  std::string claim() const {
    return "resolution of i_*O_Y restricted to the chart with x_i inverted for i in the complement of the cone";
  }
};

inline ChartComplex localize_chart(const HHLComplex& complex, const Fan& fan, std::vector<std::size_t> cone) {
  std::sort(cone.begin(), cone.end());
  if (!fan.contains(cone)) throw Error(ErrorKind::ConeNotInFan, "cone is not in the fan");
  ChartComplex chart;
  chart.cone = cone;
  chart.complex = &complex;
  for (std::size_t i = 0; i < complex.n(); ++i)
    if (!std::binary_search(cone.begin(), cone.end(), i)) chart.inverted.push_back(i);
  return chart;
}

/// (L_X, Sigma_X, beta_X) with a substack given by phi : N_Y -> N_X.
struct GSInput {
  std::size_t n_x = 0;                          // rank of N_X
  std::vector<IntVector> rays;                  // ray generators in L_X
  std::vector<std::vector<std::size_t>> cones;  // maximal cones as ray indices, 0-based
  std::vector<IntVector> beta;                  // images in N_X of the basis of L_X
  std::vector<IntVector> phi;                   // images in N_X of the basis of N_Y
  std::vector<IntVector> l_y;                   // basis of L_Y inside L_X (kept for reference)

  friend bool operator==(const GSInput&, const GSInput&) = default;
};

struct ConvertedInput {
  LatticeMapInput input;
  Fan fan;
  GroupSpec group;
  IntMatrix quotient;  // N_X -> Lambda = coker phi
};

inline ConvertedInput convert_gs_input(const GSInput& gs) {
  const std::size_t nx = gs.n_x;
  if (nx == 0) throw Error(ErrorKind::InvalidInput, "n_x must be positive");
  if (gs.rays.empty()) throw Error(ErrorKind::InvalidInput, "at least one ray required");
  const std::size_t lx = gs.rays.front().size();
  if (gs.beta.size() != lx) throw Error(ErrorKind::InvalidInput, "beta must list one image per basis vector of L_X");
  for (const auto& r : gs.rays)
    if (r.size() != lx) throw Error(ErrorKind::InvalidInput, "rays must all lie in L_X");
  for (const auto& b : gs.beta)
    if (b.size() != nx) throw Error(ErrorKind::InvalidInput, "beta images must lie in N_X");
  for (const auto& f : gs.phi)
    if (f.size() != nx) throw Error(ErrorKind::InvalidInput, "phi images must lie in N_X");

  const std::size_t ny = gs.phi.size();
  IntMatrix phi(nx, ny);
  for (std::size_t c = 0; c < ny; ++c)
    for (std::size_t r = 0; r < nx; ++r) phi(r, c) = gs.phi[c][r];
  std::size_t rank = 0;
  IntMatrix u = IntMatrix::identity(nx);
  if (ny > 0) {
    const auto snf = exact::smith_normal_form(phi);
    for (const auto& d : snf.invariant_factors()) {
      if (d == 0) continue;
      ++rank;
      if (d != 1) throw Error(ErrorKind::CokernelNotFree, "coker phi is not free");
    }
    if (rank != ny) throw Error(ErrorKind::NonInjectivePhi, "phi is not injective");
    u = snf.U;
  }
  const std::size_t k = nx - rank;
  if (k == 0) throw Error(ErrorKind::DegenerateSubstack, "coker phi is zero: the substack is the whole stack (k >= 1 required)");
  IntMatrix q(k, nx);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < nx; ++c) q(r, c) = u(rank + r, c);
  detail::row_hermite(q);

  IntMatrix beta(nx, lx);
  for (std::size_t c = 0; c < lx; ++c)
    for (std::size_t r = 0; r < nx; ++r) beta(r, c) = gs.beta[c][r];
  const std::size_t n = gs.rays.size();
  IntMatrix ray_images(nx, n);  // beta * ray_i as columns
  std::vector<IntVector> psi;
  for (std::size_t i = 0; i < n; ++i) {
    const IntVector b = beta * gs.rays[i];
    for (std::size_t r = 0; r < nx; ++r) ray_images(r, i) = b[r];
    psi.push_back(q * b);
  }

  ConvertedInput out;
  out.input = LatticeMapInput::from_rows(psi);
  out.input.k = k;
  validate_input(out.input);
  Fan fan;
  fan.maximal_cones = gs.cones;
  out.fan = validate_fan(fan, n);
  // G = ker(L (x) C* -> N_X (x) C*) has characters Z^n / image of the transpose.
  out.group = GroupSpec(QuotientGroup(ray_images.transpose()), IntMatrix::identity(n));
  out.group.validate(out.input);
  out.quotient = q;
  return out;
}

}  // namespace hhl
