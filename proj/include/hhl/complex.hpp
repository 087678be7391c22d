/**
 * The affine HHL complex: a free module over R = C[x_1..x_n] with one
 * generator e_sigma per stratum, and differential
 *
 *     d e_sigma = sum over facet lifts tau~ of sigma~ of  sign * x^eps * e_tau,
 *
 * graded by M = Z^n / psi^T(Z^k) with deg(x^a e_sigma) = [a + ceilings(sigma~)].
 */
#pragma once

#include "hhl/grading.hpp"
#include "hhl/stratification.hpp"

#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace hhl {

struct MonomialTerm {
  Integer coeff;
  IntVector exponents;

  friend bool operator==(const MonomialTerm&, const MonomialTerm&) = default;
};

/// Sorted by exponent vector, no zero coefficients, no repeated exponents.
using Polynomial = std::vector<MonomialTerm>;

inline Polynomial normalize(const Polynomial& p) {
  std::map<IntVector, Integer> acc;
  for (const auto& t : p) acc[t.exponents] += t.coeff;
  Polynomial out;
  for (auto& [e, c] : acc)
    if (c != 0) out.push_back({c, e});
  return out;
}

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial s = a;
  s.insert(s.end(), b.begin(), b.end());
  return normalize(s);
}

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial s;
  for (const auto& x : a)
    for (const auto& y : b) s.push_back({x.coeff * y.coeff, x.exponents + y.exponents});
  return normalize(s);
}

inline Polynomial scale(const Polynomial& a, const Integer& c) {
  Polynomial s = a;
  for (auto& t : s) t.coeff *= c;
  return normalize(s);
}

inline std::string to_string(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& t = p[i];
    std::string mono;
    for (std::size_t j = 0; j < t.exponents.size(); ++j) {
      if (t.exponents[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars.at(j);
      if (t.exponents[j] != 1) mono += "^" + t.exponents[j].str();
    }
    const bool neg = t.coeff < 0;
    const Integer mag = neg ? Integer(-t.coeff) : t.coeff;
    std::string term = mono.empty() ? mag.str() : (mag == 1 ? mono : mag.str() + "*" + mono);
    if (i == 0)
      s += (neg ? "-" : "") + term;
    else
      s += (neg ? " - " : " + ") + term;
  }
  return s;
}

/// Sparse matrix of polynomials; keys are (row, col).
struct PolyMatrix {
  std::size_t rows = 0, cols = 0;
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> entries;

  const Polynomial& at(std::size_t r, std::size_t c) const {
    static const Polynomial zero;
    auto it = entries.find({r, c});
    return it == entries.end() ? zero : it->second;
  }
  void add(std::size_t r, std::size_t c, const Polynomial& p) {
    auto& e = entries[{r, c}];
    e = e + p;
    if (e.empty()) entries.erase({r, c});
  }
  bool is_zero() const { return entries.empty(); }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;
};

inline PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("PolyMatrix: dimension mismatch");
  PolyMatrix out{a.rows, b.cols, {}};
  std::map<std::size_t, std::vector<std::pair<std::size_t, const Polynomial*>>> a_by_col;
  for (const auto& [rc, p] : a.entries) a_by_col[rc.second].push_back({rc.first, &p});
  for (const auto& [rc, p] : b.entries) {
    auto it = a_by_col.find(rc.first);
    if (it == a_by_col.end()) continue;
    for (const auto& [r, q] : it->second) out.add(r, rc.second, *q * p);
  }
  return out;
}

struct Generator {
  std::size_t stratum = 0;
  DegreeLabel degree;
};

class HHLComplex {
 public:
  StrataComplex strata;
  GradingGroup grading;
  std::vector<std::vector<Generator>> modules;  // C_0 .. C_k
  std::vector<PolyMatrix> differentials;        // [m] : C_m -> C_{m-1}, entry (tau, sigma); [0] unused

  std::size_t length() const { return modules.size() - 1; }
  std::size_t n() const { return strata.input.n; }
  const PolyMatrix& d(std::size_t m) const { return differentials.at(m); }
};

inline DegreeLabel degree_of_monomial(const HHLComplex& c, const IntVector& exponents, std::size_t sigma) {
  return c.grading.project(exponents + c.strata.strata.at(sigma).type.ceilings);
}

inline HHLComplex build_affine_complex(const StrataComplex& strata) {
  HHLComplex c;
  c.strata = strata;
  c.grading = GradingGroup(strata.input.matrix());
  const std::size_t k = strata.input.k;
  c.modules.assign(k + 1, {});
  for (std::size_t m = 0; m <= k; ++m)
    for (auto id : strata.by_dim[m]) c.modules[m].push_back({id, c.grading.project(strata.strata[id].type.ceilings)});
  c.differentials.assign(k + 1, {});
  for (std::size_t m = 1; m <= k; ++m) {
    c.differentials[m].rows = strata.by_dim[m - 1].size();
    c.differentials[m].cols = strata.by_dim[m].size();
  }
  for (const auto& r : strata.incidences) {
    const std::size_t m = strata.strata[r.from].type.dim;
    c.differentials[m].add(strata.position(r.to), strata.position(r.from), {{Integer(r.sign), r.epsilon}});
  }
  return c;
}

inline bool check_d_squared(const HHLComplex& c) {
  for (std::size_t m = 2; m <= c.length(); ++m)
    if (!(c.d(m - 1) * c.d(m)).is_zero()) return false;
  return true;
}

/// deg(e_sigma) = deg(x^eps e_tau) for every incidence record.
inline bool check_degree_preservation(const HHLComplex& c) {
  for (const auto& r : c.strata.incidences)
    if (degree_of_monomial(c, IntVector(c.n()), r.from) != degree_of_monomial(c, r.epsilon, r.to)) return false;
  return true;
}

/// The same complex built from strata with the orientations of `flips` reversed.
inline HHLComplex reorient(const HHLComplex& c, const std::vector<bool>& flips) {
  return build_affine_complex(reorient(c.strata, flips));
}

inline PolyMatrix transpose(const PolyMatrix& a) {
  PolyMatrix t{a.cols, a.rows, {}};
  for (const auto& [rc, p] : a.entries) t.entries[{rc.second, rc.first}] = p;
  return t;
}

/// A chain of maps C_1 -> C_0, C_2 -> C_1, ...; chain[m-1] is d_m.
using MatrixChain = std::vector<PolyMatrix>;

inline std::vector<std::size_t> module_sizes(const MatrixChain& chain) {
  std::vector<std::size_t> sizes;
  if (chain.empty()) return sizes;
  sizes.push_back(chain[0].rows);
  for (std::size_t m = 0; m < chain.size(); ++m) {
    if (chain[m].rows != sizes[m]) throw std::invalid_argument("MatrixChain: incompatible sizes");
    sizes.push_back(chain[m].cols);
  }
  return sizes;
}

/// Per-module signs s with b_m = S_{m-1} a_m S_m, when such exist.
inline std::optional<std::vector<std::vector<int>>> signed_diagonal_signs(const MatrixChain& a, const MatrixChain& b) {
  const auto sizes = module_sizes(a);
  if (sizes != module_sizes(b)) return std::nullopt;
  std::vector<std::vector<int>> s(sizes.size());
  for (std::size_t m = 0; m < sizes.size(); ++m) s[m].assign(sizes[m], 0);
  // Constraint graph: node (m, i); an entry (r, c) of d_m relates (m-1, r) and (m, c).
  using Node = std::pair<std::size_t, std::size_t>;
  std::map<Node, std::vector<std::pair<Node, int>>> adj;
  for (std::size_t m = 1; m < sizes.size(); ++m) {
    std::set<std::pair<std::size_t, std::size_t>> keys;
    for (const auto& [rc, p] : a[m - 1].entries) keys.insert(rc);
    for (const auto& [rc, p] : b[m - 1].entries) keys.insert(rc);
    for (const auto& rc : keys) {
      const Polynomial& pa = a[m - 1].at(rc.first, rc.second);
      const Polynomial& pb = b[m - 1].at(rc.first, rc.second);
      int rel;
      if (pa == pb)
        rel = 1;
      else if (scale(pa, -1) == pb)
        rel = -1;
      else
        return std::nullopt;
      const Node u{m - 1, rc.first}, v{m, rc.second};
      adj[u].push_back({v, rel});
      adj[v].push_back({u, rel});
    }
  }
  for (std::size_t m = 0; m < s.size(); ++m)
    for (std::size_t i = 0; i < s[m].size(); ++i) {
      if (s[m][i] != 0) continue;
      s[m][i] = 1;
      std::deque<Node> queue{{m, i}};
      while (!queue.empty()) {
        const Node u = queue.front();
        queue.pop_front();
        for (const auto& [v, rel] : adj[u]) {
          const int want = s[u.first][u.second] * rel;
          int& sv = s[v.first][v.second];
          if (sv == 0) {
            sv = want;
            queue.push_back(v);
          } else if (sv != want) {
            return std::nullopt;
          }
        }
      }
    }
  return s;
}

inline MatrixChain chain_of(const HHLComplex& c) { return {c.differentials.begin() + 1, c.differentials.end()}; }

inline std::optional<std::vector<std::vector<int>>> signed_diagonal_equivalence(const HHLComplex& a, const HHLComplex& b) {
  return signed_diagonal_signs(chain_of(a), chain_of(b));
}

/// Whether b is obtained from a by permuting and negating basis elements of
/// each module (the same change of basis on both sides of a shared module).
/// Exhaustive over permutations, pruned on the zero pattern up to sign.
inline bool signed_permutation_equivalent(const MatrixChain& a, const MatrixChain& b) {
  const auto sizes = module_sizes(a);
  if (sizes != module_sizes(b)) return false;
  std::vector<std::vector<std::size_t>> perm(sizes.size());
  // b entry at (perm[m-1][r], perm[m][c]) must equal a entry at (r, c) up to sign.
  auto consistent = [&](std::size_t m) {
    for (std::size_t r = 0; r < sizes[m - 1]; ++r)
      for (std::size_t c = 0; c < sizes[m]; ++c) {
        const Polynomial& pa = a[m - 1].at(r, c);
        const Polynomial& pb = b[m - 1].at(perm[m - 1][r], perm[m][c]);
        if (pa != pb && scale(pa, -1) != pb) return false;
      }
    return true;
  };
  auto recurse = [&](auto&& self, std::size_t m) -> bool {
    if (m == sizes.size()) {
      MatrixChain pb;
      for (std::size_t j = 1; j < sizes.size(); ++j) {
        PolyMatrix q{sizes[j - 1], sizes[j], {}};
        for (std::size_t r = 0; r < sizes[j - 1]; ++r)
          for (std::size_t c = 0; c < sizes[j]; ++c) {
            const Polynomial& p = b[j - 1].at(perm[j - 1][r], perm[j][c]);
            if (!p.empty()) q.entries[{r, c}] = p;
          }
        pb.push_back(std::move(q));
      }
      return signed_diagonal_signs(a, pb).has_value();
    }
    perm[m].resize(sizes[m]);
    std::iota(perm[m].begin(), perm[m].end(), 0);
    do {
      if (m > 0 && !consistent(m)) continue;
      if (self(self, m + 1)) return true;
    } while (std::next_permutation(perm[m].begin(), perm[m].end()));
    return false;
  };
  return recurse(recurse, 0);
}

}  // namespace hhl
