/**
 * Linear systems over Q with =, <= and < rows, decided exactly by
 * Fourier-Motzkin elimination.
 *
 * Equality rows are used as Gaussian pivots when they involve the variable
 * being eliminated; otherwise lower and upper bounds are paired, and a
 * combination is strict if either parent is. Every derived row carries the
 * multipliers expressing it in terms of the input rows, so an infeasible
 * system comes with a re-checkable certificate.
 */
#pragma once

#include "hhl/exact/arith.hpp"

#include <map>
#include <optional>
#include <tuple>

namespace hhl::exact {

enum class Relation { Equal, LessEqual, Less };

/// normal . x  (rel)  bound
struct Constraint {
  IntVector normal;
  Rational bound;
  Relation rel = Relation::LessEqual;
};

class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  const std::vector<Constraint>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  LinearSystem& add(IntVector normal, Rational bound, Relation rel) {
    if (normal.size() != dim_) throw std::invalid_argument("LinearSystem: normal has wrong dimension");
    rows_.push_back({std::move(normal), std::move(bound), rel});
    return *this;
  }
  LinearSystem& add(const Constraint& c) { return add(c.normal, c.bound, c.rel); }
  LinearSystem& equal(IntVector normal, Rational bound) { return add(std::move(normal), std::move(bound), Relation::Equal); }
  LinearSystem& at_most(IntVector normal, Rational bound) {
    return add(std::move(normal), std::move(bound), Relation::LessEqual);
  }
  LinearSystem& below(IntVector normal, Rational bound) { return add(std::move(normal), std::move(bound), Relation::Less); }
  /// normal . x >= bound
  LinearSystem& at_least(IntVector normal, Rational bound) {
    for (auto& x : normal) x = -x;
    return add(std::move(normal), -bound, Relation::LessEqual);
  }
  /// normal . x > bound
  LinearSystem& above(IntVector normal, Rational bound) {
    for (auto& x : normal) x = -x;
    return add(std::move(normal), -bound, Relation::Less);
  }

  void append(const LinearSystem& other) {
    for (const auto& r : other.rows_) add(r);
  }

  Constraint& operator[](std::size_t i) { return rows_[i]; }
  const Constraint& operator[](std::size_t i) const { return rows_[i]; }

  /// Topological closure: strict rows become non-strict.
  LinearSystem closure() const {
    LinearSystem c = *this;
    for (auto& r : c.rows_)
      if (r.rel == Relation::Less) r.rel = Relation::LessEqual;
    return c;
  }

  bool satisfied_by(const RatVector& x) const {
    for (const auto& r : rows_) {
      const Rational v = dot(r.normal, x);
      switch (r.rel) {
        case Relation::Equal:
          if (v != r.bound) return false;
          break;
        case Relation::LessEqual:
          if (v > r.bound) return false;
          break;
        case Relation::Less:
          if (v >= r.bound) return false;
          break;
      }
    }
    return true;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Constraint> rows_;
};

/// Multipliers (one per input row) combining the input into 0 (rel) b with
/// the relation violated. Inequality multipliers are nonnegative.
struct InfeasibilityCertificate {
  RatVector multipliers;
};

struct FeasibilityResult {
  std::optional<RatVector> witness;
  std::optional<InfeasibilityCertificate> certificate;
  explicit operator bool() const { return witness.has_value(); }
};

/// Re-checks a certificate against the original system, independently of
/// the elimination that produced it.
inline bool check_certificate(const LinearSystem& sys, const InfeasibilityCertificate& cert) {
  if (cert.multipliers.size() != sys.size()) return false;
  RatVector combo(sys.dim());
  Rational rhs = 0;
  bool any_ineq = false, any_strict = false;
  for (std::size_t r = 0; r < sys.size(); ++r) {
    const Rational& lam = cert.multipliers[r];
    if (lam == 0) continue;
    const auto& row = sys[r];
    if (row.rel != Relation::Equal) {
      if (lam < 0) return false;
      any_ineq = true;
      if (row.rel == Relation::Less) any_strict = true;
    }
    for (std::size_t j = 0; j < sys.dim(); ++j) combo[j] += lam * Rational(row.normal[j]);
    rhs += lam * row.bound;
  }
  for (const auto& c : combo)
    if (c != 0) return false;
  if (!any_ineq) return rhs != 0;
  if (any_strict) return rhs <= 0;
  return rhs < 0;
}

namespace fm_detail {

struct Row {
  RatVector coef;
  Rational rhs;
  Relation rel;
  RatVector mult;  // empty when certificates are not tracked
};

inline bool is_constant(const Row& r) {
  return std::all_of(r.coef.begin(), r.coef.end(), [](const Rational& c) { return c == 0; });
}

/// 0 (rel) rhs
inline bool constant_holds(const Row& r) {
  switch (r.rel) {
    case Relation::Equal: return r.rhs == 0;
    case Relation::LessEqual: return r.rhs >= 0;
    case Relation::Less: return r.rhs > 0;
  }
  return false;
}

inline Row combine(const Row& a, const Rational& fa, const Row& b, const Rational& fb) {
  Row r;
  r.coef.resize(a.coef.size());
  for (std::size_t j = 0; j < a.coef.size(); ++j) r.coef[j] = fa * a.coef[j] + fb * b.coef[j];
  r.rhs = fa * a.rhs + fb * b.rhs;
  if (a.rel == Relation::Less || b.rel == Relation::Less)
    r.rel = Relation::Less;
  else if (a.rel == Relation::Equal && b.rel == Relation::Equal)
    r.rel = Relation::Equal;
  else
    r.rel = Relation::LessEqual;
  if (!a.mult.empty()) {
    r.mult.resize(a.mult.size());
    for (std::size_t j = 0; j < a.mult.size(); ++j) r.mult[j] = fa * a.mult[j] + fb * b.mult[j];
  }
  return r;
}

/// Positive rescaling to a primitive integer normal; equalities also fix the
/// sign of the leading coefficient.
inline void normalize(Row& r) {
  Integer den = 1;
  for (const auto& c : r.coef) den = lcm(den, denominator(c));
  Integer g = 0;
  for (const auto& c : r.coef) g = gcd(g, numerator(c * Rational(den)));
  if (g == 0) return;
  Rational scale = Rational(den) / Rational(g);
  if (r.rel == Relation::Equal) {
    for (const auto& c : r.coef)
      if (c != 0) {
        if (c < 0) scale = -scale;
        break;
      }
  }
  for (auto& c : r.coef) c *= scale;
  r.rhs *= scale;
  for (auto& m : r.mult) m *= scale;
}

/// Removes rows that are redundant by being parallel to a tighter one and
/// constant rows that hold. Returns the index of a violated constant row.
inline std::optional<std::size_t> simplify(std::vector<Row>& rows) {
  std::map<std::pair<RatVector, bool>, std::size_t> best;
  std::vector<Row> out;
  for (auto& r : rows) {
    if (is_constant(r)) {
      if (constant_holds(r)) continue;
      out.push_back(std::move(r));
      rows = std::move(out);
      return rows.size() - 1;
    }
    normalize(r);
    const bool eq = r.rel == Relation::Equal;
    auto key = std::make_pair(r.coef, eq);
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(std::move(key), out.size());
      out.push_back(std::move(r));
      continue;
    }
    Row& kept = out[it->second];
    if (eq) {
      if (kept.rhs != r.rhs) {
        // Two parallel equalities with different levels.
        Row diff = combine(kept, 1, r, -1);
        out.push_back(std::move(diff));
        rows = std::move(out);
        return rows.size() - 1;
      }
      continue;
    }
    const bool tighter = r.rhs < kept.rhs || (r.rhs == kept.rhs && r.rel == Relation::Less && kept.rel != Relation::Less);
    if (tighter) kept = std::move(r);
  }
  rows = std::move(out);
  return std::nullopt;
}

inline std::size_t pick_variable(const std::vector<Row>& rows, const std::vector<bool>& done) {
  std::size_t best = done.size();
  std::size_t best_cost = 0;
  for (std::size_t v = 0; v < done.size(); ++v) {
    if (done[v]) continue;
    std::size_t pos = 0, neg = 0;
    bool has_eq = false;
    for (const auto& r : rows) {
      if (r.coef[v] == 0) continue;
      if (r.rel == Relation::Equal) has_eq = true;
      (r.coef[v] > 0 ? pos : neg)++;
    }
    const std::size_t cost = has_eq ? 0 : pos * neg + 1;
    if (best == done.size() || cost < best_cost) {
      best = v;
      best_cost = cost;
    }
  }
  return best;
}

/// Eliminates variable v from rows.
inline std::vector<Row> eliminate(const std::vector<Row>& rows, std::size_t v) {
  std::vector<Row> out;
  const Row* pivot = nullptr;
  for (const auto& r : rows)
    if (r.rel == Relation::Equal && r.coef[v] != 0) {
      pivot = &r;
      break;
    }
  if (pivot) {
    for (const auto& r : rows) {
      if (&r == pivot) continue;
      if (r.coef[v] == 0) {
        out.push_back(r);
        continue;
      }
      out.push_back(combine(r, 1, *pivot, -r.coef[v] / pivot->coef[v]));
    }
    return out;
  }
  std::vector<const Row*> lower, upper;
  for (const auto& r : rows) {
    if (r.coef[v] == 0)
      out.push_back(r);
    else if (r.coef[v] > 0)
      upper.push_back(&r);
    else
      lower.push_back(&r);
  }
  for (const Row* u : upper)
    for (const Row* l : lower) out.push_back(combine(*u, -l->coef[v], *l, u->coef[v]));
  return out;
}

inline std::vector<Row> to_rows(const LinearSystem& sys, bool track) {
  std::vector<Row> rows;
  rows.reserve(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    Row r;
    r.coef.resize(sys.dim());
    for (std::size_t j = 0; j < sys.dim(); ++j) r.coef[j] = Rational(sys[i].normal[j]);
    r.rhs = sys[i].bound;
    r.rel = sys[i].rel;
    if (track) {
      r.mult.assign(sys.size(), Rational(0));
      r.mult[i] = 1;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Bounds on a single variable from rows in which it is the only unknown
/// (other coordinates already substituted via `values`).
struct Interval {
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;
  std::optional<Rational> fixed;
  bool empty = false;
};

inline Interval bounds_for(const std::vector<Row>& rows, std::size_t v, const RatVector& values,
                           const std::vector<bool>& assigned) {
  Interval iv;
  for (const auto& r : rows) {
    Rational rest = r.rhs;
    for (std::size_t j = 0; j < r.coef.size(); ++j)
      if (j != v && r.coef[j] != 0) {
        if (!assigned[j]) throw std::logic_error("fourier_motzkin: back substitution order");
        rest -= r.coef[j] * values[j];
      }
    const Rational& a = r.coef[v];
    if (a == 0) continue;
    const Rational b = rest / a;
    if (r.rel == Relation::Equal) {
      if (iv.fixed && *iv.fixed != b) iv.empty = true;
      iv.fixed = b;
      continue;
    }
    const bool strict = r.rel == Relation::Less;
    if (a > 0) {
      if (!iv.hi || b < *iv.hi || (b == *iv.hi && strict)) {
        iv.hi = b;
        iv.hi_strict = strict;
      }
    } else {
      if (!iv.lo || b > *iv.lo || (b == *iv.lo && strict)) {
        iv.lo = b;
        iv.lo_strict = strict;
      }
    }
  }
  return iv;
}

inline Rational choose(const Interval& iv) {
  if (iv.fixed) return *iv.fixed;
  if (iv.lo && iv.hi) return (*iv.lo + *iv.hi) / 2;
  if (iv.lo) return iv.lo_strict ? *iv.lo + 1 : *iv.lo;
  if (iv.hi) return iv.hi_strict ? *iv.hi - 1 : *iv.hi;
  return 0;
}

}  // namespace fm_detail

/// Decides feasibility of a system with strict and non-strict rows. Returns a
/// witness satisfying every row, or a certificate of infeasibility.
inline FeasibilityResult strict_feasible(const LinearSystem& sys) {
  using namespace fm_detail;
  const std::size_t k = sys.dim();
  std::vector<Row> rows = to_rows(sys, true);
  std::vector<std::vector<Row>> stages;
  std::vector<std::size_t> order;
  std::vector<bool> done(k, false);

  auto fail = [&](const Row& r) {
    FeasibilityResult res;
    res.certificate = InfeasibilityCertificate{r.mult};
    return res;
  };

  if (auto bad = simplify(rows)) return fail(rows[*bad]);
  for (std::size_t step = 0; step < k; ++step) {
    const std::size_t v = pick_variable(rows, done);
    done[v] = true;
    order.push_back(v);
    stages.push_back(rows);
    rows = eliminate(rows, v);
    if (auto bad = simplify(rows)) return fail(rows[*bad]);
  }
  for (const auto& r : rows)
    if (!constant_holds(r)) return fail(r);

  RatVector x(k);
  std::vector<bool> assigned(k, false);
  for (std::size_t s = order.size(); s-- > 0;) {
    const std::size_t v = order[s];
    const Interval iv = bounds_for(stages[s], v, x, assigned);
    x[v] = choose(iv);
    assigned[v] = true;
  }
  if (!sys.satisfied_by(x)) throw std::logic_error("strict_feasible: witness check failed");
  FeasibilityResult res;
  res.witness = std::move(x);
  return res;
}

inline bool is_feasible(const LinearSystem& sys) { return strict_feasible(sys).witness.has_value(); }

/// Range of w . x over the solution set.
struct FunctionalRange {
  bool feasible = false;
  std::optional<Rational> min, max;  // nullopt = unbounded in that direction
  bool min_attained = false, max_attained = false;
};

inline FunctionalRange functional_range(const LinearSystem& sys, const IntVector& w) {
  using namespace fm_detail;
  const std::size_t k = sys.dim();
  // Append y = w . x as variable k, then eliminate x.
  std::vector<Row> rows;
  for (const auto& c : sys.rows()) {
    Row r;
    r.coef.resize(k + 1);
    for (std::size_t j = 0; j < k; ++j) r.coef[j] = Rational(c.normal[j]);
    r.rhs = c.bound;
    r.rel = c.rel;
    rows.push_back(std::move(r));
  }
  Row def;
  def.coef.resize(k + 1);
  for (std::size_t j = 0; j < k; ++j) def.coef[j] = Rational(w[j]);
  def.coef[k] = -1;
  def.rhs = 0;
  def.rel = Relation::Equal;
  rows.push_back(std::move(def));

  FunctionalRange out;
  std::vector<bool> done(k + 1, false);
  done[k] = true;
  if (simplify(rows)) return out;
  for (std::size_t step = 0; step < k; ++step) {
    const std::size_t v = pick_variable(rows, done);
    done[v] = true;
    rows = eliminate(rows, v);
    if (simplify(rows)) return out;
  }
  RatVector vals(k + 1);
  std::vector<bool> assigned(k + 1, true);
  assigned[k] = false;
  const Interval iv = bounds_for(rows, k, vals, assigned);
  if (iv.empty) return out;
  out.feasible = true;
  if (iv.fixed) {
    if ((iv.lo && (*iv.lo > *iv.fixed || (*iv.lo == *iv.fixed && iv.lo_strict))) ||
        (iv.hi && (*iv.hi < *iv.fixed || (*iv.hi == *iv.fixed && iv.hi_strict)))) {
      out.feasible = false;
      return out;
    }
    out.min = out.max = iv.fixed;
    out.min_attained = out.max_attained = true;
    return out;
  }
  if (iv.lo && iv.hi && (*iv.lo > *iv.hi || (*iv.lo == *iv.hi && (iv.lo_strict || iv.hi_strict)))) {
    out.feasible = false;
    return out;
  }
  out.min = iv.lo;
  out.max = iv.hi;
  out.min_attained = iv.lo && !iv.lo_strict;
  out.max_attained = iv.hi && !iv.hi_strict;
  return out;
}

/// Substitutes x_var = value, dropping that coordinate.
inline LinearSystem substitute(const LinearSystem& sys, std::size_t var, const Integer& value) {
  LinearSystem out(sys.dim() - 1);
  for (const auto& c : sys.rows()) {
    IntVector n;
    n.reserve(sys.dim() - 1);
    for (std::size_t j = 0; j < sys.dim(); ++j)
      if (j != var) n.push_back(c.normal[j]);
    out.add(std::move(n), c.bound - Rational(c.normal[var] * value), c.rel);
  }
  return out;
}

/// All integer points of a bounded system, in lexicographic order.
inline std::vector<IntVector> integer_points(const LinearSystem& sys) {
  std::vector<IntVector> out;
  if (sys.dim() == 0) {
    if (sys.satisfied_by({})) out.emplace_back();
    return out;
  }
  IntVector e0(sys.dim());
  e0[0] = 1;
  const FunctionalRange r = functional_range(sys, e0);
  if (!r.feasible) return out;
  if (!r.min || !r.max) throw std::invalid_argument("integer_points: unbounded system");
  Integer lo = ceil(*r.min), hi = floor(*r.max);
  if (!r.min_attained && Rational(lo) == *r.min) ++lo;
  if (!r.max_attained && Rational(hi) == *r.max) --hi;
  for (Integer v = lo; v <= hi; ++v) {
    for (auto& tail : integer_points(substitute(sys, 0, v))) {
      IntVector p;
      p.reserve(sys.dim());
      p.push_back(v);
      p.insert(p.end(), tail.begin(), tail.end());
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace hhl::exact
