#pragma once

// Seeded generators and brute-force oracles shared by the test suites. The
// oracles deliberately avoid the library code paths they check.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "liftgap/boolfn.hpp"
#include "liftgap/csp.hpp"
#include "liftgap/lp.hpp"
#include "liftgap/random.hpp"
#include "liftgap/rational.hpp"

namespace testing_support {

using liftgap::BoolFn;
using liftgap::Instance;
using liftgap::Mask;
using liftgap::Rational;
using liftgap::Rng;
using liftgap::uniform_below;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline Rational random_rational(Rng& rng, std::int64_t num_bound, std::int64_t den_bound) {
  return Rational(uniform_int(rng, -num_bound, num_bound), uniform_int(rng, 1, den_bound));
}

inline BoolFn random_function(Rng& rng, int n, std::int64_t num_bound = 9, std::int64_t den_bound = 7) {
  std::vector<Rational> v(std::size_t{1} << n);
  for (auto& x : v) x = random_rational(rng, num_bound, den_bound);
  return BoolFn(n, std::move(v));
}

/// Positive values in [1, spread], normalized to mean one.
inline liftgap::Density random_density(Rng& rng, int n, std::int64_t spread = 3) {
  std::vector<Rational> v(std::size_t{1} << n);
  for (auto& x : v) x = Rational(uniform_int(rng, 1, spread));
  return liftgap::Density::normalize(BoolFn(n, std::move(v))).first;
}

/// Direct O(4^n) transform: E[f chi_alpha].
inline std::vector<Rational> naive_fourier(const BoolFn& f) {
  const std::size_t size = f.size();
  std::vector<Rational> out(size);
  for (std::size_t a = 0; a < size; ++a) {
    Rational s = 0;
    for (std::size_t x = 0; x < size; ++x) {
      if (__builtin_popcountll(a & x) % 2)
        s -= f[x];
      else
        s += f[x];
    }
    out[a] = s / Rational(static_cast<std::int64_t>(size));
  }
  return out;
}

/// Value of an assignment given as a +/-1 vector, evaluated from the
/// predicate tables one argument at a time.
inline Rational oracle_value(const Instance& inst, const std::vector<int>& x) {
  std::int64_t sat = 0;
  for (const auto& c : inst.constraints) {
    unsigned idx = 0;
    for (std::size_t j = 0; j < c.vars.size(); ++j)
      if (x[c.vars[j]] == -1) idx |= 1u << j;
    if ((inst.family[c.predicate].table >> idx) & 1u) ++sat;
  }
  return Rational(sat, static_cast<std::int64_t>(inst.constraints.size()));
}

/// Maximum over all +/-1 vectors, generated by counting in base {+1,-1}.
inline Rational oracle_opt(const Instance& inst) {
  std::vector<int> x(inst.n, 1);
  Rational best = oracle_value(inst, x);
  while (true) {
    int i = 0;
    while (i < inst.n && x[i] == -1) x[i++] = 1;
    if (i == inst.n) break;
    x[i] = -1;
    best = std::max(best, oracle_value(inst, x));
  }
  return best;
}

/// Max Cut value computed directly on the edge list.
inline Rational oracle_cut(int n, const std::vector<std::pair<int, int>>& edges) {
  Rational best = 0;
  for (Mask side = 0; side < (Mask{1} << n); ++side) {
    std::int64_t cut = 0;
    for (auto [u, v] : edges)
      if (((side >> u) ^ (side >> v)) & 1) ++cut;
    best = std::max(best, Rational(cut, static_cast<std::int64_t>(edges.size())));
  }
  return best;
}

/// Solves a square system by Gauss-Jordan elimination; nullopt if singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

/// Vertex enumeration for max c.x s.t. A x <= b, x >= 0 (bounded feasible
/// region assumed). Returns nullopt when the region is empty.
inline std::optional<Rational> oracle_lp_max(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                             const std::vector<Rational>& c) {
  const std::size_t nv = c.size();
  std::vector<std::vector<Rational>> rows = a;
  std::vector<Rational> rhs = b;
  for (std::size_t j = 0; j < nv; ++j) {
    std::vector<Rational> r(nv, 0);
    r[j] = -1;
    rows.push_back(r);
    rhs.push_back(0);
  }
  const std::size_t m = rows.size();
  std::optional<Rational> best;
  std::vector<std::size_t> pick(nv);
  // Every nv-subset of the constraints.
  std::vector<bool> sel(m, false);
  std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(nv), true);
  do {
    std::vector<std::vector<Rational>> sa;
    std::vector<Rational> sb;
    for (std::size_t i = 0; i < m; ++i)
      if (sel[i]) {
        sa.push_back(rows[i]);
        sb.push_back(rhs[i]);
      }
    auto x = solve_square(sa, sb);
    if (!x) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < nv; ++j) lhs += rows[i][j] * (*x)[j];
      ok = lhs <= rhs[i];
    }
    if (!ok) continue;
    Rational v = 0;
    for (std::size_t j = 0; j < nv; ++j) v += c[j] * (*x)[j];
    if (!best || v > *best) best = v;
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return best;
}

/// Pr[Bin(t, p) = k] by the product formula.
inline Rational binomial_pmf(int t, int k, const Rational& p) {
  Rational coef = 1;
  for (int i = 0; i < k; ++i) coef = coef * Rational(t - i) / Rational(i + 1);
  Rational r = coef;
  for (int i = 0; i < k; ++i) r *= p;
  for (int i = 0; i < t - k; ++i) r *= (1 - p);
  return r;
}

}  // namespace testing_support
