#include "liftgap/sherali_adams.hpp"

#include <algorithm>

#include "liftgap/error.hpp"

namespace liftgap {

std::vector<Mask> low_degree_masks(int n, int d, bool include_empty) {
  if (n < 0 || n > 30) throw SizeCapExceeded("low_degree_masks is limited to 30 coordinates");
  std::vector<Mask> out;
  if (include_empty) out.push_back(0);
  const int top = std::min(d, n);
  for (int k = 1; k <= top; ++k)
    for (Mask a = 0; a < (Mask{1} << n); ++a)
      if (popcount(a) == k) out.push_back(a);
  return out;
}

Rational PseudoExpectation::moment(Mask alpha) const {
  if (alpha == 0) return 1;
  const auto it = moments.find(alpha);
  return it == moments.end() ? Rational(0) : it->second;
}

PseudoExpectation point_distribution(int n, int d, Mask x) {
  PseudoExpectation pe{n, d, {}};
  for (Mask a : low_degree_masks(n, d, true)) pe.moments[a] = character_sign(a, x);
  return pe;
}

PseudoExpectation uniform_distribution(int n, int d) {
  PseudoExpectation pe{n, d, {}};
  pe.moments[0] = 1;
  return pe;
}

SaLinearProgram build_sa_lp(int n, int d, const MultilinearPoly& objective) {
  if (n < 1) throw ParameterError("Sherali-Adams needs at least one variable");
  if (d < 1) throw ParameterError("Sherali-Adams level must be at least 1");
  if (objective.n != n) throw ParameterError("objective variable count differs from n");
  if (objective.degree() > d)
    throw HypothesisViolation("objective degree " + std::to_string(objective.degree()) + " exceeds level " +
                              std::to_string(d));
  SaLinearProgram out;
  out.n = n;
  out.d = d;
  out.var_masks = low_degree_masks(n, d);
  std::map<Mask, std::size_t> column;
  for (std::size_t j = 0; j < out.var_masks.size(); ++j) column[out.var_masks[j]] = j;

  LinearProgram& lp = out.lp;
  lp.num_vars = out.var_masks.size();
  lp.sense = Sense::Maximize;
  lp.objective.assign(lp.num_vars, Rational(0));
  for (const auto& [alpha, c] : objective.coeffs) {
    if (alpha == 0)
      out.constant = c;
    else
      lp.objective[column.at(alpha)] = c;
  }
  for (Mask s : out.var_masks) {
    std::vector<Mask> subsets;
    for (Mask a = s; a != 0; a = (a - 1) & s) subsets.push_back(a);
    const int k = popcount(s);
    const auto coords = coords_of(s);
    for (unsigned idx = 0; idx < (1u << k); ++idx) {
      Mask point = 0;
      for (int j = 0; j < k; ++j)
        if ((idx >> j) & 1u) point |= Mask{1} << coords[j];
      std::vector<Rational> row(lp.num_vars, Rational(0));
      for (Mask a : subsets) row[column.at(a)] = character_sign(a, point);
      lp.add_constraint(std::move(row), Relation::GreaterEq, Rational(-1));
    }
  }
  return out;
}

SaResult sa_value(const Instance& inst, int d) {
  inst.validate();
  if (inst.max_arity() > d)
    throw HypothesisViolation("predicate arity " + std::to_string(inst.max_arity()) + " exceeds level " +
                              std::to_string(d));
  const auto sa = build_sa_lp(inst.n, d, instance_polynomial(inst));
  const LPSolution sol = solve_lp(sa.lp);
  if (sol.status != LPStatus::Optimal)
    throw InvariantViolation("Sherali-Adams LP reported " + to_string(sol.status));
  SaResult r;
  r.value = sa.constant + *sol.value;
  r.pe.n = inst.n;
  r.pe.d = d;
  r.pe.moments[0] = 1;
  for (std::size_t j = 0; j < sa.var_masks.size(); ++j)
    if (sol.point[j] != 0) r.pe.moments[sa.var_masks[j]] = sol.point[j];
  return r;
}

Rational pe_apply(const PseudoExpectation& pe, const MultilinearPoly& f) {
  Rational s = 0;
  for (const auto& [alpha, c] : f.coeffs)
    if (popcount(alpha) <= pe.d) s += c * pe.moment(alpha);
  return s;
}

Rational pe_apply(const PseudoExpectation& pe, const BoolFn& f) {
  if (f.n() != pe.n) throw ParameterError("function and functional have different variable counts");
  return pe_apply(pe, MultilinearPoly::from_fourier(fourier_transform(f)));
}

LefReport check_lef(const PseudoExpectation& pe) {
  LefReport rep;
  auto fail = [&](const std::string& which, const std::string& detail) {
    if (rep.passed) {
      rep.passed = false;
      rep.failed = which;
      rep.detail = detail;
    }
  };
  const auto it0 = pe.moments.find(0);
  if (it0 != pe.moments.end() && it0->second != 1) fail("normalization", "moment of the empty set is not 1");
  const Mask full = pe.n >= 64 ? ~Mask{0} : (Mask{1} << pe.n) - 1;
  for (const auto& [alpha, v] : pe.moments) {
    if ((alpha & ~full) != 0 || popcount(alpha) > pe.d)
      fail("support", "moment stored outside the degree-" + std::to_string(pe.d) + " range: mask " +
                          std::to_string(alpha));
  }

  // (i) every partial-assignment indicator of width <= d.
  bool first = true;
  for (Mask s : low_degree_masks(pe.n, pe.d)) {
    const int k = popcount(s);
    const auto coords = coords_of(s);
    std::vector<Mask> subsets;
    for (Mask a = s;; a = (a - 1) & s) {
      subsets.push_back(a);
      if (a == 0) break;
    }
    for (unsigned idx = 0; idx < (1u << k); ++idx) {
      Mask point = 0;
      for (int j = 0; j < k; ++j)
        if ((idx >> j) & 1u) point |= Mask{1} << coords[j];
      Rational v = 0;
      for (Mask a : subsets) v += character_sign(a, point) == 1 ? pe.moment(a) : Rational(-pe.moment(a));
      if (first || v < rep.min_indicator) rep.min_indicator = v;
      first = false;
      if (v < 0)
        fail("i", "indicator of x_S = " + format_assignment(pe.n, point) + " on S = " + std::to_string(s) +
                      " has negative expectation " + to_string(v));
    }
  }
  if (first) rep.min_indicator = 1;

  // (ii) and (iii).
  for (const auto& [alpha, v] : pe.moments) {
    const Rational a = abs(v);
    if (a > rep.max_abs_moment) rep.max_abs_moment = a;
    rep.l1_norm += a;
    if (a > 1) fail("ii", "|pE chi_" + std::to_string(alpha) + "| = " + to_string(a) + " exceeds 1");
  }
  if (pe.moments.find(0) == pe.moments.end()) rep.l1_norm += 1;
  for (int k = 0; k <= std::min(pe.d, pe.n); ++k) rep.l1_bound += Rational(binomial(pe.n, k));
  if (rep.l1_norm > rep.l1_bound)
    fail("iii", "sum of |moments| " + to_string(rep.l1_norm) + " exceeds " + to_string(rep.l1_bound));
  return rep;
}

PseudoExpectation pe_plant(const PseudoExpectation& pe, std::span<const int> s, int n) {
  if (static_cast<int>(s.size()) != pe.n)
    throw ParameterError("planting set has " + std::to_string(s.size()) + " coordinates, functional has " +
                         std::to_string(pe.n));
  Mask seen = 0;
  for (int v : s) {
    if (v < 0 || v >= n || v >= 64) throw ParameterError("planting coordinate out of range");
    if ((seen >> v) & 1u) throw ParameterError("planting coordinates must be distinct");
    seen |= Mask{1} << v;
  }
  PseudoExpectation out{n, pe.d, {}};
  for (const auto& [alpha, v] : pe.moments) {
    Mask image = 0;
    for (int c : coords_of(alpha)) image |= Mask{1} << s[c];
    out.moments[image] = v;
  }
  return out;
}

}  // namespace liftgap
