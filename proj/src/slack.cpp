#include "liftgap/slack.hpp"

#include <algorithm>

#include "liftgap/caps.hpp"
#include "liftgap/error.hpp"
#include "liftgap/sherali_adams.hpp"

namespace liftgap {

std::size_t PolyhedralRelaxation::dim() const {
  return kind == Kind::Metric ? static_cast<std::size_t>(n * (n - 1) / 2) : basis.size();
}

std::vector<Rational> PolyhedralRelaxation::embed_assignment(Mask x) const {
  std::vector<Rational> out;
  out.reserve(dim());
  if (kind == Kind::Metric) {
    for (auto [i, j] : all_pairs(n)) out.emplace_back(static_cast<int>(((x >> i) ^ (x >> j)) & 1u));
  } else {
    for (Mask alpha : basis) out.emplace_back(character_sign(alpha, x));
  }
  return out;
}

std::vector<Rational> PolyhedralRelaxation::embed_instance(const Instance& inst) const {
  if (inst.n != n)
    throw ParameterError("instance has " + std::to_string(inst.n) + " variables, relaxation " + name + " has " +
                         std::to_string(n));
  std::vector<Rational> out(dim(), Rational(0));
  if (kind == Kind::Metric) {
    if (!is_maxcut(inst)) throw ParameterError("the metric relaxation only linearizes Max Cut instances");
    const Rational w(BigInt(1), BigInt(inst.m()));
    for (auto [i, j] : edges_of(inst)) out[pair_index(n, i, j)] += w;
    return out;
  }
  const auto poly = instance_polynomial(inst);
  for (const auto& [alpha, c] : poly.coeffs) {
    const auto it = std::find(basis.begin(), basis.end(), alpha);
    if (it == basis.end())
      throw ParameterError("instance has Fourier weight on mask " + std::to_string(alpha) +
                           ", outside the basis of " + name);
    out[it - basis.begin()] = c;
  }
  return out;
}

MultilinearPoly PolyhedralRelaxation::slack_polynomial(std::size_t i) const {
  MultilinearPoly q;
  q.n = n;
  q.add(0, b.at(i));
  const auto& row = a.at(i);
  if (kind == Kind::Metric) {
    const auto pairs = all_pairs(n);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      if (row[e] == 0) continue;
      const Rational half = row[e] / 2;
      q.add(0, -half);
      q.add((Mask{1} << pairs[e].first) | (Mask{1} << pairs[e].second), half);
    }
  } else {
    for (std::size_t j = 0; j < basis.size(); ++j) q.add(basis[j], -row[j]);
  }
  return q;
}

void PolyhedralRelaxation::validate() const {
  if (n < 1 || n > 30) throw MalformedInput("relaxation variable count must be in 1..30");
  if (kind == Kind::Metric && n < 3) throw MalformedInput("metric relaxation needs n >= 3");
  if (a.size() != b.size()) throw MalformedInput("relaxation has mismatched A and b");
  const Mask full = (Mask{1} << n) - 1;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if ((basis[j] & ~full) != 0) throw MalformedInput("basis mask out of range");
    for (std::size_t k = 0; k < j; ++k)
      if (basis[k] == basis[j]) throw MalformedInput("basis repeats a mask");
  }
  for (const auto& row : a)
    if (row.size() != dim()) throw MalformedInput("inequality row has the wrong dimension");
  if (n > 12) return;
  for (std::size_t i = 0; i < size(); ++i) {
    const BoolFn q = slack_polynomial(i).to_boolfn();
    for (std::size_t x = 0; x < q.size(); ++x)
      if (q[x] < 0)
        throw HypothesisViolation("inequality " + std::to_string(i) + " of " + name + " cuts off the point " +
                                  format_assignment(n, x));
  }
}

bool PolyhedralRelaxation::linearizes(const Instance& inst) const {
  if (n > 12) throw SizeCapExceeded("exhaustive linearization check is limited to 12 variables");
  const auto tilde = embed_instance(inst);
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    const auto point = embed_assignment(x);
    Rational s = 0;
    for (std::size_t j = 0; j < tilde.size(); ++j) s += tilde[j] * point[j];
    if (s != evaluate(inst, x)) return false;
  }
  return true;
}

PolyhedralRelaxation metric_maxcut(int n) {
  if (n < 3) throw ParameterError("metric relaxation needs n >= 3");
  PolyhedralRelaxation rel;
  rel.kind = PolyhedralRelaxation::Kind::Metric;
  rel.name = "metric(" + std::to_string(n) + ")";
  rel.n = n;
  const std::size_t dim = rel.dim();
  for (const auto& f : metric_facets(n)) {
    // l(y) >= 0 becomes -sum coeff y <= constant.
    std::vector<Rational> row(dim, Rational(0));
    for (const auto& [e, c] : f.terms) row[e] = -c;
    rel.a.push_back(std::move(row));
    rel.b.push_back(f.constant);
  }
  return rel;
}

PolyhedralRelaxation universal(int n, int d) {
  if (n < 1) throw ParameterError("universal relaxation needs n >= 1");
  if (d < 1) throw ParameterError("universal relaxation needs d >= 1");
  PolyhedralRelaxation rel;
  rel.kind = PolyhedralRelaxation::Kind::Fourier;
  rel.name = "universal(" + std::to_string(n) + "," + std::to_string(d) + ")";
  rel.n = n;
  rel.basis = low_degree_masks(n, d, true);
  const std::size_t dim = rel.basis.size();
  std::vector<Rational> top(dim, Rational(0));
  top[0] = 1;
  rel.a.push_back(top);
  rel.b.push_back(1);
  top[0] = -1;
  rel.a.push_back(top);
  rel.b.push_back(-1);
  std::map<Mask, std::size_t> column;
  for (std::size_t j = 0; j < dim; ++j) column[rel.basis[j]] = j;
  for (Mask s : low_degree_masks(n, d)) {
    const int k = popcount(s);
    const auto coords = coords_of(s);
    for (unsigned idx = 0; idx < (1u << k); ++idx) {
      Mask point = 0;
      for (int j = 0; j < k; ++j)
        if ((idx >> j) & 1u) point |= Mask{1} << coords[j];
      std::vector<Rational> row(dim, Rational(0));
      for (Mask alpha = s;; alpha = (alpha - 1) & s) {
        row[column.at(alpha)] = -character_sign(alpha, point);
        if (alpha == 0) break;
      }
      rel.a.push_back(std::move(row));
      rel.b.push_back(0);
    }
  }
  return rel;
}

LinearProgram relaxation_lp(const PolyhedralRelaxation& rel, const Instance& inst) {
  LinearProgram lp(rel.dim());
  lp.sense = Sense::Maximize;
  lp.objective = rel.embed_instance(inst);
  for (std::size_t i = 0; i < rel.size(); ++i) lp.add_constraint(rel.a[i], Relation::LessEq, rel.b[i]);
  return lp;
}

Rational lp_value(const PolyhedralRelaxation& rel, const Instance& inst) {
  const LPSolution sol = solve_lp(relaxation_lp(rel, inst));
  if (sol.status == LPStatus::Unbounded)
    throw HypothesisViolation("relaxation " + rel.name + " does not bound the objective");
  if (sol.status == LPStatus::Infeasible) throw HypothesisViolation("relaxation " + rel.name + " is empty");
  return *sol.value;
}

std::vector<BoolFn> slack_functions(const PolyhedralRelaxation& rel) {
  const int cap = SizeCaps::current().slack_max_n;
  if (rel.n > cap)
    throw SizeCapExceeded("slack tables on " + std::to_string(rel.n) + " variables exceed cap " + std::to_string(cap));
  std::vector<BoolFn> out;
  out.reserve(rel.size());
  for (std::size_t i = 0; i < rel.size(); ++i) out.push_back(rel.slack_polynomial(i).to_boolfn());
  return out;
}

FarkasDecomposition farkas_decompose(const Rational& c, const Instance& inst, const PolyhedralRelaxation& rel) {
  if (inst.n != rel.n) throw ParameterError("instance and relaxation have different variable counts");
  const int cap = SizeCaps::current().farkas_max_n;
  if (rel.n > cap)
    throw SizeCapExceeded("Farkas decomposition on " + std::to_string(rel.n) + " variables exceeds cap " +
                          std::to_string(cap));
  return farkas_decompose(c, inst, slack_functions(rel));
}

FarkasDecomposition farkas_decompose(const Rational& c, const Instance& inst, const std::vector<BoolFn>& slacks) {
  const int n = inst.n;
  const int cap = SizeCaps::current().farkas_max_n;
  if (n > cap)
    throw SizeCapExceeded("Farkas decomposition on " + std::to_string(n) + " variables exceeds cap " +
                          std::to_string(cap));
  for (const auto& q : slacks)
    if (q.n() != n) throw ParameterError("slack function has the wrong variable count");

  const BoolFn target = BoolFn::constant(n, c) - value_function(inst);
  const FourierCoeffs ghat = fourier_transform(target);
  std::vector<FourierCoeffs> qhat;
  qhat.reserve(slacks.size());
  for (const auto& q : slacks) qhat.push_back(fourier_transform(q));

  const std::size_t size = std::size_t{1} << n;
  const std::size_t cols = slacks.size() + 1;
  std::vector<Mask> row_masks;
  std::vector<LinearEquality> rows;
  for (Mask alpha = 0; alpha < size; ++alpha) {
    LinearEquality eq;
    eq.coeffs.assign(cols, Rational(0));
    bool any = false;
    if (alpha == 0) {
      eq.coeffs[0] = 1;
      any = true;
    }
    for (std::size_t i = 0; i < qhat.size(); ++i) {
      if (qhat[i][alpha] != 0) {
        eq.coeffs[i + 1] = qhat[i][alpha];
        any = true;
      }
    }
    eq.rhs = ghat[alpha];
    if (!any && eq.rhs == 0) continue;
    rows.push_back(std::move(eq));
    row_masks.push_back(alpha);
  }
  const LPSolution sol = farkas_feasibility(rows, std::vector<bool>(cols, true));

  FarkasDecomposition out;
  if (sol.status == LPStatus::Optimal) {
    out.feasible = true;
    out.lambda0 = sol.point[0];
    out.lambda.assign(sol.point.begin() + 1, sol.point.end());
    if (!verify_decomposition(c, inst, out.lambda0, out.lambda, slacks))
      throw InvariantViolation("Farkas decomposition failed pointwise verification");
    return out;
  }
  // H = 2^-n sum_alpha y_alpha chi_alpha turns coefficient multipliers into
  // pointwise weights.
  FourierCoeffs yhat{n, std::vector<Rational>(size, Rational(0))};
  const Rational scale(BigInt(1), BigInt(1) << n);
  for (std::size_t r = 0; r < rows.size(); ++r) yhat.coeffs[row_masks[r]] = sol.dual[r] * scale;
  out.certificate = inverse_fourier_transform(yhat);
  if (!verify_infeasibility_certificate(c, inst, *out.certificate, slacks))
    throw InvariantViolation("Farkas infeasibility certificate failed verification");
  return out;
}

bool verify_decomposition(const Rational& c, const Instance& inst, const Rational& lambda0,
                          const std::vector<Rational>& lambda, const std::vector<BoolFn>& slacks) {
  if (lambda.size() != slacks.size() || lambda0 < 0) return false;
  for (const auto& l : lambda)
    if (l < 0) return false;
  const BoolFn value = value_function(inst);
  for (std::size_t x = 0; x < value.size(); ++x) {
    Rational rhs = lambda0;
    for (std::size_t i = 0; i < slacks.size(); ++i)
      if (lambda[i] != 0) rhs += lambda[i] * slacks[i][x];
    if (rhs != c - value[x]) return false;
  }
  return true;
}

bool verify_infeasibility_certificate(const Rational& c, const Instance& inst, const BoolFn& h,
                                      const std::vector<BoolFn>& slacks) {
  if (h.n() != inst.n) return false;
  const BoolFn value = value_function(inst);
  Rational total = 0;
  Rational against = 0;
  for (std::size_t x = 0; x < h.size(); ++x) {
    total += h[x];
    against += h[x] * (c - value[x]);
  }
  if (total < 0 || against != -1) return false;
  for (const auto& q : slacks) {
    Rational s = 0;
    for (std::size_t x = 0; x < h.size(); ++x) s += h[x] * q[x];
    if (s < 0) return false;
  }
  return true;
}

SlackMatrix build_slack_matrix(const std::vector<Instance>& instances, const std::vector<Mask>& assignments,
                               const Rational& c, const Rational& s) {
  if (c <= s) throw ParameterError("slack matrix needs c > s");
  if (instances.empty()) throw ParameterError("slack matrix needs at least one row");
  SlackMatrix m;
  m.c = c;
  m.s = s;
  m.cols = assignments;
  for (std::size_t r = 0; r < instances.size(); ++r) {
    const auto opt = brute_force_opt(instances[r]);
    if (opt.value > s)
      throw HypothesisViolation("row " + std::to_string(r) + " has opt " + to_string(opt.value) + " > s = " +
                                to_string(s));
    const Mask limit = Mask{1} << instances[r].n;
    std::vector<Rational> row;
    row.reserve(assignments.size());
    for (Mask x : assignments) {
      if (x >= limit) throw ParameterError("assignment index out of range for row " + std::to_string(r));
      row.push_back(c - evaluate(instances[r], x));
    }
    m.rows.push_back(instances[r]);
    m.entries.push_back(std::move(row));
  }
  return m;
}

SlackMatrix full_maxcut_slack_matrix(int n, const Rational& c, const Rational& s) {
  std::vector<Instance> rows;
  for (auto& g : all_maxcut_instances(n))
    if (brute_force_opt(g).value <= s) rows.push_back(std::move(g));
  std::vector<Mask> cols;
  for (Mask x = 0; x < (Mask{1} << n); ++x) cols.push_back(x);
  return build_slack_matrix(rows, cols, c, s);
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  RationalMatrix out(a.size(), std::vector<Rational>(cols, Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw ParameterError("matrix dimensions do not match");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (b[k][j] != 0) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

}  // namespace liftgap
