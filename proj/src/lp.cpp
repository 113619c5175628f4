#include "liftgap/lp.hpp"

#include <sstream>
#include <utility>

#include "liftgap/caps.hpp"
#include "liftgap/error.hpp"

namespace liftgap {

std::string to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "Optimal";
    case LPStatus::Infeasible: return "Infeasible";
    case LPStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

std::size_t LinearProgram::add_constraint(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
  constraints.push_back(LinearConstraint{std::move(coeffs), rel, std::move(rhs)});
  return constraints.size() - 1;
}

std::size_t LinearProgram::nonzeros() const {
  std::size_t count = 0;
  for (const auto& c : constraints)
    for (const auto& a : c.coeffs)
      if (a != 0) ++count;
  return count;
}

void LinearProgram::validate() const {
  if (!nonnegative.empty() && nonnegative.size() != num_vars)
    throw MalformedInput("nonnegative flags have length " + std::to_string(nonnegative.size()) +
                         ", expected " + std::to_string(num_vars));
  if (!objective.empty() && objective.size() != num_vars)
    throw MalformedInput("objective has length " + std::to_string(objective.size()) +
                         ", expected " + std::to_string(num_vars));
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (constraints[i].coeffs.size() != num_vars)
      throw MalformedInput("constraint " + std::to_string(i) + " has " +
                           std::to_string(constraints[i].coeffs.size()) + " coefficients, expected " +
                           std::to_string(num_vars));
  }
}

namespace {

using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

/// max c.z  s.t.  A z = b, z >= 0, with A given column-wise.
struct StandardForm {
  std::size_t rows = 0;
  std::vector<SparseColumn> cols;
  std::vector<Rational> cost;
  std::vector<Rational> rhs;
};

struct StandardResult {
  LPStatus status = LPStatus::Infeasible;
  std::vector<Rational> z;         // Optimal
  std::vector<Rational> pi;        // Optimal: duals; Infeasible: Farkas multipliers (b.pi < 0)
  std::vector<Rational> ray;       // Unbounded: A ray = 0, ray >= 0, c.ray > 0
  std::size_t pivots = 0;
};

/// Revised simplex with an explicit dense basis inverse and Bland's rule.
class RevisedSimplex {
 public:
  explicit RevisedSimplex(const StandardForm& sf) : sf_(sf), m_(sf.rows), n_(sf.cols.size()) {}

  StandardResult run() {
    setup();
    StandardResult out;
    if (num_artificial_ > 0) {
      std::vector<Rational> phase1(n_ + num_artificial_, Rational(0));
      for (std::size_t k = 0; k < num_artificial_; ++k) phase1[n_ + k] = -1;
      const Outcome o = iterate(phase1, /*allow_artificial=*/true);
      (void)o;  // phase 1 is bounded by construction
      Rational w = 0;
      for (std::size_t i = 0; i < m_; ++i)
        if (basis_[i] >= n_) w += xb_[i];
      if (w > 0) {
        out.status = LPStatus::Infeasible;
        out.pi = unflip(duals(phase1));
        out.pivots = pivots_;
        return out;
      }
      drive_out_artificials();
    }
    std::vector<Rational> phase2(n_ + num_artificial_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = sf_.cost[j];
    const Outcome o = iterate(phase2, /*allow_artificial=*/false);
    out.pivots = pivots_;
    if (o.unbounded) {
      out.status = LPStatus::Unbounded;
      out.ray.assign(n_, Rational(0));
      out.ray[o.entering] = 1;
      for (std::size_t i = 0; i < m_; ++i)
        if (basis_[i] < n_) out.ray[basis_[i]] = -o.column[i];
      return out;
    }
    out.status = LPStatus::Optimal;
    out.z.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) out.z[basis_[i]] = xb_[i];
    out.pi = unflip(duals(phase2));
    return out;
  }

 private:
  struct Outcome {
    bool unbounded = false;
    std::size_t entering = 0;
    std::vector<Rational> column;
  };

  void setup() {
    flipped_.assign(m_, false);
    b_ = sf_.rhs;
    for (std::size_t i = 0; i < m_; ++i) {
      if (b_[i] < 0) {
        flipped_[i] = true;
        b_[i] = -b_[i];
      }
    }
    cols_ = sf_.cols;
    for (auto& col : cols_)
      for (auto& [r, v] : col)
        if (flipped_[r]) v = -v;

    basis_.assign(m_, SIZE_MAX);
    std::vector<bool> used(n_, false);
    for (std::size_t j = 0; j < n_; ++j) {
      if (cols_[j].size() != 1) continue;
      const auto& [r, v] = cols_[j][0];
      if (v == 1 && basis_[r] == SIZE_MAX && !used[j]) {
        basis_[r] = j;
        used[j] = true;
      }
    }
    num_artificial_ = 0;
    artificial_row_.clear();
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] == SIZE_MAX) {
        basis_[i] = n_ + num_artificial_;
        artificial_row_.push_back(i);
        ++num_artificial_;
      }
    }
    binv_.assign(m_ * m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = 1;
    xb_ = b_;
  }

  // Column j of the (flipped) constraint matrix, artificial columns included.
  template <class F>
  void for_column(std::size_t j, F&& f) const {
    if (j < n_) {
      for (const auto& [r, v] : cols_[j]) f(r, v);
    } else {
      static const Rational one(1);
      f(artificial_row_[j - n_], one);
    }
  }

  std::vector<Rational> duals(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      const Rational* row = &binv_[i * m_];
      for (std::size_t k = 0; k < m_; ++k)
        if (row[k] != 0) y[k] += cb * row[k];
    }
    return y;
  }

  std::vector<Rational> unflip(std::vector<Rational> y) const {
    for (std::size_t i = 0; i < m_; ++i)
      if (flipped_[i]) y[i] = -y[i];
    return y;
  }

  std::vector<Rational> binv_times_column(std::size_t j) const {
    std::vector<Rational> alpha(m_, Rational(0));
    for_column(j, [&](std::size_t r, const Rational& v) {
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& e = binv_[i * m_ + r];
        if (e != 0) alpha[i] += e * v;
      }
    });
    return alpha;
  }

  Outcome iterate(const std::vector<Rational>& cost, bool allow_artificial) {
    const std::size_t limit = allow_artificial ? n_ + num_artificial_ : n_;
    std::vector<bool> is_basic(n_ + num_artificial_, false);
    for (std::size_t i = 0; i < m_; ++i) is_basic[basis_[i]] = true;
    Rational d;
    for (;;) {
      const std::vector<Rational> y = duals(cost);
      std::size_t entering = SIZE_MAX;
      for (std::size_t j = 0; j < limit; ++j) {
        if (is_basic[j]) continue;
        d = cost[j];
        for_column(j, [&](std::size_t r, const Rational& v) {
          if (y[r] != 0) d -= y[r] * v;
        });
        if (d > 0) {
          entering = j;
          break;
        }
      }
      if (entering == SIZE_MAX) return Outcome{};

      std::vector<Rational> alpha = binv_times_column(entering);
      std::size_t leave = SIZE_MAX;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (alpha[i] <= 0) continue;
        Rational ratio = xb_[i] / alpha[i];
        if (leave == SIZE_MAX || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == SIZE_MAX) return Outcome{true, entering, std::move(alpha)};

      is_basic[basis_[leave]] = false;
      is_basic[entering] = true;
      pivot(leave, entering, alpha);
    }
  }

  void pivot(std::size_t p, std::size_t q, const std::vector<Rational>& alpha) {
    ++pivots_;
    Rational* prow = &binv_[p * m_];
    const Rational inv = Rational(1) / alpha[p];
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < m_; ++k) {
      if (prow[k] != 0) {
        prow[k] *= inv;
        nz.push_back(k);
      }
    }
    xb_[p] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == p || alpha[i] == 0) continue;
      Rational* row = &binv_[i * m_];
      const Rational& f = alpha[i];
      for (std::size_t k : nz) row[k] -= f * prow[k];
      xb_[i] -= f * xb_[p];
    }
    basis_[p] = q;
  }

  void drive_out_artificials() {
    for (std::size_t p = 0; p < m_; ++p) {
      if (basis_[p] < n_) continue;
      std::vector<bool> is_basic(n_, false);
      for (std::size_t i = 0; i < m_; ++i)
        if (basis_[i] < n_) is_basic[basis_[i]] = true;
      const Rational* prow = &binv_[p * m_];
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic[j]) continue;
        Rational entry = 0;
        for (const auto& [r, v] : cols_[j])
          if (prow[r] != 0) entry += prow[r] * v;
        if (entry != 0) {
          pivot(p, j, binv_times_column(j));
          break;
        }
      }
      // No candidate: the row is redundant and its artificial stays at zero.
    }
  }

  const StandardForm& sf_;
  std::size_t m_;
  std::size_t n_;
  std::vector<SparseColumn> cols_;
  std::vector<Rational> b_;
  std::vector<bool> flipped_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> artificial_row_;
  std::size_t num_artificial_ = 0;
  std::vector<Rational> binv_;
  std::vector<Rational> xb_;
  std::size_t pivots_ = 0;
};

void normalize_farkas(std::vector<Rational>& y, const LinearProgram& lp) {
  Rational by = 0;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) by += y[i] * lp.constraints[i].rhs;
  if (by >= 0) throw InvariantViolation("Farkas multipliers do not certify infeasibility");
  const Rational scale = Rational(-1) / by;
  for (auto& v : y) v *= scale;
}

LPSolution solve_primal(const LinearProgram& lp, const std::vector<Rational>& c) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.constraints.size();
  StandardForm sf;
  sf.rows = m;
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  for (std::size_t j = 0; j < n; ++j) {
    SparseColumn col;
    for (std::size_t i = 0; i < m; ++i)
      if (lp.constraints[i].coeffs[j] != 0) col.emplace_back(i, lp.constraints[i].coeffs[j]);
    pos_col[j] = sf.cols.size();
    sf.cols.push_back(col);
    sf.cost.push_back(c[j]);
    if (!lp.is_nonnegative(j)) {
      for (auto& e : col) e.second = -e.second;
      neg_col[j] = sf.cols.size();
      sf.cols.push_back(std::move(col));
      sf.cost.push_back(-c[j]);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Relation rel = lp.constraints[i].relation;
    if (rel == Relation::LessEq) {
      sf.cols.push_back({{i, Rational(1)}});
      sf.cost.emplace_back(0);
    } else if (rel == Relation::GreaterEq) {
      sf.cols.push_back({{i, Rational(-1)}});
      sf.cost.emplace_back(0);
    }
    sf.rhs.push_back(lp.constraints[i].rhs);
  }

  StandardResult r = RevisedSimplex(sf).run();
  LPSolution out;
  out.status = r.status;
  out.pivots = r.pivots;
  if (r.status == LPStatus::Optimal) {
    out.point.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      out.point[j] = r.z[pos_col[j]];
      if (neg_col[j] != SIZE_MAX) out.point[j] -= r.z[neg_col[j]];
    }
    out.dual = std::move(r.pi);
  } else if (r.status == LPStatus::Infeasible) {
    out.dual = std::move(r.pi);
    normalize_farkas(out.dual, lp);
  }
  return out;
}

// Dual of  max c.x  s.t. rows, as a standard form with one row per primal
// variable. Column map records how each dual column maps back to y_i.
struct DualForm {
  StandardForm sf;
  std::vector<std::pair<std::size_t, int>> col_to_row;  // (constraint, sign); SIZE_MAX for surplus
};

DualForm build_dual(const LinearProgram& lp, const std::vector<Rational>& c) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.constraints.size();
  DualForm df;
  df.sf.rows = n;
  df.sf.rhs = c;
  auto add = [&](std::size_t i, int sign) {
    SparseColumn col;
    const auto& a = lp.constraints[i].coeffs;
    for (std::size_t j = 0; j < n; ++j)
      if (a[j] != 0) col.emplace_back(j, sign > 0 ? a[j] : Rational(-a[j]));
    df.sf.cols.push_back(std::move(col));
    df.sf.cost.push_back(sign > 0 ? Rational(-lp.constraints[i].rhs) : lp.constraints[i].rhs);
    df.col_to_row.emplace_back(i, sign);
  };
  for (std::size_t i = 0; i < m; ++i) {
    switch (lp.constraints[i].relation) {
      case Relation::LessEq: add(i, +1); break;
      case Relation::GreaterEq: add(i, -1); break;
      case Relation::Equal:
        add(i, +1);
        add(i, -1);
        break;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!lp.is_nonnegative(j)) continue;
    df.sf.cols.push_back({{j, Rational(-1)}});
    df.sf.cost.emplace_back(0);
    df.col_to_row.emplace_back(SIZE_MAX, 0);
  }
  return df;
}

std::vector<Rational> dual_columns_to_rows(const DualForm& df, const std::vector<Rational>& z, std::size_t m) {
  std::vector<Rational> y(m, Rational(0));
  for (std::size_t k = 0; k < z.size(); ++k) {
    const auto& [i, sign] = df.col_to_row[k];
    if (i == SIZE_MAX || z[k] == 0) continue;
    if (sign > 0) y[i] += z[k];
    else y[i] -= z[k];
  }
  return y;
}

LPSolution solve_via_dual(const LinearProgram& lp, const std::vector<Rational>& c) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.constraints.size();
  const DualForm df = build_dual(lp, c);
  StandardResult r = RevisedSimplex(df.sf).run();
  LPSolution out;
  out.pivots = r.pivots;

  auto infeasible_from_ray = [&](const std::vector<Rational>& ray) {
    out.status = LPStatus::Infeasible;
    out.dual = dual_columns_to_rows(df, ray, m);
    normalize_farkas(out.dual, lp);
  };

  if (r.status == LPStatus::Optimal) {
    out.status = LPStatus::Optimal;
    out.point.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.point[j] = -r.pi[j];
    out.dual = dual_columns_to_rows(df, r.z, m);
    return out;
  }
  if (r.status == LPStatus::Unbounded) {
    infeasible_from_ray(r.ray);
    return out;
  }
  // Dual infeasible: the primal is unbounded or infeasible. Decide by
  // re-solving the dual with a zero objective (always dual-feasible).
  const DualForm zero = build_dual(lp, std::vector<Rational>(n, Rational(0)));
  StandardResult r0 = RevisedSimplex(zero.sf).run();
  out.pivots += r0.pivots;
  if (r0.status == LPStatus::Unbounded) {
    out.status = LPStatus::Infeasible;
    out.dual = dual_columns_to_rows(zero, r0.ray, m);
    normalize_farkas(out.dual, lp);
  } else {
    out.status = LPStatus::Unbounded;
  }
  return out;
}

}  // namespace

LPSolution solve_lp(const LinearProgram& lp) {
  lp.validate();
  const SizeCaps caps = SizeCaps::current();
  const std::size_t nnz = lp.nonzeros();
  if (nnz > caps.lp_nonzeros)
    throw SizeCapExceeded("LP has " + std::to_string(nnz) + " nonzeros, cap is " +
                          std::to_string(caps.lp_nonzeros) + " (raise via LIFTGAP_SIZE_CAPS=lp_nonzeros=N)");

  std::vector<Rational> c(lp.num_vars, Rational(0));
  if (!lp.objective.empty()) c = lp.objective;
  const bool minimize = lp.sense == Sense::Minimize;
  if (minimize)
    for (auto& v : c) v = -v;

  LPSolution sol = lp.constraints.size() > lp.num_vars ? solve_via_dual(lp, c) : solve_primal(lp, c);
  if (sol.status == LPStatus::Optimal) {
    if (minimize)
      for (auto& v : sol.dual) v = -v;
    sol.value = objective_value(lp, sol.point);
  }
  return sol;
}

LPSolution farkas_feasibility(const std::vector<LinearEquality>& equalities, const std::vector<bool>& nonneg) {
  LinearProgram lp(nonneg.size());
  lp.nonnegative = nonneg;
  for (const auto& e : equalities) lp.add_constraint(e.coeffs, Relation::Equal, e.rhs);
  return solve_lp(lp);
}

Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x) {
  Rational v = 0;
  if (lp.objective.empty()) return v;
  for (std::size_t j = 0; j < lp.num_vars; ++j)
    if (lp.objective[j] != 0) v += lp.objective[j] * x[j];
  return v;
}

bool point_is_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_vars) return false;
  for (std::size_t j = 0; j < lp.num_vars; ++j)
    if (lp.is_nonnegative(j) && x[j] < 0) return false;
  for (const auto& con : lp.constraints) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < lp.num_vars; ++j)
      if (con.coeffs[j] != 0) lhs += con.coeffs[j] * x[j];
    switch (con.relation) {
      case Relation::LessEq: if (lhs > con.rhs) return false; break;
      case Relation::GreaterEq: if (lhs < con.rhs) return false; break;
      case Relation::Equal: if (lhs != con.rhs) return false; break;
    }
  }
  return true;
}

namespace {

// Row-sign pattern shared by optimality (max) and Farkas certificates.
bool row_signs_ok(const LinearProgram& lp, const std::vector<Rational>& y, int orientation) {
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const Rational v = orientation * y[i];
    if (lp.constraints[i].relation == Relation::LessEq && v < 0) return false;
    if (lp.constraints[i].relation == Relation::GreaterEq && v > 0) return false;
  }
  return true;
}

std::vector<Rational> transpose_times(const LinearProgram& lp, const std::vector<Rational>& y) {
  std::vector<Rational> r(lp.num_vars, Rational(0));
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < lp.num_vars; ++j)
      if (lp.constraints[i].coeffs[j] != 0) r[j] += y[i] * lp.constraints[i].coeffs[j];
  }
  return r;
}

}  // namespace

bool verify_optimality_certificate(const LinearProgram& lp, const LPSolution& sol) {
  if (sol.status != LPStatus::Optimal || !sol.value) return false;
  if (sol.dual.size() != lp.constraints.size()) return false;
  if (!point_is_feasible(lp, sol.point)) return false;
  if (objective_value(lp, sol.point) != *sol.value) return false;
  const int orientation = lp.sense == Sense::Maximize ? 1 : -1;
  if (!row_signs_ok(lp, sol.dual, orientation)) return false;
  const std::vector<Rational> aty = transpose_times(lp, sol.dual);
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    const Rational cj = lp.objective.empty() ? Rational(0) : lp.objective[j];
    const Rational diff = orientation * (aty[j] - cj);
    if (lp.is_nonnegative(j) ? diff < 0 : diff != 0) return false;
  }
  Rational by = 0;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) by += sol.dual[i] * lp.constraints[i].rhs;
  return by == *sol.value;
}

bool verify_farkas_certificate(const LinearProgram& lp, const std::vector<Rational>& y) {
  if (y.size() != lp.constraints.size()) return false;
  if (!row_signs_ok(lp, y, 1)) return false;
  const std::vector<Rational> aty = transpose_times(lp, y);
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.is_nonnegative(j) ? aty[j] < 0 : aty[j] != 0) return false;
  }
  Rational by = 0;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) by += y[i] * lp.constraints[i].rhs;
  return by < 0;
}

std::string debug_dump(const LinearProgram& lp) {
  std::ostringstream os;
  os << (lp.sense == Sense::Maximize ? "maximize" : "minimize");
  for (std::size_t j = 0; j < lp.num_vars; ++j)
    os << ' ' << (lp.objective.empty() ? "0" : to_string(lp.objective[j]));
  os << '\n';
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    os << '[' << i << ']';
    for (const auto& a : c.coeffs) os << ' ' << to_string(a);
    os << (c.relation == Relation::LessEq ? " <= " : c.relation == Relation::Equal ? " = " : " >= ")
       << to_string(c.rhs) << '\n';
  }
  return os.str();
}

}  // namespace liftgap
