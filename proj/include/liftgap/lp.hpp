#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "liftgap/rational.hpp"

namespace liftgap {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Sense { Maximize, Minimize };
enum class LPStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LPStatus status);

struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEq;
  Rational rhs;
};

/// Exact LP over rational data. Variables are free unless flagged
/// non-negative; bounds otherwise appear as ordinary constraints. Constraint
/// positions are stable identifiers: certificates are indexed by them.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<bool> nonnegative;  // empty means "all free"
  std::vector<LinearConstraint> constraints;
  std::vector<Rational> objective;  // empty means zero objective
  Sense sense = Sense::Maximize;

  explicit LinearProgram(std::size_t n = 0) : num_vars(n) {}

  std::size_t add_constraint(std::vector<Rational> coeffs, Relation rel, Rational rhs);
  bool is_nonnegative(std::size_t j) const { return !nonnegative.empty() && nonnegative[j]; }
  std::size_t nonzeros() const;
  /// Throws MalformedInput when vector lengths disagree with num_vars.
  void validate() const;
};

/// Solver output.
///
/// Optimal: `point` satisfies every constraint exactly and objective(point) ==
/// `value`. `dual` holds one multiplier y_i per constraint with
///   maximize: y_i >= 0 on <=, y_i <= 0 on >=, sum_i y_i a_ij == c_j on free
///             variables and >= c_j on non-negative ones, b.y == value;
///   minimize: signs flipped on rows, <= c_j on non-negative variables.
/// Infeasible: `dual` is a Farkas certificate: y_i >= 0 on <=, y_i <= 0 on >=,
///   sum_i y_i a_ij == 0 on free and >= 0 on non-negative variables, b.y == -1.
struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  std::optional<Rational> value;
  std::vector<Rational> point;
  std::vector<Rational> dual;
  std::size_t pivots = 0;
};

/// Exact simplex with Bland's rule. Deterministic.
/// Throws MalformedInput on dimension mismatch and SizeCapExceeded above the
/// nonzero cap.
LPSolution solve_lp(const LinearProgram& lp);

/// Solves A.lambda = b with lambda_j >= 0 for flagged j, free otherwise.
struct LinearEquality {
  std::vector<Rational> coeffs;
  Rational rhs;
};
LPSolution farkas_feasibility(const std::vector<LinearEquality>& equalities,
                              const std::vector<bool>& nonneg);

/// Independent exact checks of solver output (used by tests and by callers
/// that want belt-and-braces verification).
bool point_is_feasible(const LinearProgram& lp, const std::vector<Rational>& x);
Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x);
bool verify_optimality_certificate(const LinearProgram& lp, const LPSolution& sol);
bool verify_farkas_certificate(const LinearProgram& lp, const std::vector<Rational>& y);

/// Debug rendering of an LP (non-contractual).
std::string debug_dump(const LinearProgram& lp);

}  // namespace liftgap
