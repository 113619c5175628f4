#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/boolfn.hpp"
#include "liftgap/csp.hpp"
#include "liftgap/lp.hpp"
#include "liftgap/rational.hpp"

namespace liftgap {

/// Nonempty masks over n coordinates with popcount <= d, ordered by size and
/// then by mask value. With include_empty the empty mask comes first.
std::vector<Mask> low_degree_masks(int n, int d, bool include_empty = false);

/// d-local expectation functional given by its moments pE(chi_alpha),
/// |alpha| <= d. Missing moments are zero; moment(0) is 1.
struct PseudoExpectation {
  int n = 0;
  int d = 0;
  std::map<Mask, Rational> moments;

  Rational moment(Mask alpha) const;
  friend bool operator==(const PseudoExpectation&, const PseudoExpectation&) = default;
};

PseudoExpectation point_distribution(int n, int d, Mask x);
PseudoExpectation uniform_distribution(int n, int d);

/// The d-round Sherali-Adams LP in moment form. Variables are X_alpha for
/// 1 <= |alpha| <= min(d, n) in `var_masks` order (X_0 = 1 is substituted).
/// Rows: for every S with 1 <= |S| <= min(d, n) (by size, then mask) and every
/// a in {-1,1}^S (by index), sum_{0 != alpha <= S} chi_alpha(a) X_alpha >= -1.
/// Above n the hierarchy is exact, so d > n is solved at level n.
struct SaLinearProgram {
  LinearProgram lp;
  std::vector<Mask> var_masks;
  Rational constant;  // objective coefficient on the empty set
  int n = 0;
  int d = 0;
};

/// Throws HypothesisViolation when the objective has degree above d.
SaLinearProgram build_sa_lp(int n, int d, const MultilinearPoly& objective);

struct SaResult {
  Rational value;
  PseudoExpectation pe;
};

/// SA_d of the instance with an optimal functional. Throws
/// HypothesisViolation when some predicate has arity above d.
SaResult sa_value(const Instance& inst, int d);

/// sum_{|alpha| <= d} f^(alpha) pE(chi_alpha).
Rational pe_apply(const PseudoExpectation& pe, const MultilinearPoly& f);
Rational pe_apply(const PseudoExpectation& pe, const BoolFn& f);

struct LefReport {
  bool passed = true;
  /// "", "normalization", "support", "i", "ii" or "iii".
  std::string failed;
  std::string detail;
  /// Smallest pE of a width-<=d partial-assignment indicator, scaled by 2^|S|.
  Rational min_indicator;
  Rational max_abs_moment;
  /// sum |pE(chi_alpha)|, an upper bound on the sup norm of pE's Fourier
  /// expansion, against sum_{k<=d} C(n, k).
  Rational l1_norm;
  Rational l1_bound;
};

/// Checks (i) nonnegativity on every width-<=d partial-assignment indicator,
/// (ii) |pE chi_alpha| <= 1 and (iii) the sup-norm bound, and reports the
/// first violation.
LefReport check_lef(const PseudoExpectation& pe);

/// Moments re-indexed through S (0-based, size pe.n) into n coordinates.
PseudoExpectation pe_plant(const PseudoExpectation& pe, std::span<const int> s, int n);

// Edge-variable formulation on the metric polytope.

/// Index of the pair (i, j), i < j, in lexicographic order among all pairs
/// of n vertices.
int pair_index(int n, int i, int j);
std::vector<std::pair<int, int>> all_pairs(int n);

/// Linear facet l(y) = constant + sum coeff_e y_e, required to be >= 0.
struct MetricFacet {
  Rational constant;
  std::vector<std::pair<int, Rational>> terms;
  std::string label;
};

/// Per pair: y_e >= 0 then 1 - y_e >= 0. Per triple i<j<k: the three triangle
/// facets (y_ik + y_jk - y_ij, y_ij + y_jk - y_ik, y_ij + y_ik - y_jk) and
/// 2 - y_ij - y_ik - y_jk. Box facets come first.
std::vector<MetricFacet> metric_facets(int n);

/// Squarefree monomial in edge variables, as a bitmask over pair indices.
using EdgeMonomial = Mask;

/// Level-r edge functional: moments of squarefree edge monomials of degree
/// <= r + 1, moment(0) = 1.
struct EdgeFunctional {
  int n = 0;
  int r = 0;
  std::map<EdgeMonomial, Rational> moments;

  Rational moment(EdgeMonomial m) const;
  friend bool operator==(const EdgeFunctional&, const EdgeFunctional&) = default;
};

/// Polynomial in edge variables, squarefree, keyed by monomial.
using EdgePoly = std::map<EdgeMonomial, Rational>;
Rational edge_apply(const EdgeFunctional& pe, const EdgePoly& f);

/// Variables are the monomials of degree 1..r+1 (by degree, then mask); rows
/// are pE(f l) >= 0 for every partial-assignment indicator f on <= r edge
/// variables and every metric facet l. Rows that vanish identically and
/// repeated rows are dropped. Objective: mean of y_e over the graph's edges.
struct EdgeSaLinearProgram {
  LinearProgram lp;
  std::vector<EdgeMonomial> var_monomials;
  int n = 0;
  int r = 0;
};

EdgeSaLinearProgram build_edge_sa_lp(int n, int r, const std::vector<std::pair<int, int>>& edges);

struct EdgeSaResult {
  Rational value;
  EdgeFunctional pe;
};
/// Level-r value of a Max Cut instance. Size caps apply to n and r.
EdgeSaResult edge_sa_value(const Instance& graph, int r);

struct EdgeFeasibility {
  bool feasible = true;
  std::size_t rows_checked = 0;
  /// Smallest pE(f l) over all rows (the feasibility margin).
  Rational min_value;
  std::string worst_row;
};
EdgeFeasibility check_edge_functional(const EdgeFunctional& pe);

/// Mean of pE(y_e) over the given edges.
Rational edge_objective(const EdgeFunctional& pe, const std::vector<std::pair<int, int>>& edges);
/// Mean of pE((1 - x_i x_j) / 2) over the given edges.
Rational vertex_objective(const PseudoExpectation& pe, const std::vector<std::pair<int, int>>& edges);

/// pE_y f = pE_x(f o phi) with phi(x)_ij = (1 - x_i x_j) / 2, at level
/// r = k/2 - 2. Requires k even and k >= 6.
EdgeFunctional vertex_to_edge(const PseudoExpectation& pe);

/// pE_x f = pE_y(f o psi) with psi(y)_i = 1 - 2 y_{1,i} and y_{1,1} = 0, at
/// locality k = r.
PseudoExpectation edge_to_vertex(const EdgeFunctional& pe);

/// pE_y(y_1i + y_1j - 2 y_1i y_1j - y_ij) for every pair 1 < i < j (vertex 1
/// is index 0): the per-triple residuals of the objective identity.
std::vector<std::pair<std::pair<int, int>, Rational>> triple_residuals(const EdgeFunctional& pe);

}  // namespace liftgap
