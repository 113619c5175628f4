#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/boolfn.hpp"
#include "liftgap/csp.hpp"
#include "liftgap/lp.hpp"
#include "liftgap/rational.hpp"

namespace liftgap {

/// LP relaxation {y : A y <= b} with linearizations x -> x~ and I -> I~ such
/// that <I~, x~> = I(x).
///
/// Metric: coordinates are the vertex pairs (lexicographic), x~_ij =
/// (1 - x_i x_j) / 2, I~ is the normalized edge indicator (Max Cut only).
/// Fourier: coordinates are the masks in `basis`, x~_alpha = chi_alpha(x),
/// I~_alpha = I^(alpha); instances must have Fourier support inside the basis.
struct PolyhedralRelaxation {
  enum class Kind { Metric, Fourier };

  Kind kind = Kind::Fourier;
  std::string name;
  int n = 0;
  std::vector<Mask> basis;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;

  std::size_t dim() const;
  std::size_t size() const { return b.size(); }
  std::vector<Rational> embed_assignment(Mask x) const;
  /// Throws ParameterError when the instance is not expressible.
  std::vector<Rational> embed_instance(const Instance& inst) const;
  /// i-th slack b_i - <A_i, x~> as a multilinear polynomial.
  MultilinearPoly slack_polynomial(std::size_t i) const;
  /// Shape checks, plus x~ in P for every x when n <= 12. Throws
  /// MalformedInput or HypothesisViolation.
  void validate() const;
  /// <I~, x~> = I(x) for every x (n <= 12).
  bool linearizes(const Instance& inst) const;
};

/// Box and triangle inequalities in metric_facets order: per pair
/// -y_e <= 0 and y_e <= 1, then per triple the three triangle rows and the
/// sum <= 2 row.
PolyhedralRelaxation metric_maxcut(int n);
/// Fourier basis {|alpha| <= d}; rows y_0 <= 1, -y_0 <= -1, then for every S
/// with 1 <= |S| <= d and a in {-1,1}^S the indicator row
/// -sum_{alpha <= S} chi_alpha(a) y_alpha <= 0.
PolyhedralRelaxation universal(int n, int d);

/// max <I~, y> over P. Throws HypothesisViolation if unbounded or empty.
Rational lp_value(const PolyhedralRelaxation& rel, const Instance& inst);
LinearProgram relaxation_lp(const PolyhedralRelaxation& rel, const Instance& inst);

/// q_i(x) = b_i - <A_i, x~> for every inequality, as tables.
std::vector<BoolFn> slack_functions(const PolyhedralRelaxation& rel);

/// Either c - I = lambda0 + sum lambda_i q_i with all lambda >= 0, or a test
/// function H with sum_x H(x) q_i(x) >= 0 for all i, sum_x H(x) >= 0 and
/// sum_x H(x) (c - I(x)) = -1, which rules every such combination out.
struct FarkasDecomposition {
  bool feasible = false;
  Rational lambda0;
  std::vector<Rational> lambda;
  std::optional<BoolFn> certificate;
};

/// The equality system is posed on Fourier coefficients; n <= farkas cap.
FarkasDecomposition farkas_decompose(const Rational& c, const Instance& inst, const PolyhedralRelaxation& rel);
FarkasDecomposition farkas_decompose(const Rational& c, const Instance& inst, const std::vector<BoolFn>& slacks);

/// Exact pointwise check of c - I(x) = lambda0 + sum lambda_i q_i(x), lambda >= 0.
bool verify_decomposition(const Rational& c, const Instance& inst, const Rational& lambda0,
                          const std::vector<Rational>& lambda, const std::vector<BoolFn>& slacks);
bool verify_infeasibility_certificate(const Rational& c, const Instance& inst, const BoolFn& h,
                                      const std::vector<BoolFn>& slacks);

/// M_{I,x} = c - I(x) over instances certified to have opt <= s.
struct SlackMatrix {
  std::vector<Instance> rows;
  std::vector<Mask> cols;
  Rational c;
  Rational s;
  std::vector<std::vector<Rational>> entries;
};

/// Throws HypothesisViolation naming the first row whose optimum exceeds s.
SlackMatrix build_slack_matrix(const std::vector<Instance>& instances, const std::vector<Mask>& assignments,
                               const Rational& c, const Rational& s);

/// Max Cut instances on n vertices with opt <= s, every assignment as a
/// column.
SlackMatrix full_maxcut_slack_matrix(int n, const Rational& c, const Rational& s);

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Distribution of theta = k / T with k ~ Bin(T, p).
/// expected_output: E[c - theta if theta <= c else 0];
/// expected_excess: E[(theta - c)^+]; tail: Pr[theta > c].
Rational protocol_expected_output(const Rational& p, const Rational& c, int t);
Rational protocol_expected_excess(const Rational& p, const Rational& c, int t);
Rational protocol_tail(const Rational& p, const Rational& c, int t);

/// M'_{G,x} = protocol_expected_output(G(x), c, T). Rows must be Max Cut.
RationalMatrix protocol_matrix(const SlackMatrix& m, int t);

/// Messages are ordered T-tuples over the union of the rows' edges (sorted);
/// U_{G,msg} = |E(G)|^-T when every edge of msg lies in G, V_{msg,x} is Bob's
/// output. U V = M'.
struct ProtocolFactorization {
  int t = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> messages;
  RationalMatrix u;
  RationalMatrix v;
};

ProtocolFactorization protocol_factorization(const SlackMatrix& m, int t);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace liftgap
