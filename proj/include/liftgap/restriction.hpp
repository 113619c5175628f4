#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/boolfn.hpp"
#include "liftgap/csp.hpp"
#include "liftgap/error.hpp"
#include "liftgap/rational.hpp"
#include "liftgap/sherali_adams.hpp"
#include "liftgap/slack.hpp"

namespace liftgap {

/// Each coordinate is kept with probability 2m/n (exact rational draw from
/// the seeded generator, coordinates in increasing order); the draw repeats
/// until at least m survive, then the largest extras are dropped. Requires
/// 3 <= m <= n/4. Result is sorted.
std::vector<int> sample_restriction(int n, int m, std::uint64_t seed);

/// Smallest integer t with 2^t >= n^d, i.e. ceil(d log2 n).
int entropy_budget(int n, int d);

/// gamma^2 = 16 m t d / sqrt(n), held as gamma^4 = (16 m t d)^2 / n.
CoefficientBound restriction_gamma(int n, int m, int d, int t);

struct DensityRecord {
  std::size_t id = 0;
  std::vector<int> junta_full;  // J'(q), over all n coordinates
  std::vector<int> junta;       // J(q) = J'(q) n S
  Rational max_bad_coeff;       // max |q^(alpha)|, alpha <= S, alpha !<= J, 1 <= |alpha| <= d
  bool passed_junta_bound = false;
  bool passed_coeff_bound = false;
  bool chang_success = false;
  bool sup_norm_ok = false;  // ||q||_inf <= 2^t
};

struct RestrictionReport {
  std::vector<int> s;
  int n = 0;
  int m = 0;
  int d = 0;
  int t = 0;
  CoefficientBound gamma;
  std::uint64_t seed = 0;
  std::size_t trials_used = 0;
  bool family_size_ok = false;  // |Q| <= n^{d/2}
  std::vector<DensityRecord> records;

  bool passed() const;
  std::size_t passing() const;
};

/// J'(q) per density, reusable across candidate sets S.
std::vector<JuntaCertificate> junta_certificates(const std::vector<Density>& family, int n, int m, int d, int t);

RestrictionReport check_restriction(const std::vector<Density>& family, std::span<const int> s, int d, int t, int m,
                                    int n);
RestrictionReport check_restriction(const std::vector<Density>& family, const std::vector<JuntaCertificate>& certs,
                                    std::span<const int> s, int d, int t, int m, int n);

/// Raised when no sampled S passes; carries the report passing the most
/// densities.
class RestrictionExhausted : public Error {
 public:
  RestrictionExhausted(const std::string& m, RestrictionReport best)
      : Error("restriction-exhausted", m), best_(std::move(best)) {}
  const RestrictionReport& best() const { return best_; }

 private:
  RestrictionReport best_;
};

/// Trial i samples with trial_seed(seed, i).
RestrictionReport find_good_restriction(const std::vector<Density>& family, int n, int m, int d, int t,
                                        std::size_t max_trials, std::uint64_t seed);

/// q^S = junta + error with junta = sum_{alpha <= J} q^(alpha) chi_alpha and
/// error = sum_{alpha <= S, alpha !<= J} q^(alpha) chi_alpha.
struct RestrictedDecomposition {
  MultilinearPoly junta;
  MultilinearPoly error;
  Density junta_density;
};
RestrictedDecomposition decompose_restricted_density(const Density& q, std::span<const int> s,
                                                     std::span<const int> j);

struct SlackErrorTerm {
  std::size_t slack = 0;
  Rational lambda;       // density-scaled multiplier
  Rational pe_junta;     // pE_S(q~^S), >= 0
  Rational pe_error;     // pE_S(e)
  Rational cap;          // N * max |e^(alpha)|
};

struct MainInequalityReport {
  std::string relaxation;
  int n = 0;
  int m = 0;
  int d = 0;
  int t = 0;
  std::uint64_t seed = 0;
  std::vector<int> s;
  std::size_t slack_count = 0;    // R
  std::size_t zero_slacks = 0;    // dropped before normalization
  std::size_t q_t_size = 0;
  bool size_hypothesis = false;   // R <= n^{d/2}
  Rational lp_value;              // L(I_S)
  Rational sa_value;              // SA_d(I_0)
  Rational lhs;                   // L(I_S) - SA_d(I_0)
  Rational lambda0;
  Rational lambda_sum;            // sum over all i >= 0 of lambda_i
  Rational chain_bound;           // sum_{Q_t} lambda_i pE(e_i) - B sum_{not Q_t} lambda_i
  Rational rhs;                   // rational upper bound of the closed-form bound
  double rhs_approx = 0.0;
  Rational error_coeff_count;     // N = sum_{1<=k<=d} C(m,k)
  Rational sup_norm_bound;        // B = sum_{0<=k<=d} C(m,k)
  double gamma = 0.0;
  double epsilon_n = 0.0;
  RestrictionReport restriction;
  std::vector<SlackErrorTerm> error_terms;
  bool holds = false;
};

/// m^d sqrt(m d log2 n) / n^{1/4}.
double epsilon_n(int n, int m, int d);

/// Runs the planting pipeline and asserts every step exactly; throws
/// InvariantViolation if a proved identity or inequality fails.
MainInequalityReport main_inequality_experiment(const PolyhedralRelaxation& rel, const Instance& inst0, int d,
                                                std::uint64_t seed, std::size_t max_trials = 50);

/// f(x) = g(x_J, sum_i x_i).
struct SymmetricStructure {
  bool found = false;
  std::vector<int> j;
  /// (index over J's coordinates, level sum_i x_i) -> value.
  std::map<std::pair<Mask, int>, Rational> table;
};

/// Smallest J (then lexicographically first) with |J| <= dMax such that f
/// depends only on x_J and the level. Refuses dMax >= n/4.
SymmetricStructure detect_symmetric_structure(const BoolFn& f, int d_max);
bool has_symmetric_structure(const BoolFn& f, Mask j);

/// h(x) = q(x, -x).
BoolFn antidiagonal_restriction(const BoolFn& q);

/// Coordinates permuted: (f o pi)(x) = f(y) with y_{pi(i)} = x_i.
BoolFn permute(const BoolFn& f, std::span<const int> pi);

struct ClosureReport {
  bool closed = true;
  bool full_group = false;  // all of Sym(n) checked (n <= 6)
  std::size_t permutations_checked = 0;
  std::string detail;
};
ClosureReport check_permutation_closure(const std::vector<BoolFn>& slacks, int n);

struct SymmetricCheckReport {
  int m = 0;
  int n = 0;
  int d = 0;
  Rational c;
  Rational sa_value;
  ClosureReport closure;
  bool feasible = false;
  std::size_t slack_count = 0;
  std::size_t junta_slacks = 0;       // h_i with |supp| <= d
  bool all_juntas = false;
  bool pe_nonnegative = true;         // pE[h_i] >= 0 for every d-junta h_i
  Rational pe_gap;                    // c - SA_d(I_0)
  std::optional<Rational> pe_combination;  // lambda0 + sum lambda_i pE[h_i] when feasible
  bool contradiction = false;         // c < SA_d and decomposition infeasible
  bool consistent = false;
};

/// Sym-closed relaxation on n = 2m variables.
SymmetricCheckReport symmetric_contradiction_check(const Instance& inst0, const PolyhedralRelaxation& rel,
                                                   const Rational& c, int d);

}  // namespace liftgap
