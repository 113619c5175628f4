#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "liftgap/boolfn.hpp"
#include "liftgap/rational.hpp"

namespace liftgap {

/// k-ary boolean predicate, k <= 4. Bit `idx` of `table` is the value on the
/// argument pattern idx, where bit j of idx is 1 iff argument j equals -1.
struct Predicate {
  int arity = 2;
  std::uint16_t table = 0;
  std::string name;

  bool eval(unsigned idx) const { return (table >> idx) & 1u; }
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// x_i != x_j.
Predicate neq_predicate();
/// Three-literal disjunction. Bit j of `negations` negates literal j; a
/// positive literal on x is true iff x = -1.
Predicate clause_predicate(unsigned negations);

struct Constraint {
  int predicate = 0;
  std::vector<int> vars;  // 0-based, distinct
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Unweighted Max-CSP instance: value(x) = (#satisfied constraints) / m.
struct Instance {
  int n = 0;
  std::vector<Predicate> family;
  std::vector<Constraint> constraints;

  std::size_t m() const { return constraints.size(); }
  int max_arity() const;
  /// Throws MalformedInput when a constraint is out of range, repeats a
  /// variable or names an unknown predicate, or when there are no constraints.
  void validate() const;
  friend bool operator==(const Instance&, const Instance&) = default;
};

std::size_t satisfied_count(const Instance& inst, Mask x);
Rational evaluate(const Instance& inst, Mask x);
/// Assignment given as +1/-1 entries.
Rational evaluate(const Instance& inst, std::span<const int> x);

/// Number of satisfied constraints for every assignment index (n <= cap).
std::vector<std::uint32_t> satisfied_table(const Instance& inst);
/// The value map as a function on the cube.
BoolFn value_function(const Instance& inst);

struct OptResult {
  Rational value;
  Mask witness = 0;
};
/// Exhaustive maximum; the smallest maximizing assignment index wins.
OptResult brute_force_opt(const Instance& inst);

/// "+-+" style rendering, x_1 first.
std::string format_assignment(int n, Mask x);
Mask parse_assignment(std::string_view text);

/// Multilinear polynomial sum_alpha coeffs[alpha] chi_alpha; zero
/// coefficients are never stored.
struct MultilinearPoly {
  int n = 0;
  std::map<Mask, Rational> coeffs;

  int degree() const;
  Rational coeff(Mask alpha) const;
  void add(Mask alpha, const Rational& c);
  Rational evaluate(Mask x) const;
  BoolFn to_boolfn() const;
  static MultilinearPoly from_fourier(const FourierCoeffs& c);
  friend bool operator==(const MultilinearPoly&, const MultilinearPoly&) = default;
};

/// Coefficient-wise inner product sum_alpha a_alpha b_alpha.
Rational dot(const MultilinearPoly& a, const MultilinearPoly& b);

/// Fourier expansion of the value map; degree <= max arity.
MultilinearPoly instance_polynomial(const Instance& inst);
/// (chi_alpha(x))_{|alpha| <= d}, so that dot(instance_polynomial, point) is
/// the value at x whenever d >= max arity.
MultilinearPoly assignment_point(int n, int d, Mask x);

/// Re-indexes an m-variable instance through S (0-based, distinct, size m)
/// into n variables.
Instance plant(const Instance& inst0, std::span<const int> s, int n);
/// Same instance on 2m variables; the last m are unused.
Instance dummy_extend(const Instance& inst);

Instance maxcut_instance(int n, const std::vector<std::pair<int, int>>& edges);
bool is_maxcut(const Instance& inst);
/// Edges (i < j) of a Max Cut instance, in constraint order.
std::vector<std::pair<int, int>> edges_of(const Instance& inst);

Instance cycle_graph(int n);
Instance complete_graph(int n);
/// G(n, p): each pair i < j, in lexicographic order, kept with probability p
/// (exact rational Bernoulli draw). Throws ParameterError if no edge survives.
Instance random_graph(int n, const Rational& p, std::uint64_t seed);
/// m clauses, each on 3 distinct uniformly drawn variables with a uniform
/// sign pattern.
Instance random_3sat(int n, int m, std::uint64_t seed);

/// Every graph on n vertices with at least one edge, by edge-subset bitmask
/// over the lexicographic pair order.
std::vector<Instance> all_maxcut_instances(int n);

Instance parse_edge_list(std::string_view text);
Instance parse_dimacs_cnf(std::string_view text);
/// DIMACS when the first non-comment token is `p`, edge list otherwise.
Instance parse_instance(std::string_view text);
std::string write_edge_list(const Instance& inst);
std::string write_dimacs_cnf(const Instance& inst);
/// Edge list for Max Cut instances, DIMACS for clause instances.
std::string write_instance(const Instance& inst);

}  // namespace liftgap
