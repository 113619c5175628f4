#include <gtest/gtest.h>

#include <random>

#include "liftgap/csp.hpp"
#include "liftgap/error.hpp"
#include "support.hpp"

using namespace liftgap;
using namespace testing_support;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

std::vector<int> pm(std::string_view s) {
  std::vector<int> x;
  for (char c : s) x.push_back(c == '+' ? 1 : -1);
  return x;
}

}  // namespace

TEST(Predicates, Tables) {
  const auto neq = neq_predicate();
  EXPECT_FALSE(neq.eval(0b00));
  EXPECT_TRUE(neq.eval(0b01));
  EXPECT_TRUE(neq.eval(0b10));
  EXPECT_FALSE(neq.eval(0b11));
  // x1 or x2 or x3 with all literals positive: false only on (+1, +1, +1).
  const auto c0 = clause_predicate(0);
  EXPECT_FALSE(c0.eval(0));
  for (unsigned i = 1; i < 8; ++i) EXPECT_TRUE(c0.eval(i));
  // Negating literal 2 moves the falsifying pattern to x3 = -1.
  const auto c4 = clause_predicate(0b100);
  EXPECT_FALSE(c4.eval(0b100));
  EXPECT_TRUE(c4.eval(0));
}

TEST(Instance, TriangleAndCycle) {
  const auto tri = cycle_graph(3);
  EXPECT_EQ(edges_of(tri), (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}}));
  const auto r = brute_force_opt(tri);
  EXPECT_EQ(r.value, q(2, 3));
  EXPECT_EQ(format_assignment(3, r.witness), "-++");
  EXPECT_EQ(evaluate(tri, pm("+++")), 0);
  EXPECT_EQ(evaluate(tri, pm("+-+")), q(2, 3));
  EXPECT_EQ(brute_force_opt(cycle_graph(5)).value, q(4, 5));
  EXPECT_EQ(brute_force_opt(cycle_graph(6)).value, 1);
  EXPECT_EQ(brute_force_opt(complete_graph(4)).value, q(2, 3));
  EXPECT_EQ(brute_force_opt(complete_graph(5)).value, q(3, 5));
}

TEST(Instance, AssignmentFormatting) {
  EXPECT_EQ(parse_assignment("+-+"), Mask{0b010});
  EXPECT_EQ(format_assignment(4, 0b1001), "-++-");
  EXPECT_THROW(parse_assignment("+x"), MalformedInput);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Mask x = uniform_below(rng, 1u << 12);
    EXPECT_EQ(parse_assignment(format_assignment(12, x)), x);
  }
}

TEST(Instance, Validation) {
  Instance bad{3, {neq_predicate()}, {{0, {0, 0}}}};
  EXPECT_THROW(bad.validate(), MalformedInput);
  Instance out_of_range{3, {neq_predicate()}, {{0, {0, 3}}}};
  EXPECT_THROW(out_of_range.validate(), MalformedInput);
  Instance empty{3, {neq_predicate()}, {}};
  EXPECT_THROW(empty.validate(), MalformedInput);
  EXPECT_THROW(cycle_graph(2), ParameterError);
}

TEST(InstanceProperty, BruteForceMatchesOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_3sat(3 + static_cast<int>(uniform_below(rng, 7)), 1 + static_cast<int>(uniform_below(rng, 25)),
                                  rng());
    EXPECT_EQ(brute_force_opt(inst).value, oracle_opt(inst));
    const auto table = satisfied_table(inst);
    std::vector<int> x(inst.n);
    for (Mask m = 0; m < table.size(); ++m) {
      for (int i = 0; i < inst.n; ++i) x[i] = (m >> i) & 1 ? -1 : 1;
      ASSERT_EQ(Rational(static_cast<std::int64_t>(table[m]), static_cast<std::int64_t>(inst.m())), oracle_value(inst, x));
    }
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = random_graph(7, q(1, 2), seed);
    EXPECT_EQ(brute_force_opt(g).value, oracle_cut(7, edges_of(g)));
  }
}

TEST(InstanceProperty, WitnessIsSmallestMaximizer) {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = random_3sat(6, 12, rng());
    const auto r = brute_force_opt(inst);
    EXPECT_EQ(evaluate(inst, r.witness), r.value);
    for (Mask x = 0; x < r.witness; ++x) EXPECT_LT(evaluate(inst, x), r.value);
  }
}

TEST(InstanceProperty, PolynomialMatchesValue) {
  Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const auto inst = random_3sat(5, 8, rng());
    const auto poly = instance_polynomial(inst);
    EXPECT_LE(poly.degree(), 3);
    EXPECT_EQ(poly.to_boolfn(), value_function(inst));
    for (Mask x = 0; x < 32; ++x) EXPECT_EQ(dot(poly, assignment_point(5, 3, x)), evaluate(inst, x));
  }
  // Max Cut: (1 - x_i x_j) / 2 averaged over edges.
  const auto p = instance_polynomial(cycle_graph(3));
  EXPECT_EQ(p.coeff(0), q(1, 2));
  EXPECT_EQ(p.coeff(0b011), q(-1, 6));
  EXPECT_EQ(p.coeff(0b001), 0);
}

TEST(Instance, PlantAndExtend) {
  const auto tri = cycle_graph(3);
  std::vector<int> s{1, 4, 6};
  const auto planted = plant(tri, s, 8);
  EXPECT_EQ(planted.n, 8);
  EXPECT_EQ(edges_of(planted), (std::vector<std::pair<int, int>>{{1, 4}, {4, 6}, {1, 6}}));
  EXPECT_EQ(brute_force_opt(planted).value, q(2, 3));
  const auto ext = dummy_extend(tri);
  EXPECT_EQ(ext.n, 6);
  EXPECT_EQ(ext.constraints, tri.constraints);
  std::vector<int> dup{1, 1, 2};
  EXPECT_THROW(plant(tri, dup, 8), ParameterError);
}

TEST(Generators, Deterministic) {
  EXPECT_EQ(random_graph(8, q(1, 2), 5), random_graph(8, q(1, 2), 5));
  EXPECT_EQ(random_3sat(6, 10, 5), random_3sat(6, 10, 5));
  EXPECT_NE(random_3sat(6, 10, 5), random_3sat(6, 10, 6));
  EXPECT_EQ(random_graph(5, 1, 0).m(), 10u);
  EXPECT_THROW(random_graph(5, 0, 0), ParameterError);
  const auto sat = random_3sat(4, 50, 3);
  for (const auto& c : sat.constraints) {
    ASSERT_EQ(c.vars.size(), 3u);
    EXPECT_LT(c.vars[0], c.vars[1]);
    EXPECT_LT(c.vars[1], c.vars[2]);
  }
}

// Frozen from the documented draw scheme (mt19937_64, rejection sampling).
TEST(Generators, FrozenSamples) {
  // Oracle: with p = 1/2 each pair keeps the edge iff the raw draw is even
  // (2^64 is a multiple of 2, so no rejection happens).
  std::mt19937_64 raw(1);
  std::vector<std::pair<int, int>> expect;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (raw() % 2 == 0) expect.emplace_back(i, j);
  const auto g = random_graph(6, q(1, 2), 1);
  EXPECT_EQ(edges_of(g), expect);
  EXPECT_EQ(write_edge_list(g), "6 10\n1 2\n1 3\n1 4\n1 5\n1 6\n2 4\n2 6\n3 4\n3 5\n5 6\n");
}

TEST(Generators, AllMaxCutInstances) {
  const auto all = all_maxcut_instances(4);
  EXPECT_EQ(all.size(), 63u);
  EXPECT_EQ(edges_of(all[0]), (std::vector<std::pair<int, int>>{{0, 1}}));
  EXPECT_EQ(all.back().m(), 6u);
}

TEST(Parsing, EdgeListRoundTrip) {
  const auto inst = parse_instance("3 3\n1 2\n2 3\n1 3\n");
  EXPECT_EQ(inst, cycle_graph(3));
  EXPECT_EQ(parse_instance(write_edge_list(inst)), inst);
  // Reversed endpoints are normalized.
  EXPECT_EQ(edges_of(parse_edge_list("3 1\n3 1\n")), (std::vector<std::pair<int, int>>{{0, 2}}));
}

TEST(Parsing, DimacsRoundTrip) {
  const auto inst = parse_instance("c sample\np cnf 4 2\n1 -2 3 0\n-1 2 4 0\n");
  EXPECT_EQ(inst.n, 4);
  EXPECT_EQ(inst.m(), 2u);
  EXPECT_EQ(parse_dimacs_cnf(write_dimacs_cnf(inst)), inst);
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto r = random_3sat(5, 7, rng());
    EXPECT_EQ(parse_instance(write_instance(r)), r);
  }
  // x1 true (= -1) satisfies the first clause.
  EXPECT_EQ(evaluate(inst, pm("-+++")), q(1, 2));
  EXPECT_EQ(evaluate(inst, pm("++++")), 1);
  EXPECT_EQ(evaluate(inst, pm("+--+")), 1);
}

TEST(Parsing, ErrorsCarryPosition) {
  try {
    parse_edge_list("3 2\n1 2\n2 7\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 3);
  }
  EXPECT_THROW(parse_edge_list("3 2\n1 2\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3 1\n1 1\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3 2\n1 2\n2 1\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3 1\n1 2\n9\n"), ParseError);
  EXPECT_THROW(parse_dimacs_cnf("p cnf 3 1\n1 2 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs_cnf("p cnf 3 1\n1 1 2 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs_cnf("p cnf 3 2\n1 2 3 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs_cnf("p cnf 3 1\n1 2 x 0\n"), ParseError);
}
