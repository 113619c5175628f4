#include <gtest/gtest.h>

#include "liftgap/error.hpp"
#include "liftgap/sherali_adams.hpp"
#include "liftgap/slack.hpp"
#include "support.hpp"

using namespace liftgap;
using namespace testing_support;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

Rational oracle_output(const Rational& p, const Rational& c, int t) {
  Rational s = 0;
  for (int k = 0; k <= t; ++k) {
    const Rational theta(k, t);
    if (theta <= c) s += binomial_pmf(t, k, p) * (c - theta);
  }
  return s;
}

Rational oracle_tail(const Rational& p, const Rational& c, int t) {
  Rational s = 0;
  for (int k = 0; k <= t; ++k)
    if (Rational(k, t) > c) s += binomial_pmf(t, k, p);
  return s;
}

}  // namespace

TEST(Relaxations, Shapes) {
  const auto m3 = metric_maxcut(3);
  EXPECT_EQ(m3.size(), 10u);
  EXPECT_EQ(m3.dim(), 3u);
  EXPECT_NO_THROW(m3.validate());
  EXPECT_EQ(metric_maxcut(12).size(), 1012u);
  const auto u = universal(3, 2);
  EXPECT_EQ(u.dim(), 7u);
  EXPECT_EQ(u.size(), 2u + 3u * 2u + 3u * 4u);
  EXPECT_NO_THROW(u.validate());
  EXPECT_TRUE(m3.linearizes(cycle_graph(3)));
  EXPECT_TRUE(universal(4, 3).linearizes(random_3sat(4, 5, 1)));
  EXPECT_THROW(metric_maxcut(4).embed_instance(random_3sat(4, 2, 1)), ParameterError);
}

TEST(Relaxations, BrokenRelaxationRejected) {
  auto rel = metric_maxcut(3);
  rel.b[1] = q(1, 2);  // y_12 <= 1/2 cuts off integral points
  EXPECT_THROW(rel.validate(), HypothesisViolation);
  auto shape = metric_maxcut(3);
  shape.a[0].pop_back();
  EXPECT_THROW(shape.validate(), MalformedInput);
}

TEST(Relaxations, LpValues) {
  EXPECT_EQ(lp_value(metric_maxcut(3), cycle_graph(3)), q(2, 3));
  EXPECT_EQ(lp_value(metric_maxcut(5), cycle_graph(5)), q(4, 5));
  EXPECT_EQ(lp_value(metric_maxcut(4), complete_graph(4)), q(2, 3));
  EXPECT_EQ(lp_value(universal(3, 2), cycle_graph(3)), 1);
}

TEST(RelaxationProperty, SlacksAreNonnegativeAndPolynomial) {
  for (const auto& rel : {metric_maxcut(4), universal(4, 2), metric_maxcut(5)}) {
    const auto slacks = slack_functions(rel);
    ASSERT_EQ(slacks.size(), rel.size());
    for (std::size_t i = 0; i < slacks.size(); ++i) {
      EXPECT_TRUE(slacks[i].is_nonnegative()) << rel.name << " row " << i;
      EXPECT_EQ(rel.slack_polynomial(i).to_boolfn(), slacks[i]);
    }
  }
}

// The universal relaxation at level d is the d-round Sherali-Adams LP.
TEST(RelaxationProperty, UniversalMatchesSa) {
  Rng rng(51);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 3 + static_cast<int>(uniform_below(rng, 3));
    const auto g = random_graph(n, q(1, 2), rng() | 1);
    EXPECT_EQ(lp_value(universal(n, 2), g), sa_value(g, 2).value) << "trial " << trial;
  }
}

TEST(Farkas, TriangleChain) {
  const auto tri = cycle_graph(3);
  const auto rel = metric_maxcut(3);
  const auto slacks = slack_functions(rel);
  const auto dec = farkas_decompose(q(2, 3), tri, rel);
  ASSERT_TRUE(dec.feasible);
  EXPECT_EQ(dec.lambda0, 0);
  ASSERT_EQ(dec.lambda.size(), 10u);
  EXPECT_EQ(dec.lambda[9], q(1, 3));
  EXPECT_TRUE(verify_decomposition(q(2, 3), tri, dec.lambda0, dec.lambda, slacks));
  auto tampered = dec.lambda;
  tampered[9] = q(1, 2);
  EXPECT_FALSE(verify_decomposition(q(2, 3), tri, dec.lambda0, tampered, slacks));

  const Rational c = q(2, 3) - q(1, 100);
  const auto inf = farkas_decompose(c, tri, rel);
  ASSERT_FALSE(inf.feasible);
  ASSERT_TRUE(inf.certificate.has_value());
  EXPECT_TRUE(verify_infeasibility_certificate(c, tri, *inf.certificate, slacks));
  EXPECT_FALSE(verify_infeasibility_certificate(q(2, 3), tri, *inf.certificate, slacks));
}

// Feasible exactly when c is at least the LP value, checked on both sides.
TEST(FarkasProperty, ThresholdIsLpValue) {
  const auto rel = metric_maxcut(4);
  const auto slacks = slack_functions(rel);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto g = random_graph(4, q(1, 2), seed);
    const Rational v = lp_value(rel, g);
    for (const Rational& c : {v, v + q(1, 1000), v - q(1, 1000)}) {
      const auto dec = farkas_decompose(c, g, slacks);
      EXPECT_EQ(dec.feasible, c >= v) << "seed " << seed;
      if (dec.feasible)
        EXPECT_TRUE(verify_decomposition(c, g, dec.lambda0, dec.lambda, slacks));
      else
        EXPECT_TRUE(verify_infeasibility_certificate(c, g, *dec.certificate, slacks));
    }
  }
}

TEST(Protocol, DistributionFormulas) {
  for (int t = 1; t <= 6; ++t)
    for (const Rational& p : {q(0), q(1, 3), q(3, 4), q(1)}) {
      const Rational c = q(7, 8);
      EXPECT_EQ(protocol_expected_output(p, c, t), oracle_output(p, c, t));
      EXPECT_EQ(protocol_tail(p, c, t), oracle_tail(p, c, t));
      // E[(c - theta) 1{theta <= c}] = c - p + E[(theta - c)^+].
      EXPECT_EQ(protocol_expected_output(p, c, t), c - p + protocol_expected_excess(p, c, t));
    }
}

TEST(Protocol, SlackMatrixRows) {
  std::int64_t expect_rows = 0;
  for (const auto& g : all_maxcut_instances(4))
    if (oracle_cut(4, edges_of(g)) <= q(3, 4)) ++expect_rows;
  const auto m = full_maxcut_slack_matrix(4, q(7, 8), q(3, 4));
  EXPECT_EQ(static_cast<std::int64_t>(m.rows.size()), expect_rows);
  EXPECT_EQ(m.cols.size(), 16u);
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    for (std::size_t j = 0; j < 16; ++j) EXPECT_EQ(m.entries[i][j], q(7, 8) - evaluate(m.rows[i], m.cols[j]));
  std::vector<Instance> rows{complete_graph(4), cycle_graph(4)};
  std::vector<Mask> cols{0, 5};
  EXPECT_THROW(build_slack_matrix(rows, cols, q(7, 8), q(3, 4)), HypothesisViolation);
}

TEST(Protocol, FactorizationReproducesMatrix) {
  const auto m = full_maxcut_slack_matrix(4, q(7, 8), q(3, 4));
  for (int t = 1; t <= 2; ++t) {
    const auto mp = protocol_matrix(m, t);
    const auto f = protocol_factorization(m, t);
    std::size_t expect = 1;
    for (int k = 0; k < t; ++k) expect *= f.edges.size();
    EXPECT_EQ(f.messages.size(), expect);
    EXPECT_EQ(multiply(f.u, f.v), mp);
    for (const auto& row : f.u)
      for (const auto& v : row) EXPECT_GE(v, 0);
    for (const auto& row : f.v)
      for (const auto& v : row) EXPECT_GE(v, 0);
  }
}

TEST(Protocol, SmallRowsByHand) {
  // Single edge, x cutting it: theta = 1 always, output 0.
  std::vector<Instance> rows{maxcut_instance(3, {{0, 1}, {1, 2}, {0, 2}})};
  std::vector<Mask> cols{0b001, 0b000};
  const auto m = build_slack_matrix(rows, cols, q(7, 8), q(2, 3));
  const auto mp = protocol_matrix(m, 1);
  // G(x) = 2/3 on the first column: output 7/8 w.p. 1/3, else 0.
  EXPECT_EQ(mp[0][0], q(7, 24));
  EXPECT_EQ(mp[0][1], q(7, 8));
}
