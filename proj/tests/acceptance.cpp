// Acceptance run: one PASS/FAIL line per criterion, each with a wall-clock
// budget. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "liftgap/error.hpp"
#include "liftgap/restriction.hpp"
#include "liftgap/sherali_adams.hpp"
#include "liftgap/slack.hpp"
#include "support.hpp"

using namespace liftgap;
using namespace testing_support;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

// E[(c - theta) 1{theta <= c}] summed term by term.
Rational oracle_expected(const Rational& p, const Rational& c, int t) {
  Rational r = 0;
  for (int k = 0; k <= t; ++k)
    if (Rational(k, t) <= c) r += binomial_pmf(t, k, p) * (c - Rational(k, t));
  return r;
}

struct Verdict {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

using Check = std::function<void(Verdict&)>;

void ac1(Verdict& v) {
  int count = 0;
  for (int n = 2; n <= 4; ++n)
    for (const auto& g : all_maxcut_instances(n)) {
      const Rational opt = brute_force_opt(g).value;
      v.require(opt == oracle_opt(g), "brute force vs oracle on a graph");
      v.require(sa_value(g, n).value == opt, "SA_n on graph " + write_edge_list(g));
      ++count;
    }
  Rng rng(1001);
  for (int i = 0; i < 20; ++i) {
    const auto inst = random_3sat(4, 1 + static_cast<int>(uniform_below(rng, 10)), rng());
    const Rational opt = brute_force_opt(inst).value;
    v.require(opt == oracle_opt(inst), "brute force vs oracle on 3-SAT");
    v.require(sa_value(inst, 4).value == opt, "SA_4 on 3-SAT " + write_dimacs_cnf(inst));
    ++count;
  }
  v.note << count << " instances, SA_n = opt on all";
}

void ac2(Verdict& v) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = random_graph(6, q(1, 2), seed);
    const Rational s2 = sa_value(g, 2).value, s3 = sa_value(g, 3).value, s4 = sa_value(g, 4).value;
    const Rational opt = brute_force_opt(g).value;
    v.require(s2 >= s3 && s3 >= s4 && s4 >= opt, "chain on seed " + std::to_string(seed));
    if (seed == 1) v.note << "seed 1: " << to_string(s2) << " >= " << to_string(s3) << " >= " << to_string(s4)
                          << " >= " << to_string(opt) << "; ";
  }
  v.note << "10 graphs G(6, 1/2)";
}

void ac3(Verdict& v) {
  const auto tri = cycle_graph(3);
  const auto rel = metric_maxcut(3);
  const auto slacks = slack_functions(rel);
  v.require(brute_force_opt(tri).value == q(2, 3), "opt = 2/3");
  v.require(lp_value(rel, tri) == q(2, 3), "metric LP = 2/3");
  const auto dec = farkas_decompose(q(2, 3), tri, slacks);
  v.require(dec.feasible && verify_decomposition(q(2, 3), tri, dec.lambda0, dec.lambda, slacks),
            "decomposition at 2/3");
  const Rational below = q(2, 3) - q(1, 100);
  const auto inf = farkas_decompose(below, tri, slacks);
  v.require(!inf.feasible && inf.certificate && verify_infeasibility_certificate(below, tri, *inf.certificate, slacks),
            "certificate at 2/3 - 1/100");
  v.note << "opt = LP = 2/3, decomposition verified, certificate verified below";
}

void ac4(Verdict& v) {
  const auto c5 = cycle_graph(5);
  const Rational opt = brute_force_opt(c5).value, lp = lp_value(metric_maxcut(5), c5), sa2 = sa_value(c5, 2).value;
  v.require(opt == q(4, 5), "opt = 4/5");
  v.require(lp == q(4, 5), "metric LP = 4/5");
  v.require(sa2 >= q(4, 5) && sa2 <= 1, "SA_2 in [4/5, 1]");
  v.note << "opt " << to_string(opt) << ", LP " << to_string(lp) << ", SA_2 " << to_string(sa2);
}

void ac5(Verdict& v) {
  const auto rel = metric_maxcut(4);
  const auto slacks = slack_functions(rel);
  const std::vector<Instance> graphs{
      cycle_graph(4), complete_graph(4), maxcut_instance(4, {{0, 1}, {1, 2}, {2, 3}}),
      maxcut_instance(4, {{0, 1}, {1, 2}, {0, 2}}), maxcut_instance(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}})};
  for (const auto& g : graphs) {
    const Rational lp = lp_value(rel, g);
    for (const Rational& c : {lp - q(1, 1000), lp, lp + q(1, 1000)}) {
      const auto dec = farkas_decompose(c, g, slacks);
      v.require(dec.feasible == (c >= lp), "feasibility at c = " + to_string(c));
      if (dec.feasible)
        v.require(verify_decomposition(c, g, dec.lambda0, dec.lambda, slacks), "decomposition check");
      else
        v.require(dec.certificate && verify_infeasibility_certificate(c, g, *dec.certificate, slacks),
                  "certificate check");
    }
    v.note << to_string(lp) << " ";
  }
  v.note << "(LP values; feasible exactly at c >= LP)";
}

void ac6(Verdict& v) {
  for (const auto& g : {cycle_graph(3), cycle_graph(5)}) {
    const auto edges = edges_of(g);
    const auto pe6 = sa_value(g, 6).pe;
    const auto ef = vertex_to_edge(pe6);
    v.require(check_edge_functional(ef).feasible, "vertex_to_edge feasible");
    v.require(edge_objective(ef, edges) == vertex_objective(pe6, edges), "vertex_to_edge objective");
    const auto er = edge_sa_value(g, 2);
    const auto pe = edge_to_vertex(er.pe);
    v.require(check_lef(pe).passed, "edge_to_vertex feasible");
    v.require(vertex_objective(pe, edges) == edge_objective(er.pe, edges), "edge_to_vertex objective");
    v.note << "n=" << g.n << ": v2e " << to_string(edge_objective(ef, edges)) << ", e2v "
           << to_string(vertex_objective(pe, edges)) << "; ";
  }
  const std::vector<Instance> graphs{cycle_graph(3), complete_graph(4), cycle_graph(5), random_graph(6, q(1, 2), 1),
                                     cycle_graph(6)};
  for (const auto& g : graphs)
    v.require(lp_value(universal(g.n, 2), g) == sa_value(g, 2).value, "universal(n, 2) = SA_2 on n = " +
                                                                          std::to_string(g.n));
  v.note << "universal(n, 2) = SA_2 on 5 graphs";
}

void ac7(Verdict& v) {
  Rng rng(7007);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_function(rng, 1 + static_cast<int>(uniform_below(rng, 10)));
    const auto c = fourier_transform(f);
    Rational energy = 0;
    for (const auto& x : c.coeffs) energy += x * x;
    v.require(energy == inner(f, f), "Parseval");
    v.require(inverse_fourier_transform(c) == f, "round trip");
    if (f.n() <= 6) v.require(c.coeffs == naive_fourier(f), "direct transform");
  }
  auto junta_ok = [&](const Density& dens, const Rational& t, int d, const Rational& gamma, const std::string& name) {
    const auto cert = chang_junta(dens, t, d, gamma);
    v.require(cert.success, name + " success");
    v.require(Rational(static_cast<std::int64_t>(cert.junta.size())) * gamma * gamma <= 2 * t * d, name + " |J| bound");
    Mask j = 0;
    for (int x : cert.junta) j |= Mask{1} << x;
    const auto coeffs = naive_fourier(dens.fn());
    for (Mask a = 1; a < coeffs.size(); ++a)
      if (popcount(a) <= d && (a & ~j)) v.require(abs(coeffs[a]) <= gamma, name + " off-J coefficient");
  };
  std::vector<Rational> dict(64);
  for (Mask x = 0; x < 64; ++x) dict[x] = (x & 1) ? 0 : 2;
  junta_ok(Density(BoolFn(6, dict)), 1, 2, q(1, 4), "dictator");
  const auto maj = majority_density(3);
  v.require(std::abs(maj.entropy_deficit() - 1.0) < 1e-12, "majority deficit 1");
  junta_ok(maj, 1, 3, q(1, 4), "majority");
  for (int i = 0; i < 10; ++i) {
    const auto dens = random_density(rng, 4 + static_cast<int>(uniform_below(rng, 5)));
    v.require(dens.entropy_deficit() <= 1.0, "random density has deficit <= 1");
    junta_ok(dens, 1, 2, q(1, 8), "random density " + std::to_string(i));
  }
  v.note << "50 functions exact; junta bounds on dictator, majority-3, 10 random densities";
}

void ac8(Verdict& v) {
  try {
    const auto rep = main_inequality_experiment(metric_maxcut(12), cycle_graph(3), 2, 1);
    v.require(rep.holds && rep.lhs >= rep.rhs, "lhs >= rhs");
    v.note << "S = {";
    for (std::size_t i = 0; i < rep.s.size(); ++i) v.note << (i ? "," : "") << rep.s[i] + 1;
    v.note << "}, lhs " << to_string(rep.lhs) << " >= rhs " << to_string(rep.rhs) << "; ";
  } catch (const Error& e) {
    v.require(false, std::string(e.kind()) + ": " + e.what());
  }
  for (int n = 12; n < 16; ++n) v.require(epsilon_n(n + 1, 3, 2) < epsilon_n(n, 3, 2), "epsilon_n decreasing");
  v.note << "eps_12 " << epsilon_n(12, 3, 2) << " > eps_16 " << epsilon_n(16, 3, 2);
}

void ac9(Verdict& v) {
  const Rational c = q(7, 8), s = q(3, 4);
  const auto m = full_maxcut_slack_matrix(4, c, s);
  std::map<std::pair<std::size_t, std::size_t>, Rational> prev_tail;
  for (int t = 1; t <= 5; ++t) {
    const auto mp = protocol_matrix(m, t);
    for (std::size_t i = 0; i < m.rows.size(); ++i)
      for (std::size_t j = 0; j < m.cols.size(); ++j) {
        const Rational p = evaluate(m.rows[i], m.cols[j]);
        const Rational tail = protocol_tail(p, c, t);
        const Rational diff = mp[i][j] - m.entries[i][j];
        v.require(diff >= 0 && diff <= tail, "0 <= M' - M <= tail");
        v.require(mp[i][j] == oracle_expected(p, c, t), "M' matches the binomial oracle");
        v.require(tail == [&] {
          Rational r = 0;
          for (int k = 0; k <= t; ++k)
            if (Rational(k, t) > c) r += binomial_pmf(t, k, p);
          return r;
        }(), "tail matches the binomial oracle");
        if (t > 1) {
          const Rational before = prev_tail[{i, j}];
          v.require(before > 0 ? tail < before : tail == 0, "tail strictly decreasing where positive");
        }
        prev_tail[{i, j}] = tail;
      }
    if (t <= 3) {
      const auto f = protocol_factorization(m, t);
      v.require(multiply(f.u, f.v) == mp, "U V = M' at T = " + std::to_string(t));
    }
  }
  v.note << m.rows.size() << " x " << m.cols.size() << " matrix, T = 1..5, U V = M' for T <= 3";
}

void ac10(Verdict& v) {
  Rng rng(1010);
  for (int i = 0; i < 20; ++i) {
    const Mask j = i % 4 == 0 ? 0 : Mask{1} << uniform_below(rng, 8);
    std::map<std::pair<Mask, int>, Rational> table;
    std::vector<Rational> vals(256);
    for (Mask x = 0; x < 256; ++x) {
      auto [it, fresh] = table.try_emplace({x & j, 8 - 2 * popcount(x)}, 0);
      if (fresh) it->second = random_rational(rng, 9, 4);
      vals[x] = it->second;
    }
    const BoolFn f(8, vals);
    const auto st = detect_symmetric_structure(f, 1);
    v.require(st.found && mask_of(st.j) == j, "recovered J");
    const auto h = antidiagonal_restriction(f);
    v.require(popcount(junta_support(h)) <= popcount(j), "antidiagonal restriction is a |J|-junta");
  }
  const auto tri = cycle_graph(3);
  const Rational c = sa_value(tri, 2).value - q(1, 100);
  const auto rep = symmetric_contradiction_check(tri, universal(6, 2), c, 2);
  v.require(!rep.feasible && rep.contradiction && rep.consistent, "symmetric contradiction");
  v.note << "20 planted structures recovered; c = " << to_string(c) << " infeasible, "
         << rep.closure.permutations_checked << " permutations checked";
}

}  // namespace

int main() {
  struct Item {
    const char* id;
    const char* title;
    double budget;
    Check run;
  };
  const Item items[] = {
      {"AC1", "SA exactness", 120, ac1},          {"AC2", "SA monotonicity", 60, ac2},
      {"AC3", "triangle chain", 5, ac3},          {"AC4", "C5 values", 10, ac4},
      {"AC5", "LP characterization", 30, ac5},    {"AC6", "edge translations", 120, ac6},
      {"AC7", "Fourier suite", 60, ac7},          {"AC8", "restriction pipeline", 600, ac8},
      {"AC9", "protocol matrix", 120, ac9},       {"AC10", "symmetric pipeline", 120, ac10},
  };
  int failed = 0;
  for (const auto& item : items) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      item.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > item.budget) v.require(false, "over budget");
    const bool pass = v.ok;
    failed += pass ? 0 : 1;
    std::printf("%-4s %s  %s: %s [%.2f s / %.0f s]\n", item.id, pass ? "PASS" : "FAIL", item.title,
                v.note.str().c_str(), secs, item.budget);
    std::fflush(stdout);
  }
  return failed;
}
