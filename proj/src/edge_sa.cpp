#include <algorithm>
#include <bit>
#include <set>

#include "liftgap/caps.hpp"
#include "liftgap/error.hpp"
#include "liftgap/sherali_adams.hpp"

namespace liftgap {

namespace {

// k-subsets of {0..p-1} in increasing mask order (Gosper's hack).
std::vector<Mask> subsets_of_size(int p, int k) {
  std::vector<Mask> out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  if (k > p) return out;
  const Mask limit = p == 64 ? 0 : Mask{1} << p;
  Mask v = (Mask{1} << k) - 1;
  for (;;) {
    out.push_back(v);
    const Mask c = v & (~v + 1);
    const Mask r = v + c;
    if (r == 0) break;
    v = (((r ^ v) >> 2) / c) | r;
    if (limit != 0 && v >= limit) break;
  }
  return out;
}

std::vector<Mask> monomials_up_to(int p, int deg) {
  std::vector<Mask> out;
  for (int k = 1; k <= std::min(deg, p); ++k) {
    auto s = subsets_of_size(p, k);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

EdgePoly multiply(const EdgePoly& a, const EdgePoly& b) {
  EdgePoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      auto& slot = out[ma | mb];
      slot += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0)
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

EdgePoly facet_poly(const MetricFacet& f) {
  EdgePoly p;
  if (f.constant != 0) p[0] = f.constant;
  for (const auto& [e, c] : f.terms) p[Mask{1} << e] += c;
  return p;
}

struct EdgeRow {
  EdgePoly poly;
  std::string label;
};

void check_edge_size(int n, int r) {
  const auto caps = SizeCaps::current();
  if (n < 3) throw ParameterError("edge formulation needs n >= 3");
  if (r < 0) throw ParameterError("level r must be non-negative");
  if (n > caps.edge_max_n)
    throw SizeCapExceeded("edge formulation on " + std::to_string(n) + " vertices exceeds cap " +
                          std::to_string(caps.edge_max_n));
  if (r > caps.edge_max_r)
    throw SizeCapExceeded("edge formulation level " + std::to_string(r) + " exceeds cap " +
                          std::to_string(caps.edge_max_r));
  if (n * (n - 1) / 2 > 64) throw SizeCapExceeded("edge monomials are limited to 64 pairs");
}

// Every product f * l, f a partial-assignment indicator on <= r edge
// variables, l a metric facet. Identically zero products are skipped.
std::vector<EdgeRow> edge_rows(int n, int r) {
  const int p = n * (n - 1) / 2;
  const auto facets = metric_facets(n);
  std::vector<EdgePoly> facet_polys;
  for (const auto& f : facets) facet_polys.push_back(facet_poly(f));
  std::vector<EdgeRow> rows;
  for (int k = 0; k <= std::min(r, p); ++k) {
    for (Mask t : subsets_of_size(p, k)) {
      const auto coords = coords_of(t);
      for (unsigned b = 0; b < (1u << k); ++b) {
        EdgePoly ind{{0, Rational(1)}};
        std::string label = "f[";
        for (int j = 0; j < k; ++j) {
          const Mask bit = Mask{1} << coords[j];
          const bool one = (b >> j) & 1u;
          EdgePoly factor = one ? EdgePoly{{bit, Rational(1)}} : EdgePoly{{0, Rational(1)}, {bit, Rational(-1)}};
          ind = multiply(ind, factor);
          if (j) label += ',';
          label += "y" + std::to_string(coords[j]) + "=" + (one ? "1" : "0");
        }
        label += "]";
        for (std::size_t fi = 0; fi < facets.size(); ++fi) {
          EdgePoly prod = multiply(ind, facet_polys[fi]);
          if (prod.empty()) continue;
          rows.push_back(EdgeRow{std::move(prod), label + "*" + facets[fi].label});
        }
      }
    }
  }
  return rows;
}

}  // namespace

int pair_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n || i == j) throw ParameterError("invalid vertex pair");
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

std::vector<MetricFacet> metric_facets(int n) {
  std::vector<MetricFacet> out;
  auto name = [](int i, int j) { return "y" + std::to_string(i + 1) + std::to_string(j + 1); };
  for (auto [i, j] : all_pairs(n)) {
    const int e = pair_index(n, i, j);
    out.push_back(MetricFacet{Rational(0), {{e, Rational(1)}}, name(i, j)});
    out.push_back(MetricFacet{Rational(1), {{e, Rational(-1)}}, "1-" + name(i, j)});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const int ij = pair_index(n, i, j), ik = pair_index(n, i, k), jk = pair_index(n, j, k);
        out.push_back(MetricFacet{Rational(0), {{ij, Rational(-1)}, {ik, Rational(1)}, {jk, Rational(1)}},
                                  name(i, k) + "+" + name(j, k) + "-" + name(i, j)});
        out.push_back(MetricFacet{Rational(0), {{ij, Rational(1)}, {ik, Rational(-1)}, {jk, Rational(1)}},
                                  name(i, j) + "+" + name(j, k) + "-" + name(i, k)});
        out.push_back(MetricFacet{Rational(0), {{ij, Rational(1)}, {ik, Rational(1)}, {jk, Rational(-1)}},
                                  name(i, j) + "+" + name(i, k) + "-" + name(j, k)});
        out.push_back(MetricFacet{Rational(2), {{ij, Rational(-1)}, {ik, Rational(-1)}, {jk, Rational(-1)}},
                                  "2-" + name(i, j) + "-" + name(i, k) + "-" + name(j, k)});
      }
  return out;
}

Rational EdgeFunctional::moment(EdgeMonomial m) const {
  if (m == 0) return 1;
  const auto it = moments.find(m);
  return it == moments.end() ? Rational(0) : it->second;
}

Rational edge_apply(const EdgeFunctional& pe, const EdgePoly& f) {
  Rational s = 0;
  for (const auto& [m, c] : f) {
    if (popcount(m) > pe.r + 1) throw ParameterError("edge polynomial degree exceeds the functional's range");
    s += c * pe.moment(m);
  }
  return s;
}

EdgeSaLinearProgram build_edge_sa_lp(int n, int r, const std::vector<std::pair<int, int>>& edges) {
  check_edge_size(n, r);
  if (edges.empty()) throw ParameterError("graph has no edges");
  const int p = n * (n - 1) / 2;
  EdgeSaLinearProgram out;
  out.n = n;
  out.r = r;
  out.var_monomials = monomials_up_to(p, r + 1);
  std::map<Mask, std::size_t> column;
  for (std::size_t j = 0; j < out.var_monomials.size(); ++j) column[out.var_monomials[j]] = j;

  LinearProgram& lp = out.lp;
  lp.num_vars = out.var_monomials.size();
  lp.sense = Sense::Maximize;
  lp.objective.assign(lp.num_vars, Rational(0));
  const Rational w(BigInt(1), BigInt(edges.size()));
  for (auto [i, j] : edges) lp.objective[column.at(Mask{1} << pair_index(n, i, j))] += w;

  std::set<std::pair<std::vector<std::pair<std::size_t, Rational>>, Rational>> seen;
  for (auto& row : edge_rows(n, r)) {
    std::vector<std::pair<std::size_t, Rational>> sparse;
    Rational constant = 0;
    for (const auto& [m, c] : row.poly) {
      if (m == 0)
        constant = c;
      else
        sparse.emplace_back(column.at(m), c);
    }
    if (sparse.empty()) {
      if (constant < 0) throw InvariantViolation("edge formulation produced an infeasible constant row");
      continue;
    }
    std::sort(sparse.begin(), sparse.end());
    if (!seen.emplace(sparse, constant).second) continue;
    std::vector<Rational> coeffs(lp.num_vars, Rational(0));
    for (const auto& [j, c] : sparse) coeffs[j] = c;
    lp.add_constraint(std::move(coeffs), Relation::GreaterEq, -constant);
  }
  return out;
}

EdgeSaResult edge_sa_value(const Instance& graph, int r) {
  const auto edges = edges_of(graph);
  const auto sa = build_edge_sa_lp(graph.n, r, edges);
  const LPSolution sol = solve_lp(sa.lp);
  if (sol.status != LPStatus::Optimal)
    throw InvariantViolation("edge Sherali-Adams LP reported " + to_string(sol.status));
  EdgeSaResult res;
  res.value = *sol.value;
  res.pe.n = graph.n;
  res.pe.r = r;
  for (std::size_t j = 0; j < sa.var_monomials.size(); ++j)
    if (sol.point[j] != 0) res.pe.moments[sa.var_monomials[j]] = sol.point[j];
  return res;
}

EdgeFeasibility check_edge_functional(const EdgeFunctional& pe) {
  if (pe.n < 3) throw ParameterError("edge functional needs n >= 3");
  if (pe.n * (pe.n - 1) / 2 > 64) throw SizeCapExceeded("edge monomials are limited to 64 pairs");
  EdgeFeasibility rep;
  bool first = true;
  for (const auto& row : edge_rows(pe.n, pe.r)) {
    const Rational v = edge_apply(pe, row.poly);
    ++rep.rows_checked;
    if (first || v < rep.min_value) {
      rep.min_value = v;
      rep.worst_row = row.label;
    }
    first = false;
    if (v < 0) rep.feasible = false;
  }
  return rep;
}

Rational edge_objective(const EdgeFunctional& pe, const std::vector<std::pair<int, int>>& edges) {
  if (edges.empty()) throw ParameterError("no edges");
  Rational s = 0;
  for (auto [i, j] : edges) s += pe.moment(Mask{1} << pair_index(pe.n, i, j));
  return s / Rational(BigInt(edges.size()));
}

Rational vertex_objective(const PseudoExpectation& pe, const std::vector<std::pair<int, int>>& edges) {
  if (edges.empty()) throw ParameterError("no edges");
  if (pe.d < 2) throw ParameterError("vertex objective needs locality >= 2");
  Rational s = 0;
  for (auto [i, j] : edges) s += (Rational(1) - pe.moment((Mask{1} << i) | (Mask{1} << j))) / 2;
  return s / Rational(BigInt(edges.size()));
}

EdgeFunctional vertex_to_edge(const PseudoExpectation& pe) {
  const int k = pe.d;
  if (k % 2 != 0 || k < 6) throw ParameterError("vertex_to_edge needs even locality k >= 6, got " + std::to_string(k));
  if (pe.n < 3) throw ParameterError("vertex_to_edge needs n >= 3");
  const auto lef = check_lef(pe);
  if (!lef.passed) throw ParameterError("input functional fails check_lef (" + lef.failed + "): " + lef.detail);
  const int n = pe.n;
  const int r = k / 2 - 2;
  const auto pairs = all_pairs(n);
  if (pairs.size() > 64) throw SizeCapExceeded("edge monomials are limited to 64 pairs");
  EdgeFunctional out{n, r, {}};
  for (Mask m : monomials_up_to(static_cast<int>(pairs.size()), r + 1)) {
    const auto es = coords_of(m);
    Rational s = 0;
    // prod_e (1 - chi_e) / 2 expanded over subsets U of the monomial.
    for (unsigned u = 0; u < (1u << es.size()); ++u) {
      Mask alpha = 0;
      for (std::size_t j = 0; j < es.size(); ++j)
        if ((u >> j) & 1u) alpha ^= (Mask{1} << pairs[es[j]].first) | (Mask{1} << pairs[es[j]].second);
      const Rational mom = pe.moment(alpha);
      if (std::popcount(u) % 2)
        s -= mom;
      else
        s += mom;
    }
    s /= Rational(BigInt(1) << es.size());
    if (s != 0) out.moments[m] = s;
  }
  return out;
}

PseudoExpectation edge_to_vertex(const EdgeFunctional& pe) {
  const int n = pe.n;
  if (n < 3) throw ParameterError("edge_to_vertex needs n >= 3");
  PseudoExpectation out{n, pe.r, {}};
  out.moments[0] = 1;
  for (Mask alpha : low_degree_masks(n, pe.r)) {
    const auto vs = coords_of(alpha & ~Mask{1});
    Rational s = 0;
    // prod_{i in alpha, i != 0} (1 - 2 y_{0,i}).
    for (unsigned u = 0; u < (1u << vs.size()); ++u) {
      Mask mono = 0;
      for (std::size_t j = 0; j < vs.size(); ++j)
        if ((u >> j) & 1u) mono |= Mask{1} << pair_index(n, 0, vs[j]);
      const int size = std::popcount(u);
      Rational term = pe.moment(mono) * Rational(BigInt(1) << size);
      if (size % 2)
        s -= term;
      else
        s += term;
    }
    if (s != 0) out.moments[alpha] = s;
  }
  return out;
}

std::vector<std::pair<std::pair<int, int>, Rational>> triple_residuals(const EdgeFunctional& pe) {
  if (pe.r + 1 < 2) throw ParameterError("triple residuals need degree-2 moments (r >= 1)");
  std::vector<std::pair<std::pair<int, int>, Rational>> out;
  const int n = pe.n;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Mask a = Mask{1} << pair_index(n, 0, i);
      const Mask b = Mask{1} << pair_index(n, 0, j);
      const Mask c = Mask{1} << pair_index(n, i, j);
      out.push_back({{i, j}, pe.moment(a) + pe.moment(b) - 2 * pe.moment(a | b) - pe.moment(c)});
    }
  return out;
}

}  // namespace liftgap
