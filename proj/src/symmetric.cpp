#include <algorithm>
#include <numeric>
#include <set>

#include "liftgap/caps.hpp"
#include "liftgap/restriction.hpp"

namespace liftgap {

namespace {

// Dense ids for the distinct values of f, so structure checks compare ints.
std::vector<int> value_ids(const BoolFn& f) {
  std::map<Rational, int> ids;
  std::vector<int> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = ids.emplace(f[x], static_cast<int>(ids.size())).first->second;
  return out;
}

Mask compress(Mask x, const std::vector<int>& coords) {
  Mask y = 0;
  for (std::size_t k = 0; k < coords.size(); ++k) y |= ((x >> coords[k]) & 1u) << k;
  return y;
}

bool structured(const std::vector<int>& ids, int n, Mask j) {
  const auto coords = coords_of(j);
  std::vector<int> seen((std::size_t{1} << coords.size()) * (n + 1), -1);
  for (std::size_t x = 0; x < ids.size(); ++x) {
    const std::size_t key = compress(x, coords) * (n + 1) + popcount(x);
    if (seen[key] < 0)
      seen[key] = ids[x];
    else if (seen[key] != ids[x])
      return false;
  }
  return true;
}

}  // namespace

bool has_symmetric_structure(const BoolFn& f, Mask j) { return structured(value_ids(f), f.n(), j); }

SymmetricStructure detect_symmetric_structure(const BoolFn& f, int d_max) {
  const int n = f.n();
  const int cap = SizeCaps::current().symmetric_max_n;
  if (n > cap)
    throw SizeCapExceeded("symmetric structure search on " + std::to_string(n) + " variables exceeds cap " +
                          std::to_string(cap));
  if (d_max < 0) throw ParameterError("dMax must be non-negative");
  if (4 * d_max >= n)
    throw ParameterError("dMax = " + std::to_string(d_max) + " is not below n/4 = " + std::to_string(n) + "/4");
  const auto ids = value_ids(f);
  SymmetricStructure out;
  for (int k = 0; k <= d_max && !out.found; ++k) {
    std::vector<Mask> candidates;
    for (Mask a = 0; a < (Mask{1} << n); ++a)
      if (popcount(a) == k) candidates.push_back(a);
    std::sort(candidates.begin(), candidates.end(), lex_less);
    for (Mask j : candidates) {
      if (!structured(ids, n, j)) continue;
      out.found = true;
      out.j = coords_of(j);
      for (std::size_t x = 0; x < f.size(); ++x)
        out.table.emplace(std::make_pair(compress(x, out.j), n - 2 * popcount(x)), f[x]);
      break;
    }
  }
  return out;
}

BoolFn antidiagonal_restriction(const BoolFn& q) {
  if (q.n() % 2 != 0) throw ParameterError("antidiagonal restriction needs an even variable count");
  const int m = q.n() / 2;
  const Mask low = (Mask{1} << m) - 1;
  BoolFn h(m);
  for (Mask x = 0; x <= low; ++x) h[x] = q[x | ((~x & low) << m)];
  return h;
}

BoolFn permute(const BoolFn& f, std::span<const int> pi) {
  const int n = f.n();
  if (static_cast<int>(pi.size()) != n) throw ParameterError("permutation has the wrong length");
  BoolFn out(n);
  for (Mask x = 0; x < f.size(); ++x) {
    Mask y = 0;
    for (int i = 0; i < n; ++i) y |= ((x >> i) & 1u) << pi[i];
    out[x] = f[y];
  }
  return out;
}

ClosureReport check_permutation_closure(const std::vector<BoolFn>& slacks, int n) {
  ClosureReport rep;
  std::set<std::vector<Rational>> family;
  for (const auto& q : slacks) {
    if (q.n() != n) throw ParameterError("slack has the wrong variable count");
    family.insert(q.values());
  }
  auto check = [&](const std::vector<int>& pi) {
    ++rep.permutations_checked;
    for (std::size_t i = 0; i < slacks.size(); ++i) {
      if (family.count(permute(slacks[i], pi).values()) == 0) {
        rep.closed = false;
        std::string p;
        for (int v : pi) p += (p.empty() ? "" : ",") + std::to_string(v + 1);
        rep.detail = "slack " + std::to_string(i) + " maps outside the family under (" + p + ")";
        return false;
      }
    }
    return true;
  };
  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  if (n <= 6) {
    rep.full_group = true;
    do {
      if (!check(pi)) return rep;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return rep;
  }
  std::vector<int> cycle(n);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  if (!check(cycle)) return rep;
  std::vector<int> swap = pi;
  std::swap(swap[0], swap[1]);
  check(swap);
  return rep;
}

SymmetricCheckReport symmetric_contradiction_check(const Instance& inst0, const PolyhedralRelaxation& rel,
                                                   const Rational& c, int d) {
  inst0.validate();
  SymmetricCheckReport rep;
  rep.m = inst0.n;
  rep.n = 2 * inst0.n;
  rep.d = d;
  rep.c = c;
  if (rel.n != rep.n)
    throw ParameterError("relaxation must live on n = 2m = " + std::to_string(rep.n) + " variables");
  const auto slacks = slack_functions(rel);
  rep.slack_count = slacks.size();
  rep.closure = check_permutation_closure(slacks, rep.n);
  if (!rep.closure.closed) throw HypothesisViolation("slack family is not closed under permutations: " + rep.closure.detail);

  const Instance extended = dummy_extend(inst0);
  const auto dec = farkas_decompose(c, extended, slacks);
  rep.feasible = dec.feasible;

  const SaResult sa = sa_value(inst0, d);
  rep.sa_value = sa.value;
  rep.pe_gap = c - sa.value;

  std::vector<BoolFn> h;
  std::vector<Rational> pe_h;
  for (const auto& q : slacks) {
    h.push_back(antidiagonal_restriction(q));
    pe_h.push_back(pe_apply(sa.pe, h.back()));
    if (popcount(junta_support(h.back())) <= d) {
      ++rep.junta_slacks;
      if (pe_h.back() < 0) rep.pe_nonnegative = false;
    }
  }
  rep.all_juntas = rep.junta_slacks == slacks.size();

  if (dec.feasible) {
    // The decomposition restricted to (x, -x) must reproduce c - I_0.
    const BoolFn v = value_function(inst0);
    for (std::size_t x = 0; x < v.size(); ++x) {
      Rational s = dec.lambda0;
      for (std::size_t i = 0; i < h.size(); ++i) s += dec.lambda[i] * h[i][x];
      if (s != c - v[x]) throw InvariantViolation("antidiagonal decomposition does not reproduce c - I_0");
    }
    Rational comb = dec.lambda0;
    for (std::size_t i = 0; i < h.size(); ++i) comb += dec.lambda[i] * pe_h[i];
    if (comb != rep.pe_gap) throw InvariantViolation("pE applied to the decomposition differs from c - SA_d");
    rep.pe_combination = comb;
  }
  rep.contradiction = !dec.feasible && rep.pe_gap < 0;
  // With every h_i a non-negative d-junta, feasibility forces c >= SA_d.
  rep.consistent = !(rep.all_juntas && rep.pe_nonnegative && dec.feasible && rep.pe_gap < 0);
  return rep;
}

}  // namespace liftgap
