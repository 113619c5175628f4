#include "liftgap/restriction.hpp"

#include <algorithm>
#include <cmath>

#include "liftgap/caps.hpp"
#include "liftgap/random.hpp"

namespace liftgap {

std::vector<int> sample_restriction(int n, int m, std::uint64_t seed) {
  if (m < 3 || 4 * m > n)
    throw ParameterError("sample_restriction needs 3 <= m <= n/4, got m = " + std::to_string(m) +
                         ", n = " + std::to_string(n));
  Rng rng(seed);
  std::vector<int> s;
  do {
    s.clear();
    for (int i = 0; i < n; ++i)
      if (bernoulli(rng, 2 * static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n))) s.push_back(i);
  } while (static_cast<int>(s.size()) < m);
  s.resize(m);
  return s;
}

int entropy_budget(int n, int d) {
  if (n < 1 || d < 0) throw ParameterError("entropy budget needs n >= 1, d >= 0");
  const BigInt target = ipow(BigInt(n), static_cast<unsigned>(d));
  int t = 0;
  while ((BigInt(1) << t) < target) ++t;
  return t;
}

CoefficientBound restriction_gamma(int n, int m, int d, int t) {
  const BigInt k = BigInt(16) * m * t * d;
  if (k == 0) throw ParameterError("restriction threshold vanishes (t = 0)");
  return CoefficientBound{Rational(k * k, BigInt(n))};
}

bool RestrictionReport::passed() const { return passing() == records.size(); }

std::size_t RestrictionReport::passing() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const DensityRecord& r) {
    return r.passed_junta_bound && r.passed_coeff_bound;
  }));
}

namespace {

struct PreparedFamily {
  std::vector<FourierCoeffs> qhat;
  std::vector<JuntaCertificate> certs;
  std::vector<bool> sup_ok;
};

void check_family(const std::vector<Density>& family, int n, int m, int d) {
  if (d < 1 || d > n) throw ParameterError("restriction needs 1 <= d <= n");
  if (m < 1 || m > n) throw ParameterError("restriction needs 1 <= m <= n");
  for (const auto& q : family)
    if (q.n() != n) throw ParameterError("density has the wrong variable count");
}

PreparedFamily prepare(const std::vector<Density>& family, int n, int m, int d, int t) {
  check_family(family, n, m, d);
  const auto gamma = restriction_gamma(n, m, d, t);
  const Rational bound = pow2(t);
  PreparedFamily p;
  for (const auto& q : family) {
    p.qhat.push_back(fourier_transform(q.fn()));
    p.certs.push_back(chang_junta(p.qhat.back(), Rational(t), d, gamma));
    p.sup_ok.push_back(q.fn().sup_norm() <= bound);
  }
  return p;
}

bool family_size_ok(std::size_t size, int n, int d) {
  // |Q| <= n^{d/2}  <=>  |Q|^2 <= n^d.
  const BigInt q(size);
  return q * q <= ipow(BigInt(n), static_cast<unsigned>(d));
}

RestrictionReport check_prepared(const PreparedFamily& p, std::span<const int> s, int d, int t, int m, int n) {
  if (static_cast<int>(s.size()) != m) throw ParameterError("restriction set must have exactly m coordinates");
  Mask smask = 0;
  for (int v : s) {
    if (v < 0 || v >= n) throw ParameterError("restriction coordinate out of range");
    smask |= Mask{1} << v;
  }
  RestrictionReport rep;
  rep.s.assign(s.begin(), s.end());
  std::sort(rep.s.begin(), rep.s.end());
  rep.n = n;
  rep.m = m;
  rep.d = d;
  rep.t = t;
  rep.gamma = restriction_gamma(n, m, d, t);
  rep.family_size_ok = family_size_ok(p.qhat.size(), n, d);

  std::vector<Mask> alphas;
  for (Mask a = smask; a != 0; a = (a - 1) & smask)
    if (popcount(a) <= d) alphas.push_back(a);

  for (std::size_t i = 0; i < p.qhat.size(); ++i) {
    DensityRecord r;
    r.id = i;
    r.junta_full = p.certs[i].junta;
    Mask jmask = 0;
    for (int v : r.junta_full)
      if ((smask >> v) & 1u) {
        r.junta.push_back(v);
        jmask |= Mask{1} << v;
      }
    r.chang_success = p.certs[i].success;
    r.sup_norm_ok = p.sup_ok[i];
    r.passed_junta_bound = static_cast<int>(r.junta.size()) <= d;
    for (Mask a : alphas) {
      if ((a & ~jmask) == 0) continue;
      const Rational v = abs(p.qhat[i][a]);
      if (v > r.max_bad_coeff) r.max_bad_coeff = v;
    }
    r.passed_coeff_bound = !rep.gamma.exceeded_by(r.max_bad_coeff);
    rep.records.push_back(std::move(r));
  }
  return rep;
}

RestrictionReport search(const PreparedFamily& p, int n, int m, int d, int t, std::size_t max_trials,
                         std::uint64_t seed) {
  if (max_trials == 0) throw ParameterError("max_trials must be positive");
  std::optional<RestrictionReport> best;
  for (std::size_t i = 0; i < max_trials; ++i) {
    const auto s = sample_restriction(n, m, trial_seed(seed, i));
    auto rep = check_prepared(p, s, d, t, m, n);
    rep.seed = seed;
    rep.trials_used = i + 1;
    if (rep.passed()) return rep;
    if (!best || rep.passing() > best->passing()) best = std::move(rep);
  }
  throw RestrictionExhausted("no restriction passed within " + std::to_string(max_trials) + " trials (best: " +
                                 std::to_string(best->passing()) + " of " + std::to_string(best->records.size()) +
                                 " densities)",
                             *best);
}

}  // namespace

std::vector<JuntaCertificate> junta_certificates(const std::vector<Density>& family, int n, int m, int d, int t) {
  return prepare(family, n, m, d, t).certs;
}

RestrictionReport check_restriction(const std::vector<Density>& family, std::span<const int> s, int d, int t, int m,
                                    int n) {
  return check_prepared(prepare(family, n, m, d, t), s, d, t, m, n);
}

RestrictionReport check_restriction(const std::vector<Density>& family, const std::vector<JuntaCertificate>& certs,
                                    std::span<const int> s, int d, int t, int m, int n) {
  check_family(family, n, m, d);
  if (certs.size() != family.size()) throw ParameterError("one junta certificate per density expected");
  PreparedFamily p;
  p.certs = certs;
  const Rational bound = pow2(t);
  for (const auto& q : family) {
    p.qhat.push_back(fourier_transform(q.fn()));
    p.sup_ok.push_back(q.fn().sup_norm() <= bound);
  }
  return check_prepared(p, s, d, t, m, n);
}

RestrictionReport find_good_restriction(const std::vector<Density>& family, int n, int m, int d, int t,
                                        std::size_t max_trials, std::uint64_t seed) {
  return search(prepare(family, n, m, d, t), n, m, d, t, max_trials, seed);
}

RestrictedDecomposition decompose_restricted_density(const Density& q, std::span<const int> s,
                                                     std::span<const int> j) {
  const int n = q.n();
  Mask smask = 0, jmask = 0;
  for (int v : s) {
    if (v < 0 || v >= n) throw ParameterError("coordinate out of range");
    smask |= Mask{1} << v;
  }
  for (int v : j) {
    if (v < 0 || v >= n) throw ParameterError("coordinate out of range");
    jmask |= Mask{1} << v;
  }
  if ((jmask & ~smask) != 0) throw ParameterError("J must be a subset of S");
  const auto qhat = fourier_transform(q.fn());
  RestrictedDecomposition out{MultilinearPoly{n, {}}, MultilinearPoly{n, {}}, Density(average_outside(q.fn(), jmask))};
  for (Mask a = smask;; a = (a - 1) & smask) {
    if (qhat[a] != 0) {
      if ((a & ~jmask) == 0)
        out.junta.coeffs.emplace(a, qhat[a]);
      else
        out.error.coeffs.emplace(a, qhat[a]);
    }
    if (a == 0) break;
  }
  return out;
}

double epsilon_n(int n, int m, int d) {
  return std::pow(m, d) * std::sqrt(static_cast<double>(m) * d * std::log2(static_cast<double>(n))) /
         std::pow(static_cast<double>(n), 0.25);
}

namespace {

BigInt floor_of(const Rational& r) {
  BigInt q = numerator_of(r) / denominator_of(r);
  if (r < 0 && Rational(q) != r) q -= 1;
  return q;
}

BigInt floor_root(const BigInt& x, unsigned k) {
  const BigInt c = ceil_kth_root(x, k);
  return ipow(c, k) == x ? c : BigInt(c - 1);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation("main inequality pipeline: " + what);
}

}  // namespace

MainInequalityReport main_inequality_experiment(const PolyhedralRelaxation& rel, const Instance& inst0, int d,
                                                std::uint64_t seed, std::size_t max_trials) {
  inst0.validate();
  const int n = rel.n;
  const int m = inst0.n;
  if (d < 1) throw ParameterError("level d must be at least 1");
  if (inst0.max_arity() > d)
    throw HypothesisViolation("predicate arity " + std::to_string(inst0.max_arity()) + " exceeds d = " +
                              std::to_string(d));
  if (m < 3 || 4 * m > n)
    throw ParameterError("planting needs 3 <= m <= n/4, got m = " + std::to_string(m) + ", n = " + std::to_string(n));

  MainInequalityReport rep;
  rep.relaxation = rel.name;
  rep.n = n;
  rep.m = m;
  rep.d = d;
  rep.seed = seed;
  rep.t = entropy_budget(n, d);
  rep.slack_count = rel.size();
  rep.size_hypothesis = family_size_ok(rel.size(), n, d);
  const Rational two_t = pow2(rep.t);

  // Slacks normalized to densities; the scale moves into lambda.
  const auto raw = slack_functions(rel);
  std::vector<Rational> scale(raw.size());
  std::vector<std::optional<Density>> dens(raw.size());
  std::vector<FourierCoeffs> qhat(raw.size());
  std::vector<bool> in_qt(raw.size(), false);
  std::vector<Density> family;
  std::vector<std::size_t> family_index;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!raw[i].is_nonnegative())
      throw HypothesisViolation("slack " + std::to_string(i) + " of " + rel.name + " is negative somewhere");
    scale[i] = raw[i].mean();
    if (scale[i] == 0) {
      ++rep.zero_slacks;
      continue;
    }
    auto [q, s] = Density::normalize(raw[i]);
    qhat[i] = fourier_transform(q.fn());
    if (q.fn().sup_norm() <= two_t) {
      in_qt[i] = true;
      family.push_back(q);
      family_index.push_back(i);
    }
    dens[i] = std::move(q);
  }
  rep.q_t_size = family.size();

  PreparedFamily prepared;
  {
    const auto gamma = restriction_gamma(n, m, d, rep.t);
    for (std::size_t f = 0; f < family.size(); ++f) {
      const std::size_t i = family_index[f];
      prepared.qhat.push_back(qhat[i]);
      prepared.certs.push_back(chang_junta(qhat[i], Rational(rep.t), d, gamma));
      prepared.sup_ok.push_back(true);
    }
  }
  rep.restriction = search(prepared, n, m, d, rep.t, max_trials, seed);
  rep.s = rep.restriction.s;
  rep.gamma = rep.restriction.gamma.approx_gamma();

  const Instance inst_s = plant(inst0, rep.s, n);
  const SaResult sa = sa_value(inst0, d);
  const PseudoExpectation pe_s = pe_plant(sa.pe, rep.s, n);
  rep.sa_value = sa.value;
  require(pe_apply(pe_s, instance_polynomial(inst_s)) == sa.value, "planted functional changes the SA value");

  rep.lp_value = lp_value(rel, inst_s);
  rep.lhs = rep.lp_value - rep.sa_value;
  const auto dec = farkas_decompose(rep.lp_value, inst_s, raw);
  require(dec.feasible, "no decomposition at c = L(I_S)");
  rep.lambda0 = dec.lambda0;

  Rational max_gap = 0;  // max_x L(I_S) - I_S(x)
  {
    const BoolFn v = value_function(inst_s);
    for (std::size_t x = 0; x < v.size(); ++x) max_gap = std::max(max_gap, Rational(rep.lp_value - v[x]));
  }

  rep.error_coeff_count = 0;
  rep.sup_norm_bound = 1;
  for (int k = 1; k <= d; ++k) {
    rep.error_coeff_count += Rational(binomial(m, k));
    rep.sup_norm_bound += Rational(binomial(m, k));
  }
  const Rational& big_n = rep.error_coeff_count;
  const Rational& big_b = rep.sup_norm_bound;

  auto apply_coeffs = [&](const FourierCoeffs& c) {
    Rational s = 0;
    for (const auto& [alpha, x] : pe_s.moments) s += c[alpha] * x;
    return s;
  };

  Rational identity_rhs = dec.lambda0;
  Rational lambda_q = 0, lambda_out = 0, error_sum = 0;
  rep.lambda_sum = dec.lambda0;
  std::size_t outside = 0;
  std::vector<std::size_t> record_of(raw.size(), 0);
  for (std::size_t f = 0; f < family_index.size(); ++f) record_of[family_index[f]] = f;
  Mask smask = 0;
  for (int v : rep.s) smask |= Mask{1} << v;

  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!dens[i]) continue;
    const Rational lambda = dec.lambda[i] * scale[i];
    rep.lambda_sum += lambda;
    const Rational pe_q = apply_coeffs(qhat[i]);
    identity_rhs += lambda * pe_q;
    if (!in_qt[i]) {
      ++outside;
      lambda_out += lambda;
      require(abs(pe_q) <= big_b, "|pE_S(q_" + std::to_string(i) + ")| exceeds the sup-norm bound");
      require(lambda * dens[i]->fn().sup_norm() <= max_gap, "lambda_" + std::to_string(i) + " too large");
      continue;
    }
    const DensityRecord& rec = rep.restriction.records[record_of[i]];
    Mask jmask = 0;
    for (int v : rec.junta) jmask |= Mask{1} << v;
    SlackErrorTerm term;
    term.slack = i;
    term.lambda = lambda;
    for (const auto& [alpha, x] : pe_s.moments) {
      if ((alpha & ~smask) != 0) continue;
      if ((alpha & ~jmask) == 0)
        term.pe_junta += qhat[i][alpha] * x;
      else
        term.pe_error += qhat[i][alpha] * x;
    }
    term.cap = big_n * rec.max_bad_coeff;
    require(term.pe_junta + term.pe_error == pe_q, "restricted decomposition of q_" + std::to_string(i) + " is not exact");
    require(term.pe_junta >= 0, "pE_S of the junta part of q_" + std::to_string(i) + " is negative");
    require(abs(term.pe_error) <= term.cap, "error term of q_" + std::to_string(i) + " exceeds its cap");
    lambda_q += lambda;
    error_sum += lambda * term.pe_error;
    rep.error_terms.push_back(std::move(term));
  }
  require(identity_rhs == rep.lhs, "pE_S applied to the decomposition does not reproduce L(I_S) - SA_d(I_0)");

  rep.chain_bound = error_sum - big_b * lambda_out;
  require(rep.lhs >= rep.chain_bound, "lhs below the chain bound");

  // Closed form: -Lq N gamma - G B max(n^{d/2}, #outside) 2^{-t}, with Lq and G
  // the (normally 1) bounds on sum_{Q_t} lambda and on max(L - I).
  const Rational lq = std::max(Rational(1), lambda_q);
  const Rational g = std::max(Rational(1), max_gap);
  const BigInt k(1000000);
  const Rational first_fourth = rpow(lq * big_n * Rational(k), 4) * rep.restriction.gamma.gamma_fourth;
  const BigInt f1 = floor_root(floor_of(first_fourth), 4);
  const Rational coeff = g * big_b / two_t * Rational(k);
  const BigInt nd = ipow(BigInt(n), static_cast<unsigned>(d));
  const BigInt out_count(outside);
  BigInt f2;
  double second_term;
  if (out_count * out_count >= nd) {
    f2 = floor_of(coeff * Rational(out_count));
    second_term = to_double(coeff) * static_cast<double>(outside);
  } else if (d % 2 == 0) {
    f2 = floor_of(coeff * Rational(ipow(BigInt(n), static_cast<unsigned>(d / 2))));
    second_term = to_double(coeff) * std::pow(n, d / 2);
  } else {
    f2 = floor_root(floor_of(coeff * coeff * Rational(nd)), 2);
    second_term = to_double(coeff) * std::pow(static_cast<double>(n), d / 2.0);
  }
  rep.rhs = -Rational(f1 + f2, k);
  rep.rhs_approx = -(to_double(lq * big_n) * rep.restriction.gamma.approx_gamma() + second_term / 1e6);
  require(rep.lhs >= rep.rhs, "lhs = " + to_string(rep.lhs) + " below rhs = " + to_string(rep.rhs));
  rep.holds = true;
  rep.epsilon_n = epsilon_n(n, m, d);
  return rep;
}

}  // namespace liftgap
