#include <algorithm>

#include "liftgap/caps.hpp"
#include "liftgap/error.hpp"
#include "liftgap/slack.hpp"

namespace liftgap {

namespace {

void check_protocol_args(const Rational& p, int t) {
  if (t < 1) throw ParameterError("sample count T must be at least 1");
  if (p < 0 || p > 1) throw ParameterError("cut fraction must lie in [0, 1]");
}

// C(T,k) p^k (1-p)^(T-k).
Rational binomial_mass(const Rational& p, int t, int k) {
  return Rational(binomial(t, k)) * rpow(p, k) * rpow(Rational(1) - p, t - k);
}

}  // namespace

Rational protocol_expected_output(const Rational& p, const Rational& c, int t) {
  check_protocol_args(p, t);
  Rational s = 0;
  for (int k = 0; k <= t; ++k) {
    const Rational theta(k, t);
    if (theta > c) break;
    s += (c - theta) * binomial_mass(p, t, k);
  }
  return s;
}

Rational protocol_expected_excess(const Rational& p, const Rational& c, int t) {
  check_protocol_args(p, t);
  Rational s = 0;
  for (int k = 0; k <= t; ++k) {
    const Rational theta(k, t);
    if (theta > c) s += (theta - c) * binomial_mass(p, t, k);
  }
  return s;
}

Rational protocol_tail(const Rational& p, const Rational& c, int t) {
  check_protocol_args(p, t);
  Rational s = 0;
  for (int k = 0; k <= t; ++k)
    if (Rational(k, t) > c) s += binomial_mass(p, t, k);
  return s;
}

RationalMatrix protocol_matrix(const SlackMatrix& m, int t) {
  RationalMatrix out;
  out.reserve(m.rows.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    if (!is_maxcut(m.rows[r])) throw ParameterError("row " + std::to_string(r) + " is not a Max Cut instance");
    std::vector<Rational> row;
    row.reserve(m.cols.size());
    for (Mask x : m.cols) row.push_back(protocol_expected_output(evaluate(m.rows[r], x), m.c, t));
    out.push_back(std::move(row));
  }
  return out;
}

ProtocolFactorization protocol_factorization(const SlackMatrix& m, int t) {
  if (t < 1) throw ParameterError("sample count T must be at least 1");
  ProtocolFactorization f;
  f.t = t;
  std::vector<std::vector<std::pair<int, int>>> row_edges;
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    if (!is_maxcut(m.rows[r])) throw ParameterError("row " + std::to_string(r) + " is not a Max Cut instance");
    row_edges.push_back(edges_of(m.rows[r]));
    f.edges.insert(f.edges.end(), row_edges.back().begin(), row_edges.back().end());
  }
  std::sort(f.edges.begin(), f.edges.end());
  f.edges.erase(std::unique(f.edges.begin(), f.edges.end()), f.edges.end());

  const std::size_t cap = SizeCaps::current().message_space;
  const std::size_t e = f.edges.size();
  std::size_t count = 1;
  for (int i = 0; i < t; ++i) {
    if (count > cap / e) throw SizeCapExceeded("message space " + std::to_string(e) + "^" + std::to_string(t) +
                                               " exceeds cap " + std::to_string(cap));
    count *= e;
  }
  f.messages.reserve(count);
  std::vector<int> msg(t, 0);
  for (std::size_t k = 0; k < count; ++k) {
    f.messages.push_back(msg);
    for (int pos = t - 1; pos >= 0; --pos) {
      if (++msg[pos] < static_cast<int>(e)) break;
      msg[pos] = 0;
    }
  }

  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    std::vector<bool> in_row(e, false);
    for (const auto& edge : row_edges[r])
      in_row[std::lower_bound(f.edges.begin(), f.edges.end(), edge) - f.edges.begin()] = true;
    const Rational w = Rational(1) / rpow(Rational(BigInt(row_edges[r].size())), t);
    std::vector<Rational> row(count, Rational(0));
    for (std::size_t k = 0; k < count; ++k)
      if (std::all_of(f.messages[k].begin(), f.messages[k].end(), [&](int id) { return in_row[id]; })) row[k] = w;
    f.u.push_back(std::move(row));
  }

  for (const auto& message : f.messages) {
    std::vector<Rational> row;
    row.reserve(m.cols.size());
    for (Mask x : m.cols) {
      int cut = 0;
      for (int id : message) cut += static_cast<int>(((x >> f.edges[id].first) ^ (x >> f.edges[id].second)) & 1u);
      const Rational theta(cut, t);
      row.push_back(theta > m.c ? Rational(0) : m.c - theta);
    }
    f.v.push_back(std::move(row));
  }
  return f;
}

}  // namespace liftgap
