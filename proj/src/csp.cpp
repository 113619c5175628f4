#include "liftgap/csp.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "liftgap/caps.hpp"
#include "liftgap/error.hpp"
#include "liftgap/kernels.hpp"
#include "liftgap/random.hpp"

namespace liftgap {

Predicate neq_predicate() { return Predicate{2, 0b0110, "neq"}; }

Predicate clause_predicate(unsigned negations) {
  negations &= 7u;
  std::string name = "or";
  for (int j = 0; j < 3; ++j) name += ((negations >> j) & 1u) ? '-' : '+';
  return Predicate{3, static_cast<std::uint16_t>(0xFFu & ~(1u << negations)), name};
}

int Instance::max_arity() const {
  int k = 0;
  for (const auto& c : constraints) k = std::max(k, static_cast<int>(c.vars.size()));
  return k;
}

void Instance::validate() const {
  if (n < 1) throw MalformedInput("instance needs at least one variable");
  if (constraints.empty()) throw MalformedInput("instance has no constraints");
  for (const auto& p : family)
    if (p.arity < 1 || p.arity > 4) throw MalformedInput("predicate arity must be 1..4");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    if (c.predicate < 0 || c.predicate >= static_cast<int>(family.size()))
      throw MalformedInput("constraint " + std::to_string(i) + " names an unknown predicate");
    if (static_cast<int>(c.vars.size()) != family[c.predicate].arity)
      throw MalformedInput("constraint " + std::to_string(i) + " has the wrong arity");
    for (std::size_t a = 0; a < c.vars.size(); ++a) {
      if (c.vars[a] < 0 || c.vars[a] >= n)
        throw MalformedInput("constraint " + std::to_string(i) + " variable out of range");
      for (std::size_t b = 0; b < a; ++b)
        if (c.vars[a] == c.vars[b])
          throw MalformedInput("constraint " + std::to_string(i) + " repeats a variable");
    }
  }
}

namespace {

unsigned pattern(const Constraint& c, Mask x) {
  unsigned idx = 0;
  for (std::size_t j = 0; j < c.vars.size(); ++j) idx |= static_cast<unsigned>((x >> c.vars[j]) & 1u) << j;
  return idx;
}

void check_brute_force_size(int n) {
  const int cap = SizeCaps::current().brute_force_max_n;
  if (n > cap)
    throw SizeCapExceeded("exhaustive enumeration over " + std::to_string(n) + " variables exceeds cap " +
                          std::to_string(cap));
  if (n > 30) throw SizeCapExceeded("exhaustive enumeration is limited to 30 variables");
}

}  // namespace

std::size_t satisfied_count(const Instance& inst, Mask x) {
  std::size_t count = 0;
  for (const auto& c : inst.constraints)
    if (inst.family[c.predicate].eval(pattern(c, x))) ++count;
  return count;
}

Rational evaluate(const Instance& inst, Mask x) {
  return Rational(BigInt(satisfied_count(inst, x)), BigInt(inst.m()));
}

Rational evaluate(const Instance& inst, std::span<const int> x) {
  if (static_cast<int>(x.size()) != inst.n)
    throw MalformedInput("assignment has " + std::to_string(x.size()) + " entries, instance has " +
                         std::to_string(inst.n) + " variables");
  Mask idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == -1)
      idx |= Mask{1} << i;
    else if (x[i] != 1)
      throw MalformedInput("assignment entries must be +1 or -1");
  }
  return evaluate(inst, idx);
}

std::vector<std::uint32_t> satisfied_table(const Instance& inst) {
  inst.validate();
  check_brute_force_size(inst.n);
  std::vector<kernels::PackedConstraint> packed;
  packed.reserve(inst.m());
  for (const auto& c : inst.constraints) {
    kernels::PackedConstraint p;
    p.arity = static_cast<std::uint8_t>(c.vars.size());
    for (std::size_t j = 0; j < c.vars.size(); ++j) p.vars[j] = static_cast<std::uint8_t>(c.vars[j]);
    p.table = inst.family[c.predicate].table;
    packed.push_back(p);
  }
  std::vector<std::uint32_t> counts(std::size_t{1} << inst.n, 0);
  constexpr std::size_t kChunk = 1u << 12;
  for (std::size_t first = 0; first < counts.size(); first += kChunk) {
    const std::size_t len = std::min(kChunk, counts.size() - first);
    kernels::count_satisfied(packed, static_cast<std::uint32_t>(first),
                             std::span<std::uint32_t>(counts.data() + first, len));
  }
  return counts;
}

BoolFn value_function(const Instance& inst) {
  const auto counts = satisfied_table(inst);
  std::vector<Rational> values(counts.size());
  const BigInt m(inst.m());
  for (std::size_t x = 0; x < counts.size(); ++x) values[x] = Rational(BigInt(counts[x]), m);
  return BoolFn(inst.n, std::move(values));
}

OptResult brute_force_opt(const Instance& inst) {
  const auto counts = satisfied_table(inst);
  const auto best = std::max_element(counts.begin(), counts.end());
  OptResult r;
  r.witness = static_cast<Mask>(best - counts.begin());
  r.value = Rational(BigInt(*best), BigInt(inst.m()));
  return r;
}

std::string format_assignment(int n, Mask x) {
  std::string s(n, '+');
  for (int i = 0; i < n; ++i)
    if ((x >> i) & 1u) s[i] = '-';
  return s;
}

Mask parse_assignment(std::string_view text) {
  if (text.size() > 64) throw MalformedInput("assignment longer than 64 variables");
  Mask x = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '-')
      x |= Mask{1} << i;
    else if (text[i] != '+')
      throw MalformedInput("assignment must consist of '+' and '-'");
  }
  return x;
}

int MultilinearPoly::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : coeffs) d = std::max(d, popcount(alpha));
  return d;
}

Rational MultilinearPoly::coeff(Mask alpha) const {
  const auto it = coeffs.find(alpha);
  return it == coeffs.end() ? Rational(0) : it->second;
}

void MultilinearPoly::add(Mask alpha, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

Rational MultilinearPoly::evaluate(Mask x) const {
  Rational s = 0;
  for (const auto& [alpha, c] : coeffs) s += character_sign(alpha, x) == 1 ? c : Rational(-c);
  return s;
}

BoolFn MultilinearPoly::to_boolfn() const {
  FourierCoeffs f{n, std::vector<Rational>(std::size_t{1} << n, Rational(0))};
  for (const auto& [alpha, c] : coeffs) f.coeffs[alpha] = c;
  return inverse_fourier_transform(f);
}

MultilinearPoly MultilinearPoly::from_fourier(const FourierCoeffs& c) {
  MultilinearPoly p;
  p.n = c.n;
  for (std::size_t a = 0; a < c.coeffs.size(); ++a)
    if (c.coeffs[a] != 0) p.coeffs.emplace(a, c.coeffs[a]);
  return p;
}

Rational dot(const MultilinearPoly& a, const MultilinearPoly& b) {
  const auto& small = a.coeffs.size() <= b.coeffs.size() ? a : b;
  const auto& large = a.coeffs.size() <= b.coeffs.size() ? b : a;
  Rational s = 0;
  for (const auto& [alpha, c] : small.coeffs) {
    const auto it = large.coeffs.find(alpha);
    if (it != large.coeffs.end()) s += c * it->second;
  }
  return s;
}

MultilinearPoly instance_polynomial(const Instance& inst) {
  inst.validate();
  MultilinearPoly p;
  p.n = inst.n;
  const Rational inv_m(BigInt(1), BigInt(inst.m()));
  for (const auto& c : inst.constraints) {
    const auto& pred = inst.family[c.predicate];
    const int k = pred.arity;
    const Rational scale = inv_m / Rational(BigInt(1) << k);
    for (unsigned beta = 0; beta < (1u << k); ++beta) {
      int sum = 0;
      for (unsigned idx = 0; idx < (1u << k); ++idx)
        if (pred.eval(idx)) sum += character_sign(beta, idx);
      if (sum == 0) continue;
      Mask alpha = 0;
      for (int j = 0; j < k; ++j)
        if ((beta >> j) & 1u) alpha |= Mask{1} << c.vars[j];
      p.add(alpha, Rational(sum) * scale);
    }
  }
  return p;
}

MultilinearPoly assignment_point(int n, int d, Mask x) {
  MultilinearPoly p;
  p.n = n;
  if (n > 30) throw SizeCapExceeded("assignment_point is limited to 30 variables");
  for (Mask alpha = 0; alpha < (Mask{1} << n); ++alpha)
    if (popcount(alpha) <= d) p.coeffs.emplace(alpha, Rational(character_sign(alpha, x)));
  return p;
}

Instance plant(const Instance& inst0, std::span<const int> s, int n) {
  if (static_cast<int>(s.size()) != inst0.n)
    throw ParameterError("planting set has " + std::to_string(s.size()) + " coordinates, instance has " +
                         std::to_string(inst0.n) + " variables");
  std::set<int> seen;
  for (int v : s) {
    if (v < 0 || v >= n) throw ParameterError("planting coordinate out of range");
    if (!seen.insert(v).second) throw ParameterError("planting coordinates must be distinct");
  }
  Instance out = inst0;
  out.n = n;
  for (auto& c : out.constraints)
    for (auto& v : c.vars) v = s[v];
  return out;
}

Instance dummy_extend(const Instance& inst) {
  Instance out = inst;
  out.n = 2 * inst.n;
  return out;
}

Instance maxcut_instance(int n, const std::vector<std::pair<int, int>>& edges) {
  Instance inst;
  inst.n = n;
  inst.family = {neq_predicate()};
  for (auto [u, v] : edges) inst.constraints.push_back(Constraint{0, {std::min(u, v), std::max(u, v)}});
  inst.validate();
  return inst;
}

bool is_maxcut(const Instance& inst) {
  const Predicate neq = neq_predicate();
  return std::all_of(inst.constraints.begin(), inst.constraints.end(), [&](const Constraint& c) {
    const auto& p = inst.family[c.predicate];
    return p.arity == 2 && p.table == neq.table;
  });
}

std::vector<std::pair<int, int>> edges_of(const Instance& inst) {
  if (!is_maxcut(inst)) throw ParameterError("not a Max Cut instance");
  std::vector<std::pair<int, int>> edges;
  for (const auto& c : inst.constraints)
    edges.emplace_back(std::min(c.vars[0], c.vars[1]), std::max(c.vars[0], c.vars[1]));
  return edges;
}

Instance cycle_graph(int n) {
  if (n < 3) throw ParameterError("cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return maxcut_instance(n, edges);
}

Instance complete_graph(int n) {
  if (n < 2) throw ParameterError("complete graph needs at least 2 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return maxcut_instance(n, edges);
}

Instance random_graph(int n, const Rational& p, std::uint64_t seed) {
  if (n < 2) throw ParameterError("random graph needs at least 2 vertices");
  if (p < 0 || p > 1) throw ParameterError("edge probability must lie in [0, 1]");
  const BigInt num = numerator_of(p);
  const BigInt den = denominator_of(p);
  if (den > BigInt(~std::uint64_t{0})) throw ParameterError("edge probability denominator too large");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (bernoulli(rng, num.convert_to<std::uint64_t>(), den.convert_to<std::uint64_t>())) edges.emplace_back(i, j);
  if (edges.empty()) throw ParameterError("random graph drew no edges for seed " + std::to_string(seed));
  return maxcut_instance(n, edges);
}

namespace {

std::vector<Predicate> clause_family() {
  std::vector<Predicate> f;
  for (unsigned s = 0; s < 8; ++s) f.push_back(clause_predicate(s));
  return f;
}

}  // namespace

Instance random_3sat(int n, int m, std::uint64_t seed) {
  if (n < 3) throw ParameterError("3-SAT needs at least 3 variables");
  if (m < 1) throw ParameterError("3-SAT needs at least one clause");
  Rng rng(seed);
  Instance inst;
  inst.n = n;
  inst.family = clause_family();
  for (int i = 0; i < m; ++i) {
    std::vector<int> vars;
    while (vars.size() < 3) {
      const int v = static_cast<int>(uniform_below(rng, n));
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::sort(vars.begin(), vars.end());
    const int signs = static_cast<int>(uniform_below(rng, 8));
    inst.constraints.push_back(Constraint{signs, vars});
  }
  inst.validate();
  return inst;
}

std::vector<Instance> all_maxcut_instances(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  if (pairs.size() > 20) throw SizeCapExceeded("too many graphs to enumerate");
  std::vector<Instance> out;
  for (std::uint32_t subset = 1; subset < (1u << pairs.size()); ++subset) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t e = 0; e < pairs.size(); ++e)
      if ((subset >> e) & 1u) edges.push_back(pairs[e]);
    out.push_back(maxcut_instance(n, edges));
  }
  return out;
}

namespace {

// Whitespace-separated tokens with 1-based positions.
struct Token {
  std::string_view text;
  int line = 0;
  int column = 0;
};

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  // Skips `c` comment lines when dimacs is set.
  bool next(Token& tok, bool dimacs = false) {
    for (;;) {
      while (pos_ < text_.size() && is_space(text_[pos_])) advance();
      if (pos_ >= text_.size()) return false;
      if (dimacs && column_ == 1 && text_[pos_] == 'c' &&
          (pos_ + 1 >= text_.size() || is_space(text_[pos_ + 1]))) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      break;
    }
    tok.line = line_;
    tok.column = column_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) advance();
    tok.text = text_.substr(start, pos_ - start);
    return true;
  }

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

long long parse_int(const Token& tok, const char* what) {
  long long v = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (!tok.text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw ParseError(std::string("expected ") + what + ", got '" + std::string(tok.text) + "'", tok.line,
                     tok.column);
  return v;
}

Token expect(Tokenizer& t, const char* what, bool dimacs = false) {
  Token tok;
  if (!t.next(tok, dimacs)) throw ParseError(std::string("unexpected end of input, expected ") + what, t.line(), t.column());
  return tok;
}

}  // namespace

Instance parse_edge_list(std::string_view text) {
  Tokenizer t(text);
  const Token tn = expect(t, "vertex count");
  const long long n = parse_int(tn, "vertex count");
  if (n < 2 || n > 64) throw ParseError("vertex count must be in 2..64", tn.line, tn.column);
  const Token tm = expect(t, "edge count");
  const long long m = parse_int(tm, "edge count");
  if (m < 1) throw ParseError("edge count must be positive", tm.line, tm.column);
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> edges;
  for (long long e = 0; e < m; ++e) {
    const Token tu = expect(t, "edge endpoint");
    const long long u = parse_int(tu, "edge endpoint");
    const Token tv = expect(t, "edge endpoint");
    const long long v = parse_int(tv, "edge endpoint");
    if (u < 1 || u > n) throw ParseError("vertex out of range", tu.line, tu.column);
    if (v < 1 || v > n) throw ParseError("vertex out of range", tv.line, tv.column);
    if (u == v) throw ParseError("self-loop", tu.line, tu.column);
    const std::pair<int, int> key(static_cast<int>(std::min(u, v)) - 1, static_cast<int>(std::max(u, v)) - 1);
    if (!seen.insert(key).second) throw ParseError("duplicate edge", tu.line, tu.column);
    edges.push_back(key);
  }
  Token extra;
  if (t.next(extra)) throw ParseError("trailing data after the last edge", extra.line, extra.column);
  return maxcut_instance(static_cast<int>(n), edges);
}

Instance parse_dimacs_cnf(std::string_view text) {
  Tokenizer t(text);
  const Token p = expect(t, "'p cnf' header", true);
  if (p.text != "p") throw ParseError("expected 'p cnf' header", p.line, p.column);
  const Token cnf = expect(t, "'cnf'", true);
  if (cnf.text != "cnf") throw ParseError("expected 'cnf'", cnf.line, cnf.column);
  const Token tn = expect(t, "variable count", true);
  const long long n = parse_int(tn, "variable count");
  if (n < 3 || n > 64) throw ParseError("variable count must be in 3..64", tn.line, tn.column);
  const Token tm = expect(t, "clause count", true);
  const long long m = parse_int(tm, "clause count");
  if (m < 1) throw ParseError("clause count must be positive", tm.line, tm.column);

  Instance inst;
  inst.n = static_cast<int>(n);
  inst.family = clause_family();
  Token tok;
  while (t.next(tok, true)) {
    if (tok.text == "%") break;
    if (static_cast<long long>(inst.constraints.size()) == m)
      throw ParseError("more clauses than declared", tok.line, tok.column);
    std::vector<int> vars;
    unsigned signs = 0;
    const Token first = tok;
    for (;;) {
      const long long lit = parse_int(tok, "literal");
      if (lit == 0) break;
      if (vars.size() == 3) throw ParseError("clause has more than 3 literals", tok.line, tok.column);
      const long long v = lit < 0 ? -lit : lit;
      if (v > n) throw ParseError("variable out of range", tok.line, tok.column);
      const int idx = static_cast<int>(v) - 1;
      if (std::find(vars.begin(), vars.end(), idx) != vars.end())
        throw ParseError("clause repeats a variable", tok.line, tok.column);
      if (lit < 0) signs |= 1u << vars.size();
      vars.push_back(idx);
      tok = expect(t, "literal or 0", true);
    }
    if (vars.size() != 3) throw ParseError("clause must have exactly 3 literals", first.line, first.column);
    inst.constraints.push_back(Constraint{static_cast<int>(signs), vars});
  }
  if (static_cast<long long>(inst.constraints.size()) != m)
    throw ParseError("declared " + std::to_string(m) + " clauses, found " + std::to_string(inst.constraints.size()),
                     t.line(), t.column());
  inst.validate();
  return inst;
}

Instance parse_instance(std::string_view text) {
  Tokenizer t(text);
  Token tok;
  if (t.next(tok, true) && tok.text == "p") return parse_dimacs_cnf(text);
  return parse_edge_list(text);
}

std::string write_edge_list(const Instance& inst) {
  const auto edges = edges_of(inst);
  std::ostringstream out;
  out << inst.n << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << (u + 1) << ' ' << (v + 1) << '\n';
  return out.str();
}

std::string write_dimacs_cnf(const Instance& inst) {
  const auto family = clause_family();
  std::ostringstream out;
  out << "p cnf " << inst.n << ' ' << inst.m() << '\n';
  for (const auto& c : inst.constraints) {
    const auto& pred = inst.family[c.predicate];
    const auto it = std::find_if(family.begin(), family.end(),
                                 [&](const Predicate& p) { return p.arity == pred.arity && p.table == pred.table; });
    if (it == family.end()) throw ParameterError("constraint is not a 3-literal clause");
    const unsigned signs = static_cast<unsigned>(it - family.begin());
    for (std::size_t j = 0; j < 3; ++j) {
      const int lit = c.vars[j] + 1;
      out << (((signs >> j) & 1u) ? -lit : lit) << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

std::string write_instance(const Instance& inst) {
  return is_maxcut(inst) ? write_edge_list(inst) : write_dimacs_cnf(inst);
}

}  // namespace liftgap
