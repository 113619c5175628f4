#include "liftgap/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "liftgap/error.hpp"

namespace liftgap::io {

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
  if (j.is_number_unsigned()) return Rational(BigInt(j.get<unsigned long long>()));
  throw MalformedInput("expected a rational as a \"p/q\" string, got " + j.dump());
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1, col = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    const auto pos = what.find("parse error");
    throw ParseError(pos == std::string::npos ? what : what.substr(pos), line, col);
  }
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw MalformedInput(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

Mask parse_mask(const std::string& s) {
  Mask m = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), m);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw MalformedInput("bad bitmask key \"" + s + "\"");
  return m;
}

}  // namespace

Json to_json(const BoolFn& f) {
  Json values = Json::array();
  for (const auto& v : f.values()) values.push_back(to_string(v));
  return Json{{"n", f.n()}, {"values", values}};
}

BoolFn boolfn_from_json(const Json& j) {
  const int n = int_field(j, "n");
  if (n < 0 || n > 30) throw MalformedInput("n out of range");
  const Json& values = field(j, "values");
  if (!values.is_array()) throw MalformedInput("\"values\" must be an array");
  if (values.size() != (std::size_t{1} << n))
    throw MalformedInput("\"values\" has " + std::to_string(values.size()) + " entries, expected 2^" + std::to_string(n));
  std::vector<Rational> v;
  v.reserve(values.size());
  for (const auto& x : values) v.push_back(rational_from_json(x));
  return BoolFn(n, std::move(v));
}

std::vector<Density> densities_from_json(const Json& j) {
  const Json& list = j.is_array() ? j : field(j, "densities");
  if (!list.is_array()) throw MalformedInput("\"densities\" must be an array");
  std::vector<Density> out;
  for (const auto& item : list) out.emplace_back(boolfn_from_json(item));
  return out;
}

Json to_json(const PseudoExpectation& pe) {
  Json moments = Json::object();
  moments["0"] = to_string(pe.moment(0));
  for (const auto& [alpha, v] : pe.moments) moments[std::to_string(alpha)] = to_string(v);
  return Json{{"n", pe.n}, {"d", pe.d}, {"moments", moments}};
}

PseudoExpectation pseudo_expectation_from_json(const Json& j) {
  PseudoExpectation pe;
  pe.n = int_field(j, "n");
  pe.d = int_field(j, "d");
  if (pe.n < 1 || pe.n > 30 || pe.d < 0) throw MalformedInput("n or d out of range");
  const Json& moments = field(j, "moments");
  if (!moments.is_object()) throw MalformedInput("\"moments\" must be an object");
  if (!moments.contains("0")) throw MalformedInput("moment of the empty set (key \"0\") is mandatory");
  for (const auto& [key, value] : moments.items()) {
    const Mask alpha = parse_mask(key);
    if (alpha >= (Mask{1} << pe.n)) throw MalformedInput("moment key " + key + " out of range");
    const Rational v = rational_from_json(value);
    if (alpha == 0 && v != 1) throw MalformedInput("moment of the empty set must be 1");
    pe.moments[alpha] = v;
  }
  return pe;
}

std::string edge_monomial_key(int n, EdgeMonomial m) {
  const auto pairs = all_pairs(n);
  std::string key;
  for (int e : coords_of(m)) {
    if (!key.empty()) key += ',';
    key += std::to_string(pairs.at(e).first + 1) + "-" + std::to_string(pairs.at(e).second + 1);
  }
  return key;
}

EdgeMonomial edge_monomial_from_key(int n, std::string_view key) {
  EdgeMonomial m = 0;
  std::size_t pos = 0;
  while (pos < key.size()) {
    std::size_t end = key.find(',', pos);
    if (end == std::string_view::npos) end = key.size();
    const std::string_view item = key.substr(pos, end - pos);
    const auto dash = item.find('-');
    int i = 0, j = 0;
    if (dash == std::string_view::npos ||
        std::from_chars(item.data(), item.data() + dash, i).ptr != item.data() + dash ||
        std::from_chars(item.data() + dash + 1, item.data() + item.size(), j).ptr != item.data() + item.size())
      throw MalformedInput("bad edge monomial key \"" + std::string(key) + "\"");
    if (i < 1 || j < 1 || i > n || j > n || i == j) throw MalformedInput("edge out of range in \"" + std::string(key) + "\"");
    m |= Mask{1} << pair_index(n, i - 1, j - 1);
    pos = end + 1;
  }
  return m;
}

Json to_json(const EdgeFunctional& pe) {
  Json moments = Json::object();
  moments[""] = "1";
  for (const auto& [m, v] : pe.moments) moments[edge_monomial_key(pe.n, m)] = to_string(v);
  return Json{{"n", pe.n}, {"r", pe.r}, {"moments", moments}};
}

EdgeFunctional edge_functional_from_json(const Json& j) {
  EdgeFunctional pe;
  pe.n = int_field(j, "n");
  pe.r = int_field(j, "r");
  if (pe.n < 3 || pe.n > 11 || pe.r < 0) throw MalformedInput("n or r out of range");
  const Json& moments = field(j, "moments");
  if (!moments.is_object()) throw MalformedInput("\"moments\" must be an object");
  for (const auto& [key, value] : moments.items()) {
    const EdgeMonomial m = edge_monomial_from_key(pe.n, key);
    const Rational v = rational_from_json(value);
    if (m == 0) {
      if (v != 1) throw MalformedInput("moment of the empty monomial must be 1");
      continue;
    }
    if (popcount(m) > pe.r + 1) throw MalformedInput("monomial \"" + key + "\" exceeds degree r + 1");
    if (v != 0) pe.moments[m] = v;
  }
  return pe;
}

Json to_json(const PolyhedralRelaxation& rel) {
  Json ineq = Json::array();
  for (std::size_t i = 0; i < rel.size(); ++i) {
    Json a = Json::array();
    for (const auto& v : rel.a[i]) a.push_back(to_string(v));
    ineq.push_back(Json{{"a", a}, {"b", to_string(rel.b[i])}});
  }
  Json j{{"name", rel.name}, {"n", rel.n}, {"inequalities", ineq}};
  if (rel.kind == PolyhedralRelaxation::Kind::Metric) {
    j["kind"] = "metric";
  } else {
    j["kind"] = "fourier";
    Json basis = Json::array();
    for (Mask m : rel.basis) basis.push_back(std::to_string(m));
    j["basis"] = basis;
  }
  return j;
}

PolyhedralRelaxation relaxation_from_json(const Json& j) {
  const std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "fourier";
  const int n = int_field(j, "n");
  if (kind == "metric" && !j.contains("inequalities")) return metric_maxcut(n);
  PolyhedralRelaxation rel;
  rel.n = n;
  rel.name = j.contains("name") ? j.at("name").get<std::string>() : "file";
  if (kind == "metric") {
    rel.kind = PolyhedralRelaxation::Kind::Metric;
  } else if (kind == "fourier") {
    rel.kind = PolyhedralRelaxation::Kind::Fourier;
    const Json& basis = field(j, "basis");
    if (!basis.is_array()) throw MalformedInput("\"basis\" must be an array");
    for (const auto& b : basis) rel.basis.push_back(b.is_string() ? parse_mask(b.get<std::string>()) : b.get<Mask>());
  } else {
    throw MalformedInput("unknown relaxation kind \"" + kind + "\"");
  }
  const Json& ineq = field(j, "inequalities");
  if (!ineq.is_array()) throw MalformedInput("\"inequalities\" must be an array");
  for (const auto& row : ineq) {
    const Json& a = field(row, "a");
    if (!a.is_array()) throw MalformedInput("inequality \"a\" must be an array");
    std::vector<Rational> coeffs;
    for (const auto& v : a) coeffs.push_back(rational_from_json(v));
    rel.a.push_back(std::move(coeffs));
    rel.b.push_back(rational_from_json(field(row, "b")));
  }
  rel.validate();
  return rel;
}

Json to_json(const LefReport& r) {
  return Json{{"passed", r.passed},
              {"failed", r.failed},
              {"detail", r.detail},
              {"min_indicator", to_string(r.min_indicator)},
              {"max_abs_moment", to_string(r.max_abs_moment)},
              {"l1_norm", to_string(r.l1_norm)},
              {"l1_bound", to_string(r.l1_bound)}};
}

Json to_json(const EdgeFeasibility& r) {
  return Json{{"feasible", r.feasible},
              {"rows_checked", r.rows_checked},
              {"min_value", to_string(r.min_value)},
              {"worst_row", r.worst_row}};
}

namespace {

Json one_based(const std::vector<int>& coords) {
  Json a = Json::array();
  for (int c : coords) a.push_back(c + 1);
  return a;
}

Json mask_list(const std::vector<std::pair<Mask, Rational>>& list) {
  Json a = Json::array();
  for (const auto& [m, v] : list) a.push_back(Json{{"alpha", one_based(coords_of(m))}, {"coeff", to_string(v)}});
  return a;
}

}  // namespace

Json to_json(const JuntaCertificate& c) {
  return Json{{"junta", one_based(c.junta)},
              {"d", c.d},
              {"gamma_fourth", to_string(c.gamma.gamma_fourth)},
              {"gamma", format_real(c.gamma.approx_gamma())},
              {"t", to_string(c.t)},
              {"large", mask_list(c.large)},
              {"selected", mask_list(c.selected)},
              {"violations", mask_list(c.violations)},
              {"success", c.success}};
}

Json to_json(const RestrictionReport& r) {
  Json records = Json::array();
  for (const auto& d : r.records)
    records.push_back(Json{{"id", d.id},
                           {"junta_full", one_based(d.junta_full)},
                           {"junta", one_based(d.junta)},
                           {"max_bad_coeff", to_string(d.max_bad_coeff)},
                           {"passed_junta_bound", d.passed_junta_bound},
                           {"passed_coeff_bound", d.passed_coeff_bound},
                           {"chang_success", d.chang_success},
                           {"sup_norm_ok", d.sup_norm_ok}});
  return Json{{"S", one_based(r.s)},
              {"n", r.n},
              {"m", r.m},
              {"d", r.d},
              {"t", r.t},
              {"gamma_fourth", to_string(r.gamma.gamma_fourth)},
              {"gamma", format_real(r.gamma.approx_gamma())},
              {"seed", r.seed},
              {"trials_used", r.trials_used},
              {"family_size_ok", r.family_size_ok},
              {"passed", r.passed()},
              {"records", records}};
}

Json to_json(const MainInequalityReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.error_terms) {
    if (t.lambda == 0) continue;
    terms.push_back(Json{{"slack", t.slack},
                         {"lambda", to_string(t.lambda)},
                         {"pe_junta", to_string(t.pe_junta)},
                         {"pe_error", to_string(t.pe_error)},
                         {"cap", to_string(t.cap)}});
  }
  Json restriction = to_json(r.restriction);
  restriction.erase("records");
  return Json{{"relaxation", r.relaxation},
              {"n", r.n},
              {"m", r.m},
              {"d", r.d},
              {"t", r.t},
              {"seed", r.seed},
              {"S", one_based(r.s)},
              {"slack_count", r.slack_count},
              {"zero_slacks", r.zero_slacks},
              {"q_t_size", r.q_t_size},
              {"size_hypothesis", r.size_hypothesis},
              {"lp_value", to_string(r.lp_value)},
              {"sa_value", to_string(r.sa_value)},
              {"lhs", to_string(r.lhs)},
              {"lambda0", to_string(r.lambda0)},
              {"lambda_sum", to_string(r.lambda_sum)},
              {"chain_bound", to_string(r.chain_bound)},
              {"rhs", to_string(r.rhs)},
              {"rhs_approx", format_real(r.rhs_approx)},
              {"error_coeff_count", to_string(r.error_coeff_count)},
              {"sup_norm_bound", to_string(r.sup_norm_bound)},
              {"gamma", format_real(r.gamma)},
              {"epsilon_n", format_real(r.epsilon_n)},
              {"restriction", restriction},
              {"error_terms", terms},
              {"holds", r.holds}};
}

Json to_json(const SymmetricCheckReport& r) {
  Json j{{"m", r.m},
         {"n", r.n},
         {"d", r.d},
         {"c", to_string(r.c)},
         {"sa_value", to_string(r.sa_value)},
         {"closure",
          Json{{"closed", r.closure.closed},
               {"full_group", r.closure.full_group},
               {"permutations_checked", r.closure.permutations_checked},
               {"detail", r.closure.detail}}},
         {"feasible", r.feasible},
         {"slack_count", r.slack_count},
         {"junta_slacks", r.junta_slacks},
         {"all_juntas", r.all_juntas},
         {"pe_nonnegative", r.pe_nonnegative},
         {"pe_gap", to_string(r.pe_gap)},
         {"contradiction", r.contradiction},
         {"consistent", r.consistent}};
  if (r.pe_combination) j["pe_combination"] = to_string(*r.pe_combination);
  return j;
}

Json to_json(const SymmetricStructure& s) {
  Json table = Json::array();
  for (const auto& [key, v] : s.table)
    table.push_back(Json{{"assignment", key.first}, {"level", key.second}, {"value", to_string(v)}});
  return Json{{"found", s.found}, {"J", one_based(s.j)}, {"table", table}};
}

std::string matrix_csv(const RationalMatrix& m, const std::vector<Mask>& cols) {
  std::vector<std::string> header;
  for (Mask x : cols) header.push_back(std::to_string(x));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m.size(); ++i) labels.push_back(std::to_string(i));
  return matrix_csv(m, header, labels);
}

std::string matrix_csv(const RationalMatrix& m, const std::vector<std::string>& header,
                       const std::vector<std::string>& row_labels) {
  std::ostringstream out;
  out << "row";
  for (const auto& h : header) out << ',' << h;
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << (i < row_labels.size() ? row_labels[i] : std::to_string(i));
    for (const auto& v : m[i]) out << ',' << to_string(v);
    out << '\n';
  }
  return out.str();
}

RationalMatrix matrix_from_csv(std::string_view text) {
  RationalMatrix out;
  std::size_t pos = 0;
  int line = 0;
  std::size_t width = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    pos = end + 1;
    ++line;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (row.empty()) continue;
    std::vector<std::string_view> cells;
    std::size_t p = 0;
    while (true) {
      const std::size_t c = row.find(',', p);
      cells.push_back(row.substr(p, c == std::string_view::npos ? std::string_view::npos : c - p));
      if (c == std::string_view::npos) break;
      p = c + 1;
    }
    if (line == 1) {
      width = cells.size();
      continue;
    }
    if (cells.size() != width) throw ParseError("row has " + std::to_string(cells.size()) + " cells, header has " +
                                                    std::to_string(width), line, 1);
    std::vector<Rational> values;
    for (std::size_t k = 1; k < cells.size(); ++k) {
      try {
        values.push_back(parse_rational(cells[k]));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line, 1);
      }
    }
    out.push_back(std::move(values));
  }
  return out;
}

Json to_json(const RunManifest& m) {
  Json inputs = Json::array();
  for (const auto& d : m.inputs) inputs.push_back(Json{{"name", d.name}, {"sha256", d.sha256}});
  Json j{{"command", m.command},
         {"parameters", m.parameters},
         {"inputs", inputs},
         {"version", m.version},
         {"outputs", m.outputs}};
  j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
  return j;
}

}  // namespace liftgap::io
