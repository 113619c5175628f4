#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "liftgap/boolfn.hpp"
#include "liftgap/csp.hpp"
#include "liftgap/restriction.hpp"
#include "liftgap/sherali_adams.hpp"
#include "liftgap/slack.hpp"

namespace liftgap::io {

/// nlohmann::json keeps object keys in a std::map, so dumps are sorted.
using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.3.1";

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);
/// Floating value as a decimal string with 12 fractional digits.
std::string format_real(double v);

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(std::string_view text);

Json to_json(const BoolFn& f);
BoolFn boolfn_from_json(const Json& j);
/// Either a list of {"n","values"} objects or {"densities": [...]}.
std::vector<Density> densities_from_json(const Json& j);

Json to_json(const PseudoExpectation& pe);
PseudoExpectation pseudo_expectation_from_json(const Json& j);

/// Monomial keys are comma-separated 1-based pairs "i-j" in pair order; the
/// empty monomial is "".
std::string edge_monomial_key(int n, EdgeMonomial m);
EdgeMonomial edge_monomial_from_key(int n, std::string_view key);
Json to_json(const EdgeFunctional& pe);
EdgeFunctional edge_functional_from_json(const Json& j);

/// {"name", "n", "basis": ["<mask>", ...], "inequalities": [{"a": [...], "b": "p/q"}]}
/// or {"kind": "metric", "n": k}.
Json to_json(const PolyhedralRelaxation& rel);
PolyhedralRelaxation relaxation_from_json(const Json& j);

Json to_json(const LefReport& r);
Json to_json(const EdgeFeasibility& r);
Json to_json(const RestrictionReport& r);
Json to_json(const MainInequalityReport& r);
Json to_json(const SymmetricCheckReport& r);
Json to_json(const JuntaCertificate& c);
Json to_json(const SymmetricStructure& s);

/// First column is the row id, header row lists the assignment bitmasks.
std::string matrix_csv(const RationalMatrix& m, const std::vector<Mask>& cols);
/// Generic CSV with the given header labels.
std::string matrix_csv(const RationalMatrix& m, const std::vector<std::string>& header,
                       const std::vector<std::string>& row_labels);
RationalMatrix matrix_from_csv(std::string_view text);

struct InputDigest {
  std::string name;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  std::optional<std::uint64_t> seed;
  std::vector<InputDigest> inputs;
  std::string version = kVersion;
  std::vector<std::string> outputs;
};
Json to_json(const RunManifest& m);

}  // namespace liftgap::io
