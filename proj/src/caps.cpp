#include "liftgap/caps.hpp"

#include <cstdlib>
#include <sstream>

#include "liftgap/error.hpp"

namespace liftgap {

SizeCaps SizeCaps::parse(const std::string& spec, SizeCaps caps) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParameterError("LIFTGAP_SIZE_CAPS entry without '=': " + item);
    const std::string key = item.substr(0, eq);
    long long value = 0;
    try {
      value = std::stoll(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParameterError("LIFTGAP_SIZE_CAPS value is not an integer: " + item);
    }
    if (value <= 0) throw ParameterError("LIFTGAP_SIZE_CAPS value must be positive: " + item);
    if (key == "lp_nonzeros") caps.lp_nonzeros = static_cast<std::size_t>(value);
    else if (key == "boolfn_max_n") caps.boolfn_max_n = static_cast<int>(value);
    else if (key == "brute_force_max_n") caps.brute_force_max_n = static_cast<int>(value);
    else if (key == "slack_max_n") caps.slack_max_n = static_cast<int>(value);
    else if (key == "farkas_max_n") caps.farkas_max_n = static_cast<int>(value);
    else if (key == "symmetric_max_n") caps.symmetric_max_n = static_cast<int>(value);
    else if (key == "edge_max_n") caps.edge_max_n = static_cast<int>(value);
    else if (key == "edge_max_r") caps.edge_max_r = static_cast<int>(value);
    else if (key == "message_space") caps.message_space = static_cast<std::size_t>(value);
    else throw ParameterError("unknown LIFTGAP_SIZE_CAPS key: " + key);
  }
  return caps;
}

SizeCaps SizeCaps::parse(const std::string& spec) { return parse(spec, SizeCaps{}); }

SizeCaps SizeCaps::current() {
  const char* env = std::getenv("LIFTGAP_SIZE_CAPS");
  if (env == nullptr) return SizeCaps{};
  return parse(env);
}

}  // namespace liftgap
