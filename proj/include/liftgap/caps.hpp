#pragma once

#include <cstddef>
#include <string>

namespace liftgap {

/// Desk-scale size limits. Defaults can be raised through the environment
/// variable LIFTGAP_SIZE_CAPS, a comma-separated list of `key=value` pairs,
/// e.g. `LIFTGAP_SIZE_CAPS=lp_nonzeros=1000000,edge_max_n=7`.
struct SizeCaps {
  std::size_t lp_nonzeros = 200000;
  int boolfn_max_n = 24;
  int brute_force_max_n = 24;
  int slack_max_n = 20;
  int farkas_max_n = 12;
  int symmetric_max_n = 16;
  int edge_max_n = 6;
  int edge_max_r = 2;
  std::size_t message_space = 1000000;

  /// Defaults overridden by LIFTGAP_SIZE_CAPS. Parsed on every call.
  static SizeCaps current();
  /// Applies a LIFTGAP_SIZE_CAPS-style override string to `base`.
  static SizeCaps parse(const std::string& spec);
  static SizeCaps parse(const std::string& spec, SizeCaps base);
};

}  // namespace liftgap
